//! Command-line front end for `nmix-core`: input formats, subcommands and
//! run reports.

pub mod cli;
pub mod commands;
pub mod input;
pub mod report;

use cli::{Cli, Command};
use commands::Ctx;
use input::{CliError, CliResult, EXIT_CHECK_FAILED};
use report::{Budget, RunReport};

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Hh(_) => "hh",
            Command::Cubes(_) => "cubes",
            Command::Orbit(_) => "orbit",
            Command::Hopf(_) => "hopf",
            Command::Galois(_) => "galois",
            Command::Bar(_) => "bar",
            Command::Khom(_) => "khom",
            Command::Selftest => "selftest",
        }
    }
}

/// Runs one subcommand; the summary lines go with the report for rendering.
pub fn execute(cli: Cli) -> CliResult<(RunReport, Vec<(String, String)>)> {
    let budget = Budget {
        max_cubes: cli.global.budget,
        time_limit_secs: cli.global.time_limit,
    };
    let mut ctx = Ctx::new(cli.global)?;
    let out = match &cli.command {
        Command::Hh(a) => commands::hh(&mut ctx, a)?,
        Command::Cubes(a) => commands::cubes(&mut ctx, a)?,
        Command::Orbit(a) => commands::orbit(&mut ctx, a)?,
        Command::Hopf(a) => commands::hopf(&mut ctx, a)?,
        Command::Galois(a) => commands::galois(&mut ctx, a)?,
        Command::Bar(a) => commands::bar(&mut ctx, a)?,
        Command::Khom(a) => commands::khom(&mut ctx, a)?,
        Command::Selftest => commands::selftest(&mut ctx)?,
    };
    let summary = out.summary.clone();
    let digest = std::mem::take(&mut ctx.digest).finish();
    Ok((RunReport::new(cli.command.name(), digest, budget, out), summary))
}

/// Runs, prints and writes the JSON report; returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    let json = cli.global.json.clone();
    let (report, summary) = match execute(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("nmix: {e}");
            return e.code;
        }
    };
    print!("{}", report.render(&summary));
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            let e = CliError::malformed(format!("cannot write {}: {e}", path.display()));
            eprintln!("nmix: {e}");
            return e.code;
        }
    }
    exit_code(&report)
}

pub fn exit_code(report: &RunReport) -> u8 {
    if report.passed() {
        0
    } else {
        EXIT_CHECK_FAILED
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Outcome;

    fn report(ok: bool) -> RunReport {
        let mut out = Outcome::default();
        out.check("a", true, "");
        out.check("b", ok, "");
        let budget = Budget { max_cubes: 1, time_limit_secs: None };
        RunReport::new("hh", String::new(), budget, out)
    }

    #[test]
    fn failed_check_exits_one() {
        assert_eq!(exit_code(&report(true)), 0);
        assert_eq!(exit_code(&report(false)), 1);
    }

    #[test]
    fn skipped_checks_do_not_fail() {
        let mut out = Outcome::default();
        out.checks.push(report::Check::skipped("x", "n/a"));
        let budget = Budget { max_cubes: 1, time_limit_secs: None };
        assert_eq!(exit_code(&RunReport::new("hh", String::new(), budget, out)), 0);
    }
}
