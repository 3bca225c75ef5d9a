//! One function per subcommand, each returning an [`Outcome`].

mod algebra;
mod bar;
mod cubes;
mod groups;
mod orbit;
mod selftest;

use std::io::Write;
use std::time::Instant;

use nmix_core::coeffs::CoeffRing;

use crate::cli::Global;
use crate::input::{parse_ring, CliResult};
use crate::report::{InputDigest, Outcome};

pub use algebra::{hh, khom};
pub use bar::bar;
pub use cubes::cubes;
pub use groups::{galois, hopf};
pub use orbit::orbit;
pub use selftest::selftest;

/// Shared state of one run.
pub struct Ctx {
    pub global: Global,
    pub ring: CoeffRing,
    pub digest: InputDigest,
    started: Instant,
}

impl Ctx {
    pub fn new(global: Global) -> CliResult<Self> {
        let ring = parse_ring(&global.ring)?;
        let mut digest = InputDigest::default();
        digest.field("ring", ring.descriptor().as_bytes());
        Ok(Ctx {
            global,
            ring,
            digest,
            started: Instant::now(),
        })
    }

    pub fn input(&mut self, key: &str, value: impl AsRef<[u8]>) {
        self.digest.field(key, value.as_ref());
    }

    /// Writes a progress line to stderr; false once the time limit is spent.
    pub fn progress(&self, what: &str) -> bool {
        if !self.global.quiet {
            let mut err = std::io::stderr().lock();
            let _ = write!(err, "\r{what} ({:.0?})   ", self.started.elapsed());
            let _ = err.flush();
        }
        self.global
            .time_limit
            .is_none_or(|t| self.started.elapsed().as_secs() < t)
    }

    pub fn progress_done(&self) {
        if !self.global.quiet {
            eprintln!();
        }
    }
}

pub(crate) fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn merge(into: &mut Outcome, prefix: &str, from: Outcome) {
    for mut c in from.checks {
        c.name = format!("{prefix}/{}", c.name);
        into.checks.push(c);
    }
    into.result(prefix, from.results);
}
