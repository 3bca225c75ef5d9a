use nmix_core::coeffs::CoeffRing;
use nmix_core::hopf::FinGroup;
use nmix_core::motivic_bar::{base_corpus, bialgebra_check, build_bar, gaussian_corpus, GeneratorSet};
use serde_json::json;

use super::{tuple, Ctx};
use crate::cli::BarArgs;
use crate::input::{read_file, CliError, CliResult, GeneratorSetIn};
use crate::report::{Check, Outcome};

/// Number of conjugacy classes when `g` is abelian.
fn abelian_class_count(g: &FinGroup) -> Option<usize> {
    let n = g.order();
    let abelian = (0..n).all(|a| (0..n).all(|b| g.mul(a, b) == g.mul(b, a)));
    abelian.then_some(n)
}

pub fn bar(ctx: &mut Ctx, args: &BarArgs) -> CliResult<Outcome> {
    let gens: GeneratorSet = match (&args.corpus, &args.gens) {
        (Some(name), _) => {
            ctx.input("corpus", name);
            match name.as_str() {
                "base" => base_corpus(CoeffRing::Rationals)?,
                "gaussian" => gaussian_corpus()?,
                other => return Err(CliError::malformed(format!("unknown generator corpus {other:?}"))),
            }
        }
        (None, Some(path)) => {
            let (dto, bytes): (GeneratorSetIn, _) = read_file(path)?;
            ctx.input("gens", bytes);
            dto.build()?
        }
        (None, None) => return Err(CliError::malformed("pass --corpus or --gens")),
    };
    let n = args.truncation;
    ctx.input("truncation", n.to_string());

    ctx.progress(&format!("bar: building B_0..B_{n}"));
    let datum = build_bar(&gens, n, ctx.ring)?;
    ctx.progress("bar: simplicial identities");
    let simplicial = datum.check_simplicial(n);
    ctx.progress("bar: H0 structure");
    let bialg = bialgebra_check(&datum)?;
    ctx.progress(&format!("bar: stability at {}", n + 1));
    let next = build_bar(&gens, n + 1, ctx.ring)?.h0_dim()?;
    ctx.progress_done();

    let names: Vec<&str> = gens.generators().iter().map(|g| g.name.as_str()).collect();
    let dims = datum.term_dims();
    let mut out = Outcome {
        complete_through: Some(n),
        ..Outcome::default()
    };
    out.line("generators", names.join(", "));
    out.line("term dims", tuple(&dims));
    out.line("H0 dim", bialg.h0_dim);
    out.result("group", gens.group().name());
    out.result("generators", &names);
    out.result("term_dims", &dims);
    out.result("h0_dim", bialg.h0_dim);
    out.result("h0_dim_next", next);
    out.result(
        "simplicial",
        json!({"checked": simplicial.checked, "failures": simplicial.failures.len()}),
    );
    let first = simplicial.failures.first().cloned().unwrap_or_default();
    out.check("simplicial_identities", simplicial.failures.is_empty(), first);
    out.check("d_squared_zero", simplicial.d_squared_zero, "");
    out.check("h0_structure_descends", bialg.descends, "");
    let mut flags = serde_json::Map::new();
    for (axiom, ok) in &bialg.flags {
        flags.insert(axiom.name().to_string(), json!(ok));
        out.check(&format!("h0/{}", axiom.name()), *ok, "");
    }
    out.result("h0_flags", flags);
    out.check("h0_stable", next == bialg.h0_dim, format!("H0 at {} is {next}", n + 1));
    match abelian_class_count(gens.group()) {
        Some(pw) => out.check("peter_weyl", pw == bialg.h0_dim, format!("expected {pw}")),
        None => out.checks.push(Check::skipped("peter_weyl", "expectation computed for abelian groups only")),
    }
    Ok(out)
}
