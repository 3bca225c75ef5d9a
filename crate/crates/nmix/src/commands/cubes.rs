use nmix_core::cubes::{cube_complex_with_progress, CubeComplexOptions, ExactCatSpec};
use serde_json::json;

use super::Ctx;
use crate::cli::CubesArgs;
use crate::input::CliResult;
use crate::report::{Check, Outcome};

pub fn cubes(ctx: &mut Ctx, args: &CubesArgs) -> CliResult<Outcome> {
    ctx.input("base", &args.base);
    ctx.input("dim-cap", args.dim_cap.to_string());
    ctx.input("max-degree", args.max_degree.to_string());
    ctx.input("stop-when-exact", [u8::from(args.stop_when_exact)]);
    ctx.input("budget", ctx.global.budget.to_string());
    let spec = ExactCatSpec::parse_base(&args.base, args.dim_cap)?;
    let opts = CubeComplexOptions {
        max_degree: args.max_degree,
        budget: ctx.global.budget,
        stop_when_exact: args.stop_when_exact,
    };
    let ring = ctx.ring;
    let ctx_ref = &*ctx;
    let r = cube_complex_with_progress(&spec, ring, &opts, &mut |degree, seen| {
        ctx_ref.progress(&format!("cubes: degree {degree}, {seen} visited"))
    });
    ctx.progress_done();
    let r = r?;

    let ranks: Vec<usize> = r.homology.iter().map(|h| h.free_rank).collect();
    let mut out = Outcome {
        complete_through: Some(r.complete_through),
        ..Outcome::default()
    };
    out.line("base", spec.describe());
    let hs: Vec<String> = ranks.iter().enumerate().map(|(n, r)| format!("H{n} = {r}")).collect();
    out.line("homology", hs.join(", "));
    out.line(
        "oracle",
        format!("K0⊗R = {}, K1⊗R = {}", r.oracle.k0_tensored_rank, r.oracle.k1_tensored_rank),
    );
    let agree = r.h0_agrees.unwrap_or(true) && r.h1_agrees.unwrap_or(true);
    out.line("oracle agree", agree);
    out.result("base", spec.describe());
    out.result("ring", r.ring.descriptor());
    out.result(
        "counts",
        r.counts
            .iter()
            .map(|c| json!({"degree": c.degree, "raw": c.raw, "nondegenerate": c.nondegenerate, "complete": c.complete}))
            .collect::<Vec<_>>(),
    );
    out.result("differential_ranks", &r.differential_ranks);
    out.result("homology_ranks", &ranks);
    out.result(
        "oracle",
        json!({
            "k0_rank": r.oracle.k0_rank,
            "k1_cyclic_orders": r.oracle.k1_cyclic_orders,
            "k0_tensored_rank": r.oracle.k0_tensored_rank,
            "k1_tensored_rank": r.oracle.k1_tensored_rank,
        }),
    );
    out.result("stopped_early", r.stopped_early);
    out.result("oracle_agree", agree);
    match r.h0_agrees {
        Some(ok) => out.check("h0_matches_k0", ok, format!("H0 = {}, K0⊗R = {}", ranks[0], r.oracle.k0_tensored_rank)),
        None => out.checks.push(Check::skipped("h0_matches_k0", "degree 0 not computed")),
    }
    match r.h1_agrees {
        Some(ok) => out.check("h1_matches_k1", ok, format!("H1 = {}, K1⊗R = {}", ranks[1], r.oracle.k1_tensored_rank)),
        None => out.checks.push(Check::skipped("h1_matches_k1", "compared over ℚ with max degree ≥ 2 only")),
    }
    out.check("d_squared_zero", r.d_squared_zero, "");
    out.check("degenerate_closed", r.degenerate_closed, "");
    Ok(out)
}
