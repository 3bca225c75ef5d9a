use nmix_core::algebras::poly::Poly;
use nmix_core::algebras::{hochschild_homology, FinAlgebra};
use nmix_core::hopf::{
    evaluate_t, function_hopf, laurent_extension, laurent_quotient_check, unit_counit_check, EvalConvention, FinGroup,
};

use super::{merge, Ctx};
use crate::cli::{BarArgs, CubesArgs, GaloisArgs, HhArgs, HopfArgs, KhomArgs, OrbitArgs};
use crate::input::CliResult;
use crate::report::Outcome;

/// Small instances of every subcommand plus the checks with no subcommand
/// of their own.
pub fn selftest(ctx: &mut Ctx) -> CliResult<Outcome> {
    let mut out = Outcome::default();
    for (name, etale) in [("hh/qi", "q:x^2+1"), ("hh/cbrt2", "q:x^3-2"), ("hh/f4", "f4"), ("hh/f8", "f8")] {
        let args = HhArgs { etale: Some(etale.into()), algebra: None, max_degree: 4 };
        merge(&mut out, name, super::hh(ctx, &args)?);
    }

    let q = nmix_core::coeffs::CoeffRing::Rationals;
    let dual = FinAlgebra::quotient(&Poly::from_i64(q, &[0, 0, 1])?)?;
    let hh1 = hochschild_homology(&dual, 1, 2)?.free_rank;
    out.check("dual_numbers_hh1", hh1 == 1, format!("HH1 = {hh1}"));

    for base in ["f2", "f3"] {
        let args = CubesArgs { base: base.into(), dim_cap: 2, max_degree: 2, stop_when_exact: false };
        merge(&mut out, &format!("cubes/{base}"), super::cubes(ctx, &args)?);
    }
    for corpus in ["pure", "two-object"] {
        let args = OrbitArgs { corpus: Some(corpus.into()), input: None, max_grade: 3 };
        merge(&mut out, &format!("orbit/{corpus}"), super::orbit(ctx, &args)?);
    }
    for (group, normal) in [("z4", Some("0,2")), ("s3", None)] {
        let args = HopfArgs {
            group: Some(group.into()),
            group_file: None,
            mutations: group == "z4",
            normal: normal.map(Into::into),
        };
        merge(&mut out, &format!("hopf/{group}"), super::hopf(ctx, &args)?);
    }
    let args = GaloisArgs {
        group: Some("z4".into()),
        group_file: None,
        hp: Some("0,2".into()),
        h: Some("0".into()),
        field_hp: None,
        field_h: None,
        fq: Some(2),
        degrees: Some("1,1;2,4;2,3".into()),
    };
    merge(&mut out, "galois", super::galois(ctx, &args)?);
    let args = KhomArgs { l: "f4".into(), lp: "f8".into(), n: 0, relax_characteristic: false };
    merge(&mut out, "khom", super::khom(ctx, &args)?);
    let args = BarArgs { corpus: Some("base".into()), gens: None, truncation: 2 };
    merge(&mut out, "bar", super::bar(ctx, &args)?);

    let base = function_hopf(&FinGroup::cyclic(3), ctx.ring);
    let lh = laurent_extension(&base);
    let conv = EvalConvention::TEqualsOne;
    let roundtrip = (0..base.dim()).all(|i| {
        let x = base.basis_vec(i);
        (-2..=2).all(|n| lh.evaluate(&lh.embed(&x, n), conv) == x)
    });
    out.check("laurent/roundtrip", roundtrip, "");
    let quotient = laurent_quotient_check(&lh, 2, conv)?;
    let evaluated = evaluate_t(&lh);
    out.check(
        "laurent/quotient",
        quotient.agrees(base.dim()) && evaluated.dim() == base.dim(),
        format!("quotient dim {}", quotient.quotient_dim),
    );
    out.check("laurent/unit_counit", unit_counit_check(&lh, 2, conv), "");
    out.line("checks", out.checks.len());
    out.line("failed", out.checks.iter().filter(|c| c.status == crate::report::Status::Fail).count());
    Ok(out)
}
