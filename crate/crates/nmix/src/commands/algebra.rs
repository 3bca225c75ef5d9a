use nmix_core::algebras::{etale_algebra, hh0_commutator_oracle, hochschild_complex};
use nmix_core::coeffs::homology;
use nmix_core::motivic_bar::{nmam_hom, NmamOptions};
use serde_json::json;

use super::{tuple, Ctx};
use crate::cli::{HhArgs, KhomArgs};
use crate::input::{parse_etale, read_file, AlgebraIn, CliError, CliResult};
use crate::report::Outcome;

pub fn hh(ctx: &mut Ctx, args: &HhArgs) -> CliResult<Outcome> {
    let (a, spec) = match (&args.etale, &args.algebra) {
        (Some(s), _) => {
            ctx.input("etale", s);
            let spec = parse_etale(s)?;
            (etale_algebra(&spec)?, Some(spec))
        }
        (None, Some(path)) => {
            let (dto, bytes): (AlgebraIn, _) = read_file(path)?;
            ctx.input("algebra", bytes);
            dto.build()?
        }
        (None, None) => return Err(CliError::malformed("pass --etale or --algebra")),
    };
    let m = args.max_degree;
    if m == 0 {
        return Err(CliError::malformed("--max-degree must be at least 1"));
    }
    ctx.input("max-degree", m.to_string());
    let complex = hochschild_complex(&a, m)?;
    let reports = (0..m as i64).map(|n| homology(&complex, n)).collect::<Result<Vec<_>, _>>()?;
    let ranks: Vec<usize> = reports.iter().map(|r| r.free_rank).collect();
    let torsion: Vec<Vec<String>> = reports.iter().map(|r| r.torsion.iter().map(ToString::to_string).collect()).collect();

    let mut out = Outcome::default();
    out.line("base", a.base());
    out.line("dimension", a.dim());
    out.line("HH ranks", tuple(&ranks));
    out.result("base", a.base().descriptor());
    out.result("dimension", a.dim());
    out.result("ranks", &ranks);
    out.result("torsion", torsion);
    let oracle = hh0_commutator_oracle(&a);
    out.check("hh0_commutator_oracle", ranks[0] == oracle, format!("HH0 = {}, dim A/[A,A] = {oracle}", ranks[0]));
    if let Some(spec) = spec {
        out.result("factor_degrees", spec.factor_degrees());
        out.check(
            "hh0_is_degree",
            ranks[0] == spec.dim(),
            format!("HH0 = {}, [l':k] = {}", ranks[0], spec.dim()),
        );
        out.check(
            "higher_vanish",
            ranks[1..].iter().all(|&r| r == 0),
            format!("HH1..HH{} = {}", m - 1, tuple(&ranks[1..])),
        );
    }
    Ok(out)
}

pub fn khom(ctx: &mut Ctx, args: &KhomArgs) -> CliResult<Outcome> {
    ctx.input("l", &args.l);
    ctx.input("lp", &args.lp);
    ctx.input("n", args.n.to_string());
    ctx.input("relax", [u8::from(args.relax_characteristic)]);
    let l = parse_etale(&args.l)?;
    let lp = parse_etale(&args.lp)?;
    let opts = NmamOptions {
        relax_characteristic: args.relax_characteristic,
    };
    let r = nmam_hom(&l, &lp, args.n, ctx.ring, opts)?;
    let mut out = Outcome::default();
    out.line("n", r.n);
    out.line("factor degrees", tuple(&r.factor_degrees));
    if !r.cyclic_orders.is_empty() {
        out.line("K_n per factor", r.cyclic_orders.iter().map(|o| format!("Z/{o}")).collect::<Vec<_>>().join(" ⊕ "));
    }
    match (&r.symbolic, r.rank) {
        (Some(s), _) => out.line("group", s),
        (None, Some(rank)) if r.torsion.is_empty() => out.line("rank over R", rank),
        (None, _) => out.line("torsion", tuple(&r.torsion)),
    }
    out.result(
        "hom",
        json!({
            "n": r.n,
            "ring": r.ring.descriptor(),
            "factor_degrees": r.factor_degrees,
            "cyclic_orders": r.cyclic_orders,
            "rank": r.rank,
            "torsion": r.torsion,
            "symbolic": r.symbolic,
        }),
    );
    Ok(out)
}
