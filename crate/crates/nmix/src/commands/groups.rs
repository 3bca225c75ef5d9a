use nmix_core::algebras::EtaleSpec;
use nmix_core::hopf::{
    antipode_is_involutive, direct_tensor_degrees, double_cosets, function_hopf, function_ses, galois_tensor_degrees,
    mutation_suite, ses_check, verify_hopf, FinGroup, GaloisDatum,
};
use serde_json::json;

use super::{tuple, Ctx};
use crate::cli::{GaloisArgs, HopfArgs};
use crate::input::{named_group, parse_elements, parse_etale, read_file, CliError, CliResult, GroupIn};
use crate::report::Outcome;

fn load_group(ctx: &mut Ctx, name: &Option<String>, file: &Option<std::path::PathBuf>) -> CliResult<FinGroup> {
    match (name, file) {
        (Some(n), _) => {
            ctx.input("group", n);
            named_group(n)
        }
        (None, Some(path)) => {
            let (dto, bytes): (GroupIn, _) = read_file(path)?;
            ctx.input("group-file", bytes);
            dto.build()
        }
        (None, None) => Err(CliError::malformed("pass --group or --group-file")),
    }
}

pub fn hopf(ctx: &mut Ctx, args: &HopfArgs) -> CliResult<Outcome> {
    let g = load_group(ctx, &args.group, &args.group_file)?;
    ctx.input("mutations", [u8::from(args.mutations)]);
    let h = function_hopf(&g, ctx.ring);
    let report = verify_hopf(&h);
    let mut out = Outcome::default();
    out.line("group", format!("{} (order {})", g.name(), g.order()));
    out.line("dimension", h.dim());
    out.line("axioms", if report.passes() { "all hold" } else { "violated" });
    out.result("group", g.name());
    out.result("order", g.order());
    out.result("dimension", h.dim());
    let mut flags = serde_json::Map::new();
    for (axiom, witness) in &report.flags {
        flags.insert(axiom.name().to_string(), json!(witness.is_none()));
        let detail = witness.as_ref().map(|w| format!("witness {w:?}")).unwrap_or_default();
        out.check(axiom.name(), witness.is_none(), detail);
    }
    out.result("axioms", flags);
    out.check("dimension_is_order", h.dim() == g.order(), format!("dim {} vs |G| {}", h.dim(), g.order()));
    let involutive = antipode_is_involutive(&h);
    out.result("antipode_involutive", involutive);
    out.check("antipode_involutive", involutive, "");

    if args.mutations {
        let mut rows = Vec::new();
        for m in mutation_suite(ctx.ring) {
            let failing = verify_hopf(&m.algebra).failing();
            let exact = failing == [m.intended];
            let names: Vec<&str> = failing.iter().map(|a| a.name()).collect();
            rows.push(json!({"name": m.name, "intended": m.intended.name(), "failing": names}));
            out.check(&format!("mutation/{}", m.name), exact, format!("fails {}", names.join(", ")));
        }
        out.line("mutations", rows.len());
        out.result("mutations", rows);
    }

    if let Some(normal) = &args.normal {
        ctx.input("normal", normal);
        let n = parse_elements(normal)?;
        let (f, p) = function_ses(&g, &n, ctx.ring)?;
        let s = ses_check(&f, &p)?;
        out.line("exact sequence", if s.passes() { "holds" } else { "fails" });
        out.result(
            "ses",
            json!({
                "injective": s.injective,
                "surjective": s.surjective,
                "composite_trivial": s.composite_trivial,
                "quotient_iso": s.quotient_iso,
                "rank_f": s.rank_f,
                "rank_g": s.rank_g,
            }),
        );
        out.check("ses/injective", s.injective, "");
        out.check("ses/surjective", s.surjective, "");
        out.check("ses/composite_trivial", s.composite_trivial, "");
        out.check("ses/quotient_iso", s.quotient_iso, "");
    }
    Ok(out)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn parse_pairs(s: &str) -> CliResult<Vec<(usize, usize)>> {
    s.split(';')
        .map(|p| {
            let v = parse_elements(p)?;
            match v[..] {
                [a, b] if a > 0 && b > 0 => Ok((a, b)),
                _ => Err(CliError::malformed(format!("bad degree pair {p:?}"))),
            }
        })
        .collect()
}

pub fn galois(ctx: &mut Ctx, args: &GaloisArgs) -> CliResult<Outcome> {
    let mut out = Outcome::default();
    let mut did = false;
    if let (Some(hp), Some(h)) = (&args.hp, &args.h) {
        did = true;
        let g = load_group(ctx, &args.group, &args.group_file)?;
        ctx.input("hp", hp);
        ctx.input("h", h);
        let mut gd = GaloisDatum::new(g);
        let hp_elems = parse_elements(hp)?;
        let h_elems = parse_elements(h)?;
        gd.add_subgroup("H'", &hp_elems)?;
        let normal = gd.add_subgroup("H", &h_elems)?.normal;
        if let (Some(fhp), Some(fh)) = (&args.field_hp, &args.field_h) {
            ctx.input("field-hp", fhp);
            ctx.input("field-h", fh);
            gd.set_field("H'", parse_etale(fhp)?)?;
            gd.set_field("H", parse_etale(fh)?)?;
        }
        let cosets = double_cosets(&gd, "H'", "H")?;
        let degrees = galois_tensor_degrees(&gd, "H'", "H")?;
        let index = gd.index("H'")?;
        out.line("double cosets", cosets.len());
        out.line("factor degrees", tuple(&degrees));
        out.result("double_cosets", cosets.len());
        out.result("galois_degrees", &degrees);
        out.result("index_hp", index);
        let contained = h_elems.iter().all(|x| hp_elems.contains(x));
        if normal && contained {
            out.check("count_is_degree", cosets.len() == index, format!("{} double cosets, [l':k] = {index}", cosets.len()));
        }
        if let (Some(lp), Some(l)) = (gd.field("H'"), gd.field("H")) {
            let direct = direct_tensor_degrees(lp, l)?;
            out.result("direct_degrees", &direct);
            out.check("routes_agree", direct == degrees, format!("direct {}", tuple(&direct)));
        }
    }
    if let (Some(q), Some(pairs)) = (args.fq, &args.degrees) {
        did = true;
        ctx.input("fq", q.to_string());
        ctx.input("degrees", pairs);
        let mut rows = Vec::new();
        for (a, b) in parse_pairs(pairs)? {
            let fa = EtaleSpec::finite_field(q, a)?;
            let fb = EtaleSpec::finite_field(q, b)?;
            let d = direct_tensor_degrees(&fa, &fb)?;
            let (k, lcm) = (gcd(a, b), a * b / gcd(a, b));
            let ok = d.len() == k && d.iter().all(|&x| x == lcm);
            out.line(&format!("F_{q}^{a} ⊗ F_{q}^{b}"), format!("{} factor{} of degree {}", d.len(), if d.len() == 1 { "" } else { "s" }, d.first().copied().unwrap_or(0)));
            rows.push(json!({"a": a, "b": b, "degrees": d}));
            out.check(&format!("gcd/{a},{b}"), ok, format!("expected {k} × F_{q}^{lcm}"));
        }
        out.result("finite_fields", rows);
    }
    if !did {
        return Err(CliError::malformed("pass --hp/--h or --fq/--degrees"));
    }
    Ok(out)
}
