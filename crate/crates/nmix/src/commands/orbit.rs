use nmix_core::orbit::{
    associativity_defects, orbit_hom, pure_grade, twist_naturality_defects, two_object, GradedCat, Obj, TwistData,
};
use nmix_core::Error;
use serde_json::json;

use super::Ctx;
use crate::cli::OrbitArgs;
use crate::input::{read_file, CliError, CliResult, OrbitIn};
use crate::report::{Check, Outcome};

pub fn orbit(ctx: &mut Ctx, args: &OrbitArgs) -> CliResult<Outcome> {
    let (cat, tw, pure): (GradedCat, TwistData, bool) = match (&args.corpus, &args.input) {
        (Some(name), _) => {
            ctx.input("corpus", name);
            match name.as_str() {
                "pure" => {
                    let (c, t) = pure_grade(ctx.ring)?;
                    (c, t, true)
                }
                "two-object" => {
                    let (c, t) = two_object(ctx.ring)?;
                    (c, t, false)
                }
                other => return Err(CliError::malformed(format!("unknown orbit corpus {other:?}"))),
            }
        }
        (None, Some(path)) => {
            let (dto, bytes): (OrbitIn, _) = read_file(path)?;
            ctx.input("input", bytes);
            let (c, t) = dto.build()?;
            (c, t, false)
        }
        (None, None) => return Err(CliError::malformed("pass --corpus or --input")),
    };
    let g = args.max_grade;
    if g < 0 {
        return Err(CliError::malformed("--max-grade must be non-negative"));
    }
    ctx.input("max-grade", g.to_string());
    let labels = cat.labels().to_vec();
    let n = labels.len();

    let mut out = Outcome::default();
    let mut table = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let h = orbit_hom(&cat, &tw, &Obj::basic(x, 0), &Obj::basic(y, 0))?;
            let text: Vec<String> = h.iter().map(|(i, r)| format!("{i}:{r}")).collect();
            out.line(&format!("Hom({}, {})", labels[x], labels[y]), format!("{{{}}}", text.join(", ")));
            table.push(json!({
                "src": labels[x],
                "tgt": labels[y],
                "ranks": h.iter().map(|(i, r)| (i.to_string(), json!(r))).collect::<serde_json::Map<_, _>>(),
            }));
        }
    }
    out.result("labels", &labels);
    out.result("hom_table", table);

    if pure {
        let mut collapse = true;
        for m in -g..=g {
            for k in -g..=g {
                let h = orbit_hom(&cat, &tw, &Obj::basic(0, m), &Obj::basic(0, k))?;
                collapse &= h.into_iter().eq([(m - k, 1)]);
            }
        }
        out.check("single_grade_collapse", collapse, format!("twists in -{g}..={g}"));
    }

    let objects: Vec<Obj> = (0..n).flat_map(|x| (-1..=1).map(move |t| Obj::basic(x, t))).collect();
    let (checked, failed) = associativity_defects(&cat, &tw, &objects, g)?;
    out.result("associativity", json!({"checked": checked, "failed": failed}));
    out.check("associativity", failed == 0, format!("{checked} triples, |i| ≤ {g}"));
    match twist_naturality_defects(&cat, &tw, &objects) {
        Ok((checked, failed)) => {
            out.result("twist_naturality", json!({"checked": checked, "failed": failed}));
            out.check("twist_naturality", failed == 0, format!("{checked} morphisms"));
        }
        Err(Error::Unsupported(why)) => out.checks.push(Check::skipped("twist_naturality", why)),
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}
