//! Parsing of inline specs and JSON/TOML input files.

use std::path::Path;

use nmix_core::algebras::poly::Poly;
use nmix_core::algebras::{etale_algebra, EtaleSpec, FinAlgebra};
use nmix_core::coeffs::{CoeffRing, Matrix, Scalar};
use nmix_core::hopf::{FinGroup, GaloisDatum};
use nmix_core::motivic_bar::GeneratorSet;
use nmix_core::orbit::{CompEntry, GradedCat, GradedCatSpec, HomEntry, TwistAction, TwistData};
use serde::Deserialize;

/// A failure that maps onto a process exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_MALFORMED: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

impl CliError {
    pub fn malformed(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_MALFORMED,
            message: message.into(),
        }
    }
}

impl From<nmix_core::Error> for CliError {
    fn from(e: nmix_core::Error) -> Self {
        let code = match e {
            nmix_core::Error::BudgetExceeded { .. } | nmix_core::Error::SizeGuard { .. } => EXIT_BUDGET,
            _ => EXIT_MALFORMED,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Reads a JSON or TOML file (by extension) into `T`, returning the raw
/// bytes for the input digest.
pub fn read_file<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<(T, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?;
    let parsed = if path.extension().is_some_and(|x| x.eq_ignore_ascii_case("toml")) {
        toml::from_str(text).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?
    } else {
        serde_json::from_str(text).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?
    };
    Ok((parsed, bytes))
}

/// Integer or decimal string (`"3/4"`, `"-1"`).
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ScalarIn {
    Int(i64),
    Text(String),
}

impl ScalarIn {
    pub fn parse(&self, ring: CoeffRing) -> CliResult<Scalar> {
        Ok(match self {
            ScalarIn::Int(n) => ring.from_i64(*n),
            ScalarIn::Text(s) => ring.parse_scalar(s)?,
        })
    }
}

fn scalars(v: &[ScalarIn], ring: CoeffRing) -> CliResult<Vec<Scalar>> {
    v.iter().map(|x| x.parse(ring)).collect()
}

pub fn parse_ring(s: &str) -> CliResult<CoeffRing> {
    Ok(CoeffRing::parse(s)?)
}

/// Polynomial in `x` with rational coefficients, e.g. `x^3 - 2`, `2x^2+x+1/2`.
pub fn parse_poly(ring: CoeffRing, s: &str) -> CliResult<Poly> {
    let bad = || CliError::malformed(format!("cannot read polynomial {s:?}"));
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(bad());
    }
    let mut coeffs: Vec<Scalar> = Vec::new();
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if (c == '+' || c == '-') && i > start && !text[..i].ends_with('^') {
            terms.push(&text[start..i]);
            start = i;
        }
    }
    terms.push(&text[start..]);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        if body.is_empty() {
            return Err(bad());
        }
        let (coef, exp) = match body.find('x') {
            None => (body, 0usize),
            Some(k) => {
                let exp = match &body[k + 1..] {
                    "" => 1,
                    rest => rest.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(bad)?,
                };
                (body[..k].trim_end_matches('*'), exp)
            }
        };
        let c = if coef.is_empty() { ring.one() } else { ring.parse_scalar(coef).map_err(|_| bad())? };
        let c = if sign < 0 { ring.neg(&c) } else { c };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, ring.zero());
        }
        coeffs[exp] = ring.add(&coeffs[exp], &c);
    }
    Ok(Poly::new(ring, coeffs)?)
}

/// `q:x^2+1`, `fp:2:x^2+x+1`, `q:x^2+1,x^2+1` (a product), or the finite
/// field shorthands `f4`, `f8`, `gf:3:2` (F_9 over F_3).
pub fn parse_etale(s: &str) -> CliResult<EtaleSpec> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("gf:") {
        let (p, d) = rest.split_once(':').ok_or_else(|| CliError::malformed(format!("expected gf:<p>:<d>, got {s:?}")))?;
        let p = p.parse().map_err(|_| CliError::malformed(format!("bad prime in {s:?}")))?;
        let d = d.parse().map_err(|_| CliError::malformed(format!("bad degree in {s:?}")))?;
        return Ok(EtaleSpec::finite_field(p, d)?);
    }
    if let Some(q) = s.strip_prefix(['f', 'F']).and_then(|d| d.parse::<u64>().ok()) {
        let (p, d) = prime_power(q).ok_or_else(|| CliError::malformed(format!("{q} is not a prime power")))?;
        return Ok(EtaleSpec::finite_field(p, d)?);
    }
    let (ring, polys) = if let Some(rest) = s.strip_prefix("fp:") {
        let (p, polys) = rest.split_once(':').ok_or_else(|| CliError::malformed(format!("expected fp:<p>:<polys>, got {s:?}")))?;
        (parse_ring(&format!("fp:{p}"))?, polys)
    } else {
        let (r, polys) = s.split_once(':').ok_or_else(|| CliError::malformed(format!("expected <ring>:<polys>, got {s:?}")))?;
        (parse_ring(r)?, polys)
    };
    let polys = polys.split(',').map(|f| parse_poly(ring, f)).collect::<CliResult<Vec<_>>>()?;
    Ok(EtaleSpec::new(ring, polys)?)
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut d) = (q, 0);
    while r % p == 0 {
        r /= p;
        d += 1;
    }
    (r == 1).then_some((p, d))
}

#[derive(Debug, Clone, Deserialize)]
pub struct EtaleIn {
    pub base: String,
    /// Ascending coefficient lists.
    pub polys: Vec<Vec<ScalarIn>>,
}

impl EtaleIn {
    pub fn build(&self) -> CliResult<EtaleSpec> {
        let ring = parse_ring(&self.base)?;
        let polys = self
            .polys
            .iter()
            .map(|c| Ok(Poly::new(ring, scalars(c, ring)?)?))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(EtaleSpec::new(ring, polys)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AlgebraIn {
    Etale {
        etale: EtaleIn,
    },
    Explicit {
        base: String,
        dim: usize,
        #[serde(default)]
        labels: Option<Vec<String>>,
        /// `e_i e_j = Σ_k sc[(i·dim + j)·dim + k] e_k`.
        sc: Vec<ScalarIn>,
        unit: Vec<ScalarIn>,
    },
}

impl AlgebraIn {
    pub fn build(&self) -> CliResult<(FinAlgebra, Option<EtaleSpec>)> {
        match self {
            AlgebraIn::Etale { etale } => {
                let spec = etale.build()?;
                Ok((etale_algebra(&spec)?, Some(spec)))
            }
            AlgebraIn::Explicit {
                base,
                dim,
                labels,
                sc,
                unit,
            } => {
                let ring = parse_ring(base)?;
                let labels = labels.clone().unwrap_or_else(|| (0..*dim).map(|i| format!("e{i}")).collect());
                if labels.len() != *dim {
                    return Err(CliError::malformed(format!("{} labels for dimension {dim}", labels.len())));
                }
                let a = FinAlgebra::new(ring, labels, scalars(sc, ring)?, scalars(unit, ring)?)?;
                Ok((a, None))
            }
        }
    }
}

/// `trivial`, `z<n>`, `z2xz2`, `s3`.
pub fn named_group(name: &str) -> CliResult<FinGroup> {
    let n = name.trim().to_ascii_lowercase();
    match n.as_str() {
        "1" | "trivial" => return Ok(FinGroup::trivial()),
        "s3" => return Ok(FinGroup::symmetric3()),
        _ => {}
    }
    let factors = n
        .split('x')
        .map(|t| {
            t.strip_prefix('z')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(FinGroup::cyclic)
                .ok_or_else(|| CliError::malformed(format!("unknown group {name:?}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(factors[1..].iter().fold(factors[0].clone(), |acc, g| FinGroup::product(&acc, g)))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GroupIn {
    Named(String),
    Table {
        name: String,
        table: Vec<Vec<usize>>,
    },
    Permutations {
        name: String,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

impl GroupIn {
    pub fn build(&self) -> CliResult<FinGroup> {
        match self {
            GroupIn::Named(n) => named_group(n),
            GroupIn::Table { name, table } => Ok(FinGroup::new(name.clone(), table.clone())?),
            GroupIn::Permutations {
                name,
                degree,
                generators,
            } => Ok(FinGroup::from_permutations(name.clone(), *degree, generators)?),
        }
    }
}

pub fn parse_elements(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| CliError::malformed(format!("bad element list {s:?}"))))
        .collect()
}

#[derive(Debug, Clone, Deserialize)]
pub struct HomIn {
    pub src: usize,
    pub tgt: usize,
    pub grade: i64,
    pub rank: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CompIn {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub i: i64,
    pub j: i64,
    pub table: Vec<ScalarIn>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TensorIn {
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ActionIn {
    pub x: usize,
    pub y: usize,
    pub grade: i64,
    pub matrix: Vec<Vec<ScalarIn>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TwistIn {
    pub object: (usize, i64),
    pub inverse: (usize, i64),
    #[serde(default)]
    pub actions: Vec<ActionIn>,
}

/// A graded category with its twist; witnesses default to identities.
#[derive(Debug, Clone, Deserialize)]
pub struct OrbitIn {
    pub ring: String,
    pub labels: Vec<String>,
    pub homs: Vec<HomIn>,
    pub comps: Vec<CompIn>,
    pub identities: Vec<Vec<ScalarIn>>,
    #[serde(default)]
    pub tensor: Option<TensorIn>,
    pub twist: TwistIn,
}

impl OrbitIn {
    pub fn build(&self) -> CliResult<(GradedCat, TwistData)> {
        let ring = parse_ring(&self.ring)?;
        let cat = GradedCat::new(GradedCatSpec {
            ring,
            labels: self.labels.clone(),
            homs: self
                .homs
                .iter()
                .map(|h| HomEntry {
                    src: h.src,
                    tgt: h.tgt,
                    grade: h.grade,
                    rank: h.rank,
                })
                .collect(),
            comps: self
                .comps
                .iter()
                .map(|c| {
                    Ok(CompEntry {
                        x: c.x,
                        y: c.y,
                        z: c.z,
                        i: c.i,
                        j: c.j,
                        table: scalars(&c.table, ring)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?,
            identities: self.identities.iter().map(|v| scalars(v, ring)).collect::<CliResult<Vec<_>>>()?,
            tensor: self.tensor.as_ref().map(|t| (t.unit, t.table.clone())),
        })?;
        let actions = self
            .twist
            .actions
            .iter()
            .map(|a| {
                let rows = a.matrix.len();
                let cols = a.matrix.first().map_or(0, Vec::len);
                let entries = a.matrix.iter().map(|r| scalars(r, ring)).collect::<CliResult<Vec<_>>>()?.concat();
                Ok(TwistAction {
                    x: a.x,
                    y: a.y,
                    grade: a.grade,
                    matrix: Matrix::new(ring, rows, cols, entries)?,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        let tw = TwistData::new(&cat, self.twist.object, self.twist.inverse, actions, None)?;
        Ok((cat, tw))
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct SubgroupIn {
    pub name: String,
    pub elements: Vec<usize>,
    #[serde(default)]
    pub field: Option<EtaleIn>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GeneratorIn {
    pub name: String,
    pub etale: EtaleIn,
}

/// Galois group, subgroups with fixed fields, and the generators.
#[derive(Debug, Clone, Deserialize)]
pub struct GeneratorSetIn {
    pub group: GroupIn,
    pub subgroups: Vec<SubgroupIn>,
    pub generators: Vec<GeneratorIn>,
}

impl GeneratorSetIn {
    pub fn build(&self) -> CliResult<GeneratorSet> {
        let mut gd = GaloisDatum::new(self.group.build()?);
        for s in &self.subgroups {
            gd.add_subgroup(&s.name, &s.elements)?;
            if let Some(f) = &s.field {
                gd.set_field(&s.name, f.build()?)?;
            }
        }
        let gens = self
            .generators
            .iter()
            .map(|g| Ok((g.name.clone(), g.etale.build()?)))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(GeneratorSet::new(gd, gens)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        let q = CoeffRing::Rationals;
        let f = parse_poly(q, "x^3 - 2").unwrap();
        assert_eq!(f, Poly::from_i64(q, &[-2, 0, 0, 1]).unwrap());
        let g = parse_poly(q, "x^2+x+1/2").unwrap();
        assert_eq!(g.coeff(0), q.parse_scalar("1/2").unwrap());
        assert_eq!(parse_poly(q, "-x+3x^2").unwrap(), Poly::from_i64(q, &[0, -1, 3]).unwrap());
        assert!(parse_poly(q, "x^").is_err());
        assert!(parse_poly(q, "").is_err());
        assert!(parse_poly(q, "x^2+").is_err());
        assert!(parse_poly(q, "x^2+-1").is_err());
    }

    #[test]
    fn etale_specs() {
        assert_eq!(parse_etale("q:x^2+1").unwrap().dim(), 2);
        assert_eq!(parse_etale("q:x^2+1,x^2+1").unwrap().factor_degrees(), &[2, 2]);
        assert_eq!(parse_etale("f8").unwrap().dim(), 3);
        assert_eq!(parse_etale("gf:3:2").unwrap().dim(), 2);
        assert_eq!(parse_etale("fp:2:x^2+x+1").unwrap().factor_degrees(), &[2]);
        assert!(parse_etale("f6").is_err());
        assert!(parse_etale("q:x^2").is_err());
    }

    #[test]
    fn groups() {
        assert_eq!(named_group("z2xz2").unwrap().order(), 4);
        assert_eq!(named_group("S3").unwrap().order(), 6);
        assert!(named_group("q8").is_err());
        let g: GroupIn = serde_json::from_str(r#"{"name": "c3", "degree": 3, "generators": [[1, 2, 0]]}"#).unwrap();
        assert_eq!(g.build().unwrap().order(), 3);
    }

    #[test]
    fn algebra_files() {
        let a: AlgebraIn = serde_json::from_str(r#"{"etale": {"base": "q", "polys": [[1, 0, 1]]}}"#).unwrap();
        assert_eq!(a.build().unwrap().0.dim(), 2);
        let b: AlgebraIn = toml::from_str("base = \"q\"\ndim = 1\nsc = [1]\nunit = [\"1\"]\n").unwrap();
        assert_eq!(b.build().unwrap().0.dim(), 1);
    }
}
