use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::gset::GSet;
use crate::algebras::poly::Poly;
use crate::algebras::EtaleSpec;
use crate::coeffs::CoeffRing;
use crate::error::{invalid, Error, Result};
use crate::hopf::{FinGroup, GaloisDatum};

/// One generator: an étale algebra and its G-set of geometric points, one
/// coset space `G/H` per factor field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub spec: EtaleSpec,
    /// Subgroup fixing each factor field, in factor order.
    pub factor_subgroups: Vec<String>,
    pub points: GSet,
}

/// How one factor of `A_i ⊗ A_j` sits inside a generator: the factor is an
/// orbit of `X_i × X_j`, mapped isomorphically onto an orbit of `X_target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureWitness {
    /// Orbit index among the orbits of `X_i × X_j`.
    pub orbit: usize,
    /// Degree of the factor field.
    pub degree: usize,
    pub target: usize,
    /// `(point of X_i × X_j, point of X_target)`.
    pub embedding: Vec<(usize, usize)>,
}

/// Orbits of `X_i × X_j` (point `(x, y)` at `x·|X_j| + y`), which index both
/// the factors of `A_i ⊗ A_j` and the K₀ basis `A_j → A_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOrbits {
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
    pub witnesses: Vec<ClosureWitness>,
    /// Image of each product point under its orbit's witness.
    pub(crate) embed: Vec<usize>,
}

/// Finite set of étale algebras split by one Galois extension, closed under
/// tensor product up to factor decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    datum: GaloisDatum,
    gens: Vec<Generator>,
    pairs: Vec<PairOrbits>,
    unit: usize,
}

fn match_factor(datum: &GaloisDatum, f: &Poly) -> Option<String> {
    datum
        .subgroups()
        .iter()
        .find(|s| datum.field(&s.name).is_some_and(|k| k.polys() == core::slice::from_ref(f)))
        .map(|s| s.name.clone())
}

impl GeneratorSet {
    /// Each polynomial of each generator must be the recorded fixed field of
    /// some subgroup of the datum. Fails when a factor of some `A_i ⊗ A_j`
    /// is isomorphic to no factor of any generator, or when no generator is
    /// the base field.
    pub fn new(datum: GaloisDatum, gens: Vec<(String, EtaleSpec)>) -> Result<Self> {
        if gens.is_empty() {
            return Err(invalid!("a generator set needs at least one algebra"));
        }
        let g = datum.group().clone();
        let mut out = Vec::with_capacity(gens.len());
        for (name, spec) in gens {
            if spec.factor_degrees().len() != spec.polys().len() {
                return Err(invalid!(
                    "generator {name}: every polynomial must be irreducible (factor degrees {:?})",
                    spec.factor_degrees()
                ));
            }
            let mut points = GSet::empty(&g);
            let mut subs = Vec::new();
            for f in spec.polys() {
                let s = match_factor(&datum, f).ok_or_else(|| Error::Unknown {
                    kind: "fixed field",
                    name: alloc::format!("{name}: no subgroup has fixed field {:?}", f.coeffs()),
                })?;
                points = points.disjoint_union(&GSet::cosets(&g, &datum.subgroup(&s)?.elements));
                subs.push(s);
            }
            out.push(Generator {
                name,
                spec,
                factor_subgroups: subs,
                points,
            });
        }
        let unit = out
            .iter()
            .position(|a| a.points.len() == 1)
            .ok_or_else(|| invalid!("no generator is the base field"))?;
        let mut pairs = Vec::with_capacity(out.len() * out.len());
        for a in &out {
            for b in &out {
                pairs.push(Self::pair_orbits(&out, a, b)?);
            }
        }
        Ok(GeneratorSet {
            datum,
            gens: out,
            pairs,
            unit,
        })
    }

    fn pair_orbits(gens: &[Generator], a: &Generator, b: &Generator) -> Result<PairOrbits> {
        let prod = a.points.product(&b.points);
        let orbits = prod.orbits();
        let mut orbit_of = vec![0; prod.len()];
        let mut embed = vec![0; prod.len()];
        let mut witnesses = Vec::with_capacity(orbits.len());
        for (k, o) in orbits.iter().enumerate() {
            for &p in o {
                orbit_of[p] = k;
            }
            let found = gens.iter().enumerate().find_map(|(c, gen)| {
                (0..gen.points.len()).find_map(|q| prod.orbit_iso(o[0], &gen.points, q).map(|e| (c, e)))
            });
            let (target, embedding) = found.ok_or_else(|| {
                invalid!(
                    "closure witness missing: a degree-{} factor of {} ⊗ {} is not a factor of any generator",
                    o.len(),
                    a.name,
                    b.name
                )
            })?;
            for &(p, q) in &embedding {
                embed[p] = q;
            }
            witnesses.push(ClosureWitness {
                orbit: k,
                degree: o.len(),
                target,
                embedding,
            });
        }
        Ok(PairOrbits {
            orbits,
            orbit_of,
            witnesses,
            embed,
        })
    }

    pub fn datum(&self) -> &GaloisDatum {
        &self.datum
    }

    pub fn group(&self) -> &FinGroup {
        self.datum.group()
    }

    pub fn base(&self) -> CoeffRing {
        self.gens[0].spec.base()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> Result<&Generator> {
        self.gens.get(i).ok_or_else(|| Error::Unknown {
            kind: "generator",
            name: alloc::format!("#{i}"),
        })
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.gens.iter().position(|a| a.name == name).ok_or_else(|| Error::Unknown {
            kind: "generator",
            name: name.into(),
        })
    }

    /// Index of the generator with a single point.
    pub fn unit(&self) -> usize {
        self.unit
    }

    /// `|X_i| = [A_i : k]`.
    pub fn points(&self, i: usize) -> usize {
        self.gens[i].points.len()
    }

    pub fn pair(&self, i: usize, j: usize) -> &PairOrbits {
        &self.pairs[i * self.gens.len() + j]
    }

    /// Factor degrees of `A_i ⊗ A_j`, sorted.
    pub fn tensor_factor_degrees(&self, i: usize, j: usize) -> Vec<usize> {
        let mut d: Vec<usize> = self.pair(i, j).witnesses.iter().map(|w| w.degree).collect();
        d.sort_unstable();
        d
    }
}

fn single_poly(base: CoeffRing, c: &[i64]) -> Result<EtaleSpec> {
    EtaleSpec::from_i64(base, &[c])
}

/// `{k}` over a base field, trivial Galois group.
pub fn base_corpus(base: CoeffRing) -> Result<GeneratorSet> {
    let mut gd = GaloisDatum::new(FinGroup::trivial());
    gd.add_subgroup("G", &[0])?;
    gd.set_field("G", single_poly(base, &[0, 1])?)?;
    GeneratorSet::new(gd, vec![("k".into(), single_poly(base, &[0, 1])?)])
}

/// `{ℚ, ℚ(i), ℚ(i)²}` with `Gal(ℚ(i)/ℚ) = ℤ/2`.
pub fn gaussian_corpus() -> Result<GeneratorSet> {
    let q = CoeffRing::Rationals;
    let mut gd = GaloisDatum::new(FinGroup::cyclic(2));
    gd.add_subgroup("G", &[0, 1])?;
    gd.add_subgroup("1", &[0])?;
    gd.set_field("G", single_poly(q, &[0, 1])?)?;
    gd.set_field("1", single_poly(q, &[1, 0, 1])?)?;
    let gens = vec![
        ("Q".into(), single_poly(q, &[0, 1])?),
        ("Q(i)".into(), single_poly(q, &[1, 0, 1])?),
        ("Q(i)^2".into(), EtaleSpec::from_i64(q, &[&[1, 0, 1], &[1, 0, 1]])?),
    ];
    GeneratorSet::new(gd, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_points_and_pairs() {
        let gs = gaussian_corpus().unwrap();
        let sizes: Vec<usize> = (0..3).map(|i| gs.points(i)).collect();
        assert_eq!(sizes, [1, 2, 4]);
        assert_eq!(gs.unit(), 0);
        assert_eq!(gs.tensor_factor_degrees(1, 1), [2, 2]);
        assert_eq!(gs.tensor_factor_degrees(2, 2), [2, 2, 2, 2, 2, 2, 2, 2]);
        for w in &gs.pair(1, 2).witnesses {
            assert_eq!(w.target, 1);
        }
    }

    #[test]
    fn missing_closure_is_reported() {
        let q = CoeffRing::Rationals;
        let mut gd = GaloisDatum::new(FinGroup::cyclic(2));
        gd.add_subgroup("G", &[0, 1]).unwrap();
        gd.add_subgroup("1", &[0]).unwrap();
        gd.set_field("G", single_poly(q, &[0, 1]).unwrap()).unwrap();
        gd.set_field("1", single_poly(q, &[1, 0, 1]).unwrap()).unwrap();
        let only_qi = vec![("Q(i)".into(), single_poly(q, &[1, 0, 1]).unwrap())];
        assert!(GeneratorSet::new(gd.clone(), only_qi).is_err());
        let unknown = vec![
            ("Q".into(), single_poly(q, &[0, 1]).unwrap()),
            ("Q(sqrt2)".into(), single_poly(q, &[-2, 0, 1]).unwrap()),
        ];
        assert!(matches!(GeneratorSet::new(gd, unknown), Err(Error::Unknown { .. })));
    }
}
