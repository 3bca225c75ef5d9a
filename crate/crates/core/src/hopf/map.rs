use alloc::vec;
use alloc::vec::Vec;

use super::alg::{function_hopf, HopfAlg};
use super::group::{FinGroup, GroupHom};
use crate::coeffs::{CoeffRing, Matrix, Scalar};
use crate::error::{invalid, shape, Result};

/// Linear map between Hopf algebras commuting with all structure maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfMap {
    source: HopfAlg,
    target: HopfAlg,
    matrix: Matrix,
}

impl HopfMap {
    /// `matrix` is `dim target × dim source`, acting on coordinate columns.
    pub fn new(source: HopfAlg, target: HopfAlg, matrix: Matrix) -> Result<Self> {
        if source.ring() != target.ring() || matrix.ring() != source.ring() {
            return Err(crate::Error::RingMismatch("Hopf map between different rings".into()));
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(shape!("Hopf map matrix must be {}×{}", target.dim(), source.dim()));
        }
        let m = HopfMap { source, target, matrix };
        if let Some(what) = m.first_violation() {
            return Err(invalid!("not a Hopf map: fails to commute with the {what}"));
        }
        Ok(m)
    }

    pub fn source(&self) -> &HopfAlg {
        &self.source
    }

    pub fn target(&self) -> &HopfAlg {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x).expect("shape checked")
    }

    fn apply2(&self, t: &[Scalar]) -> Vec<Scalar> {
        let (da, db) = (self.source.dim(), self.target.dim());
        let ring = self.source.ring();
        let mut out = vec![ring.zero(); db * db];
        for i in 0..da {
            for j in 0..da {
                let c = &t[i * da + j];
                if num_traits::Zero::is_zero(c) {
                    continue;
                }
                for p in 0..db {
                    for q in 0..db {
                        let v = ring.mul(c, &ring.mul(self.matrix.get(p, i), self.matrix.get(q, j)));
                        out[p * db + q] = ring.add(&out[p * db + q], &v);
                    }
                }
            }
        }
        out
    }

    fn first_violation(&self) -> Option<&'static str> {
        let (a, b) = (&self.source, &self.target);
        let e: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| a.basis_vec(i)).collect();
        if self.apply(a.unit()) != b.unit() {
            return Some("unit");
        }
        for x in &e {
            for y in &e {
                if self.apply(&a.mul(x, y)) != b.mul(&self.apply(x), &self.apply(y)) {
                    return Some("multiplication");
                }
            }
        }
        for x in &e {
            let fx = self.apply(x);
            if self.apply2(&a.delta(x)) != b.delta(&fx) {
                return Some("comultiplication");
            }
            if b.epsilon(&fx) != a.epsilon(x) {
                return Some("counit");
            }
            if self.apply(&a.apply_antipode(x)) != b.apply_antipode(&fx) {
                return Some("antipode");
            }
        }
        None
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &HopfMap) -> Result<HopfMap> {
        if first.target != self.source {
            return Err(invalid!("Hopf maps are not composable"));
        }
        Ok(HopfMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }
}

/// Flags for `A → B → C` being a short exact sequence of Hopf algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SesReport {
    pub injective: bool,
    pub surjective: bool,
    /// `g ∘ f = unit_C ∘ counit_A`.
    pub composite_trivial: bool,
    /// `B / B f(ker ε_A) B ≅ C` via `g`.
    pub quotient_iso: bool,
    pub rank_f: usize,
    pub rank_g: usize,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    /// First `(row, column)` where `g ∘ f` and `unit ∘ counit` differ.
    pub composite_witness: Option<(usize, usize)>,
}

impl SesReport {
    pub fn passes(&self) -> bool {
        self.injective && self.surjective && self.composite_trivial && self.quotient_iso
    }
}

pub fn ses_check(f: &HopfMap, g: &HopfMap) -> Result<SesReport> {
    if f.target != g.source {
        return Err(invalid!("the middle algebras of the sequence differ"));
    }
    let (a, b, c) = (&f.source, &f.target, &g.target);
    let ring = a.ring();
    ring.require_field()?;
    let rank_f = f.matrix.rank();
    let rank_g = g.matrix.rank();
    let gf = g.matrix.mul(&f.matrix)?;
    let mut composite_witness = None;
    'w: for r in 0..c.dim() {
        for col in 0..a.dim() {
            if gf.get(r, col) != &ring.mul(&c.unit()[r], &a.counit()[col]) {
                composite_witness = Some((r, col));
                break 'w;
            }
        }
    }
    // the ideal generated by f(ker ε_A)
    let eps = Matrix::new(ring, 1, a.dim(), a.counit().to_vec())?;
    let (_, ker) = eps.rank_kernel()?;
    let mut gens = Vec::new();
    for v in &ker {
        let fv = f.apply(v);
        for i in 0..b.dim() {
            let left = b.mul(&b.basis_vec(i), &fv);
            for j in 0..b.dim() {
                gens.push(b.mul(&left, &b.basis_vec(j)));
            }
        }
    }
    let ideal = if gens.is_empty() {
        Matrix::zeros(ring, b.dim(), 0)?
    } else {
        Matrix::new(ring, gens.len(), b.dim(), gens.concat())?.transpose()
    };
    let ideal_dim = ideal.rank();
    let kills = g.matrix.mul(&ideal)?.is_zero();
    let quotient_dim = b.dim() - ideal_dim;
    Ok(SesReport {
        injective: rank_f == a.dim(),
        surjective: rank_g == c.dim(),
        composite_trivial: composite_witness.is_none(),
        quotient_iso: kills && rank_g == c.dim() && quotient_dim == c.dim(),
        rank_f,
        rank_g,
        ideal_dim,
        quotient_dim,
        composite_witness,
    })
}

/// `C(G/N) → C(G) → C(N)`: pullback along the projection, then
/// restriction to the normal subgroup.
pub fn function_ses(g: &FinGroup, normal: &[usize], ring: CoeffRing) -> Result<(HopfMap, HopfMap)> {
    let (q, pi) = g.quotient(normal)?;
    let mut members = normal.to_vec();
    members.sort_unstable();
    members.dedup();
    let pos = |x: usize| members.binary_search(&x).ok();
    let table = members
        .iter()
        .map(|&a| members.iter().map(|&b| pos(g.mul(a, b)).expect("closed")).collect())
        .collect();
    let n = FinGroup::new(alloc::format!("{}_N", g.name()), table)?;
    let (ha, hb, hc) = (function_hopf(&q, ring), function_hopf(g, ring), function_hopf(&n, ring));
    let f = HopfMap::new(ha, hb.clone(), pullback_matrix(ring, &pi, q.order())?)?;
    let mut r = Matrix::zeros(ring, n.order(), g.order())?;
    for x in 0..g.order() {
        if let Some(k) = pos(x) {
            r.set(k, x, ring.one());
        }
    }
    let gmap = HopfMap::new(hb, hc, r)?;
    Ok((f, gmap))
}

fn pullback_matrix(ring: CoeffRing, pi: &GroupHom, target_order: usize) -> Result<Matrix> {
    let mut m = Matrix::zeros(ring, pi.map().len(), target_order)?;
    for (x, &y) in pi.map().iter().enumerate() {
        m.set(x, y, ring.one());
    }
    Ok(m)
}

/// Finite stage model of `C⁰(lim G_n, R) = colim C(G_n, R)`: function
/// algebras joined by pullbacks along surjections `G_{n+1} → G_n`.
#[derive(Debug, Clone)]
pub struct ProfiniteTower {
    groups: Vec<FinGroup>,
    algebras: Vec<HopfAlg>,
    inclusions: Vec<HopfMap>,
}

impl ProfiniteTower {
    /// `maps[n]` is the surjection `groups[n + 1] → groups[n]`.
    pub fn new(groups: Vec<FinGroup>, maps: Vec<Vec<usize>>, ring: CoeffRing) -> Result<Self> {
        if groups.is_empty() || maps.len() + 1 != groups.len() {
            return Err(shape!("a tower of {} groups needs {} transition maps", groups.len(), groups.len().saturating_sub(1)));
        }
        let algebras: Vec<HopfAlg> = groups.iter().map(|g| function_hopf(g, ring)).collect();
        let mut inclusions = Vec::new();
        for (n, map) in maps.into_iter().enumerate() {
            let pi = GroupHom::new(&groups[n + 1], &groups[n], map)?;
            if !pi.is_surjective() {
                return Err(invalid!("transition map at level {n} is not surjective"));
            }
            let m = pullback_matrix(ring, &pi, groups[n].order())?;
            inclusions.push(HopfMap::new(algebras[n].clone(), algebras[n + 1].clone(), m)?);
        }
        Ok(ProfiniteTower {
            groups,
            algebras,
            inclusions,
        })
    }

    /// `ℤ/p ← ℤ/p² ← … ← ℤ/pⁿ` with reduction maps.
    pub fn cyclic(p: usize, levels: usize, ring: CoeffRing) -> Result<Self> {
        if p < 2 || levels == 0 {
            return Err(invalid!("cyclic tower needs p ≥ 2 and at least one level"));
        }
        let groups: Vec<FinGroup> = (1..=levels).map(|k| FinGroup::cyclic(p.pow(k as u32))).collect();
        let maps = (1..levels).map(|k| (0..p.pow(k as u32 + 1)).map(|x| x % p.pow(k as u32)).collect()).collect();
        Self::new(groups, maps, ring)
    }

    pub fn levels(&self) -> usize {
        self.groups.len()
    }

    pub fn group(&self, n: usize) -> &FinGroup {
        &self.groups[n]
    }

    pub fn algebra(&self, n: usize) -> &HopfAlg {
        &self.algebras[n]
    }

    pub fn inclusion(&self, n: usize) -> &HopfMap {
        &self.inclusions[n]
    }

    /// Image of a function at level `from` in level `to ≥ from`.
    pub fn embed(&self, x: &[Scalar], from: usize, to: usize) -> Result<Vec<Scalar>> {
        if from > to || to >= self.levels() || x.len() != self.algebras[from].dim() {
            return Err(invalid!("cannot embed level {from} into level {to}"));
        }
        let mut v = x.to_vec();
        for n in from..to {
            v = self.inclusions[n].apply(&v);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoeffRing = CoeffRing::Rationals;

    #[test]
    fn cyclic_extensions_are_exact() {
        for (n, normal) in [(4, vec![0, 2]), (6, vec![0, 2, 4])] {
            let (f, g) = function_ses(&FinGroup::cyclic(n), &normal, Q).unwrap();
            let r = ses_check(&f, &g).unwrap();
            assert!(r.passes(), "{r:?}");
            assert_eq!(r.quotient_dim, normal.len());
        }
    }

    #[test]
    fn s3_over_a3() {
        let s3 = FinGroup::symmetric3();
        let a3: Vec<usize> = (0..6).filter(|&g| s3.mul(g, s3.mul(g, g)) == 0).collect();
        let (f, g) = function_ses(&s3, &a3, CoeffRing::PrimeField(5)).unwrap();
        assert!(ses_check(&f, &g).unwrap().passes());
    }

    #[test]
    fn trivial_first_term() {
        let b = function_hopf(&FinGroup::cyclic(3), Q);
        let r = function_hopf(&FinGroup::trivial(), Q);
        let unit = Matrix::new(Q, 3, 1, b.unit().to_vec()).unwrap();
        let f = HopfMap::new(r, b.clone(), unit).unwrap();
        let g = HopfMap::new(b.clone(), b, Matrix::identity(Q, 3).unwrap()).unwrap();
        assert!(ses_check(&f, &g).unwrap().passes());
    }

    #[test]
    fn nontrivial_composite_is_flagged() {
        let b = function_hopf(&FinGroup::cyclic(2), Q);
        let id = HopfMap::new(b.clone(), b, Matrix::identity(Q, 2).unwrap()).unwrap();
        let r = ses_check(&id, &id).unwrap();
        assert!(!r.composite_trivial && r.composite_witness.is_some());
        assert!(r.injective && r.surjective);
    }

    #[test]
    fn non_hopf_maps_are_rejected() {
        let b = function_hopf(&FinGroup::cyclic(2), Q);
        let swap = Matrix::from_i64(Q, 2, 2, &[0, 1, 1, 0]).unwrap();
        assert!(HopfMap::new(b.clone(), b, swap).is_err());
    }

    #[test]
    fn two_adic_tower() {
        let t = ProfiniteTower::cyclic(2, 3, Q).unwrap();
        for n in 0..3 {
            assert_eq!(t.algebra(n).dim(), 2usize.pow(n as u32 + 1));
        }
        // an indicator at level 0 spreads over a fiber of size 2 at level 1
        for x in 0..2 {
            let v = t.embed(&t.algebra(0).basis_vec(x), 0, 1).unwrap();
            let support: Vec<usize> = (0..4).filter(|&i| !num_traits::Zero::is_zero(&v[i])).collect();
            assert_eq!(support.len(), 2);
            assert!(support.iter().all(|&i| i % 2 == x));
        }
        let bad = ProfiniteTower::new(vec![FinGroup::cyclic(2), FinGroup::cyclic(2)], vec![vec![0, 0]], Q);
        assert!(bad.is_err());
    }
}
