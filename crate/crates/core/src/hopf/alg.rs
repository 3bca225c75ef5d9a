use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::group::FinGroup;
use crate::coeffs::{CoeffRing, Matrix, Scalar};
use crate::error::{shape, Result};

/// Finite-dimensional Hopf algebra by structure tensors:
/// `e_i e_j = Σ_k mult[(i d + j) d + k] e_k`,
/// `Δ(e_k) = Σ_{i,j} comult[(k d + i) d + j] e_i ⊗ e_j`,
/// `S(e_i) = Σ_k antipode[k][i] e_k`.
///
/// Construction only checks shapes; [`verify_hopf`] checks the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfAlg {
    ring: CoeffRing,
    dim: usize,
    labels: Vec<String>,
    mult: Vec<Scalar>,
    unit: Vec<Scalar>,
    comult: Vec<Scalar>,
    counit: Vec<Scalar>,
    antipode: Matrix,
}

/// Nonzero entries `(a, b, c, value)` of a flattened cube tensor.
type Sparse3 = Vec<(usize, usize, usize, Scalar)>;

fn sparse3(t: &[Scalar], d: usize) -> Sparse3 {
    let mut out = Vec::new();
    for (idx, v) in t.iter().enumerate() {
        if !v.is_zero() {
            out.push((idx / (d * d), (idx / d) % d, idx % d, v.clone()));
        }
    }
    out
}

impl HopfAlg {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        ring: CoeffRing,
        labels: Vec<String>,
        mult: Vec<Scalar>,
        unit: Vec<Scalar>,
        comult: Vec<Scalar>,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self> {
        let d = labels.len();
        if mult.len() != d * d * d || comult.len() != d * d * d || unit.len() != d || counit.len() != d {
            return Err(shape!("structure tensors do not match dimension {d}"));
        }
        if antipode.rows() != d || antipode.cols() != d || antipode.ring() != ring {
            return Err(shape!("antipode must be a {d}×{d} matrix over {ring}"));
        }
        let norm = |v: Vec<Scalar>| v.into_iter().map(|x| ring.normalize(x)).collect::<Result<Vec<_>>>();
        Ok(HopfAlg {
            ring,
            dim: d,
            labels,
            mult: norm(mult)?,
            unit: norm(unit)?,
            comult: norm(comult)?,
            counit: norm(counit)?,
            antipode,
        })
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn mult(&self) -> &[Scalar] {
        &self.mult
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn comult(&self) -> &[Scalar] {
        &self.comult
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    /// Adds `delta` to one multiplication constant `m[i][j][k]`.
    pub fn perturb_mult(&mut self, i: usize, j: usize, k: usize, delta: i64) {
        let d = self.dim;
        let x = &mut self.mult[(i * d + j) * d + k];
        *x = self.ring.add(x, &self.ring.from_i64(delta));
    }

    /// Adds `delta` to one comultiplication constant `c[k][i][j]`.
    pub fn perturb_comult(&mut self, k: usize, i: usize, j: usize, delta: i64) {
        let d = self.dim;
        let x = &mut self.comult[(k * d + i) * d + j];
        *x = self.ring.add(x, &self.ring.from_i64(delta));
    }

    pub fn perturb_counit(&mut self, i: usize, delta: i64) {
        self.counit[i] = self.ring.add(&self.counit[i], &self.ring.from_i64(delta));
    }

    pub fn set_antipode(&mut self, s: Matrix) -> Result<()> {
        if s.rows() != self.dim || s.cols() != self.dim {
            return Err(shape!("antipode must be {0}×{0}", self.dim));
        }
        self.antipode = s;
        Ok(())
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.ring.zero(); self.dim];
        v[i] = self.ring.one();
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vec![Scalar::zero(); d];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.mult[(i * d + j) * d + k];
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        self.canon(out)
    }

    /// `Δ(x)` as a `d × d` coefficient array, flattened `[i * d + j]`.
    pub fn delta(&self, x: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let mut out = vec![Scalar::zero(); d * d];
        for (k, xk) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (ij, o) in out.iter_mut().enumerate() {
                let c = &self.comult[k * d * d + ij];
                if !c.is_zero() {
                    *o += xk * c;
                }
            }
        }
        self.canon(out)
    }

    pub fn epsilon(&self, x: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, b) in x.iter().zip(&self.counit) {
            acc += a * b;
        }
        self.canon(vec![acc]).pop().expect("one entry")
    }

    pub fn apply_antipode(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.antipode.mul_vec(x).expect("square antipode")
    }

    pub(crate) fn canon(&self, v: Vec<Scalar>) -> Vec<Scalar> {
        v.into_iter()
            .map(|x| self.ring.normalize(x).expect("entries stay in the ring"))
            .collect()
    }

    /// Product in `A ⊗ A` of two flattened tensors.
    pub fn tensor_mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim;
        let m = sparse3(&self.mult, d);
        let mut out = vec![Scalar::zero(); d * d];
        for (a, b, c, v) in &m {
            for (a2, b2, c2, v2) in &m {
                let (xa, yb) = (&x[a * d + a2], &y[b * d + b2]);
                if xa.is_zero() || yb.is_zero() {
                    continue;
                }
                out[c * d + c2] += xa * yb * v * v2;
            }
        }
        self.canon(out)
    }
}

/// Axioms checked by [`verify_hopf`], in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HopfAxiom {
    Associativity,
    Unit,
    Coassociativity,
    Counit,
    ComultMultiplicative,
    CounitMultiplicative,
    Antipode,
}

impl HopfAxiom {
    pub const ALL: [HopfAxiom; 7] = [
        HopfAxiom::Associativity,
        HopfAxiom::Unit,
        HopfAxiom::Coassociativity,
        HopfAxiom::Counit,
        HopfAxiom::ComultMultiplicative,
        HopfAxiom::CounitMultiplicative,
        HopfAxiom::Antipode,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HopfAxiom::Associativity => "associativity",
            HopfAxiom::Unit => "unit",
            HopfAxiom::Coassociativity => "coassociativity",
            HopfAxiom::Counit => "counit",
            HopfAxiom::ComultMultiplicative => "comultiplication_multiplicative",
            HopfAxiom::CounitMultiplicative => "counit_multiplicative",
            HopfAxiom::Antipode => "antipode",
        }
    }
}

/// One flag per axiom; a failing flag carries the basis indices where the
/// identity first breaks (an empty witness marks the unit element).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfReport {
    pub flags: Vec<(HopfAxiom, Option<Vec<usize>>)>,
}

impl HopfReport {
    pub fn passes(&self) -> bool {
        self.flags.iter().all(|(_, w)| w.is_none())
    }

    pub fn failing(&self) -> Vec<HopfAxiom> {
        self.flags.iter().filter(|(_, w)| w.is_some()).map(|(a, _)| *a).collect()
    }

    pub fn witness(&self, axiom: HopfAxiom) -> Option<&[usize]> {
        self.flags.iter().find(|(a, _)| *a == axiom).and_then(|(_, w)| w.as_deref())
    }
}

pub fn verify_hopf(h: &HopfAlg) -> HopfReport {
    let d = h.dim;
    let e: Vec<Vec<Scalar>> = (0..d).map(|i| h.basis_vec(i)).collect();
    let one = h.ring.one();
    let mut flags = Vec::new();

    let mut w = None;
    'assoc: for a in 0..d {
        for b in 0..d {
            let ab = h.mul(&e[a], &e[b]);
            for c in 0..d {
                if h.mul(&ab, &e[c]) != h.mul(&e[a], &h.mul(&e[b], &e[c])) {
                    w = Some(vec![a, b, c]);
                    break 'assoc;
                }
            }
        }
    }
    flags.push((HopfAxiom::Associativity, w));

    let w = (0..d)
        .find(|&a| h.mul(&h.unit, &e[a]) != e[a] || h.mul(&e[a], &h.unit) != e[a])
        .map(|a| vec![a]);
    flags.push((HopfAxiom::Unit, w));

    let c3 = sparse3(&h.comult, d);
    let w = (0..d)
        .find(|&k| {
            let mut left = vec![Scalar::zero(); d * d * d];
            let mut right = vec![Scalar::zero(); d * d * d];
            for (_, a, b, v) in c3.iter().filter(|t| t.0 == k) {
                // (Δ ⊗ id): split the left factor a
                for (_, i, j, v2) in c3.iter().filter(|t| t.0 == *a) {
                    left[(i * d + j) * d + b] += v * v2;
                }
                // (id ⊗ Δ): split the right factor b
                for (_, j, l, v2) in c3.iter().filter(|t| t.0 == *b) {
                    right[(a * d + j) * d + l] += v * v2;
                }
            }
            h.canon(left) != h.canon(right)
        })
        .map(|k| vec![k]);
    flags.push((HopfAxiom::Coassociativity, w));

    let w = (0..d)
        .find(|&k| {
            let dk = h.delta(&e[k]);
            let left: Vec<Scalar> = (0..d)
                .map(|j| (0..d).map(|i| &h.counit[i] * &dk[i * d + j]).sum())
                .collect();
            let right: Vec<Scalar> = (0..d)
                .map(|i| (0..d).map(|j| &h.counit[j] * &dk[i * d + j]).sum())
                .collect();
            h.canon(left) != e[k] || h.canon(right) != e[k]
        })
        .map(|k| vec![k]);
    flags.push((HopfAxiom::Counit, w));

    let deltas: Vec<Vec<Scalar>> = e.iter().map(|x| h.delta(x)).collect();
    let unit_tensor: Vec<Scalar> = h.canon(
        (0..d * d)
            .map(|ij| &h.unit[ij / d] * &h.unit[ij % d])
            .collect(),
    );
    let mut w = if h.delta(&h.unit) != unit_tensor { Some(Vec::new()) } else { None };
    if w.is_none() {
        'dm: for a in 0..d {
            for b in 0..d {
                if h.delta(&h.mul(&e[a], &e[b])) != h.tensor_mul(&deltas[a], &deltas[b]) {
                    w = Some(vec![a, b]);
                    break 'dm;
                }
            }
        }
    }
    flags.push((HopfAxiom::ComultMultiplicative, w));

    let mut w = if h.epsilon(&h.unit) != one { Some(Vec::new()) } else { None };
    if w.is_none() {
        'em: for a in 0..d {
            for b in 0..d {
                let lhs = h.epsilon(&h.mul(&e[a], &e[b]));
                let rhs = h.ring.mul(&h.counit[a], &h.counit[b]);
                if lhs != rhs {
                    w = Some(vec![a, b]);
                    break 'em;
                }
            }
        }
    }
    flags.push((HopfAxiom::CounitMultiplicative, w));

    let s: Vec<Vec<Scalar>> = e.iter().map(|x| h.apply_antipode(x)).collect();
    let w = (0..d)
        .find(|&k| {
            let mut left = vec![Scalar::zero(); d];
            let mut right = vec![Scalar::zero(); d];
            for (_, i, j, v) in c3.iter().filter(|t| t.0 == k) {
                for (o, x) in left.iter_mut().zip(h.mul(&s[*i], &e[*j])) {
                    *o += v * x;
                }
                for (o, x) in right.iter_mut().zip(h.mul(&e[*i], &s[*j])) {
                    *o += v * x;
                }
            }
            let target: Vec<Scalar> = h.canon(h.unit.iter().map(|u| u * &h.counit[k]).collect());
            h.canon(left) != target || h.canon(right) != target
        })
        .map(|k| vec![k]);
    flags.push((HopfAxiom::Antipode, w));

    HopfReport { flags }
}

/// `S ∘ S = id`.
pub fn antipode_is_involutive(h: &HopfAlg) -> bool {
    let s2 = h.antipode.mul(&h.antipode).expect("square");
    s2 == Matrix::identity(h.ring, h.dim).expect("identity")
}

fn perm_matrix(ring: CoeffRing, perm: &[usize]) -> Matrix {
    let d = perm.len();
    let mut m = Matrix::zeros(ring, d, d).expect("size");
    for (i, &k) in perm.iter().enumerate() {
        m.set(k, i, ring.one());
    }
    m
}

fn element_labels(g: &FinGroup, prefix: &str) -> Vec<String> {
    (0..g.order()).map(|x| alloc::format!("{prefix}{x}")).collect()
}

/// `C(G, R)`: indicator functions `e_x`, pointwise product,
/// `Δ(e_x) = Σ_{yz = x} e_y ⊗ e_z`, `ε(e_x) = δ_{x,1}`, `S(e_x) = e_{x⁻¹}`.
pub fn function_hopf(g: &FinGroup, ring: CoeffRing) -> HopfAlg {
    let d = g.order();
    let mut mult = vec![ring.zero(); d * d * d];
    let mut comult = vec![ring.zero(); d * d * d];
    for x in 0..d {
        mult[(x * d + x) * d + x] = ring.one();
        for y in 0..d {
            let z = g.mul(g.inv(y), x);
            comult[(x * d + y) * d + z] = ring.one();
        }
    }
    let unit = vec![ring.one(); d];
    let mut counit = vec![ring.zero(); d];
    counit[g.identity()] = ring.one();
    let inv: Vec<usize> = (0..d).map(|x| g.inv(x)).collect();
    HopfAlg::new(ring, element_labels(g, "e"), mult, unit, comult, counit, perm_matrix(ring, &inv))
        .expect("shapes match")
}

/// `R[G]`: group elements, `Δ(g) = g ⊗ g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_algebra(g: &FinGroup, ring: CoeffRing) -> HopfAlg {
    let d = g.order();
    let mut mult = vec![ring.zero(); d * d * d];
    let mut comult = vec![ring.zero(); d * d * d];
    for x in 0..d {
        comult[(x * d + x) * d + x] = ring.one();
        for y in 0..d {
            mult[(x * d + y) * d + g.mul(x, y)] = ring.one();
        }
    }
    let mut unit = vec![ring.zero(); d];
    unit[g.identity()] = ring.one();
    let counit = vec![ring.one(); d];
    let inv: Vec<usize> = (0..d).map(|x| g.inv(x)).collect();
    HopfAlg::new(ring, element_labels(g, "g"), mult, unit, comult, counit, perm_matrix(ring, &inv))
        .expect("shapes match")
}

/// A corrupted Hopf algebra and the single axiom it is meant to break.
#[derive(Debug, Clone)]
pub struct Mutation {
    pub name: &'static str,
    pub intended: HopfAxiom,
    pub algebra: HopfAlg,
}

/// Structure-constant perturbations of small group and function algebras,
/// each breaking exactly one axiom.
pub fn mutation_suite(ring: CoeffRing) -> Vec<Mutation> {
    let (z2, z3) = (FinGroup::cyclic(2), FinGroup::cyclic(3));
    let mut out = Vec::new();

    // g² = 0 and ε(g) = 0: dual numbers with a primitive-like g
    let mut a = group_algebra(&z2, ring);
    a.perturb_mult(1, 1, 0, -1);
    a.perturb_counit(1, -1);
    out.push(Mutation { name: "group_z2_square_zero", intended: HopfAxiom::Counit, algebra: a });

    let mut a = function_hopf(&z2, ring);
    a.perturb_mult(0, 0, 1, 1);
    a.perturb_mult(1, 1, 1, -1);
    out.push(Mutation { name: "function_z2_skewed_idempotents", intended: HopfAxiom::Unit, algebra: a });

    let mut a = group_algebra(&z3, ring);
    a.perturb_mult(1, 1, 0, 1);
    a.perturb_mult(1, 1, 2, -1);
    out.push(Mutation { name: "group_z3_bad_square", intended: HopfAxiom::Associativity, algebra: a });

    let mut a = function_hopf(&z3, ring);
    a.perturb_comult(0, 1, 1, 1);
    a.perturb_comult(2, 1, 1, -1);
    out.push(Mutation { name: "function_z3_moved_coproduct", intended: HopfAxiom::Coassociativity, algebra: a });

    let mut a = function_hopf(&z3, ring);
    a.perturb_comult(0, 1, 1, -1);
    a.perturb_comult(2, 2, 2, 1);
    out.push(Mutation { name: "function_z3_swapped_coproduct", intended: HopfAxiom::ComultMultiplicative, algebra: a });

    let mut a = function_hopf(&z3, ring);
    a.set_antipode(Matrix::identity(ring, 3).expect("identity")).expect("shape");
    out.push(Mutation { name: "function_z3_identity_antipode", intended: HopfAxiom::Antipode, algebra: a });

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_coproduct_unfolds() {
        let h = function_hopf(&FinGroup::cyclic(2), CoeffRing::Rationals);
        let d1 = h.delta(&h.basis_vec(1));
        let want: Vec<Scalar> = [0, 1, 1, 0].iter().map(|&x| Scalar::from_integer(x.into())).collect();
        assert_eq!(d1, want);
    }

    #[test]
    fn trivial_group_is_the_ring() {
        let h = function_hopf(&FinGroup::trivial(), CoeffRing::Rationals);
        assert_eq!(h.dim(), 1);
        assert_eq!(h.mult(), &[Scalar::from_integer(1.into())]);
        assert!(verify_hopf(&h).passes());
    }

    #[test]
    fn s3_antipode_is_inversion() {
        let g = FinGroup::symmetric3();
        let h = function_hopf(&g, CoeffRing::PrimeField(5));
        assert!(verify_hopf(&h).passes());
        assert!(antipode_is_involutive(&h));
        for x in 0..6 {
            assert_eq!(h.apply_antipode(&h.basis_vec(x)), h.basis_vec(g.inv(x)));
        }
    }

    #[test]
    fn group_algebra_z3() {
        assert!(verify_hopf(&group_algebra(&FinGroup::cyclic(3), CoeffRing::Rationals)).passes());
        assert!(verify_hopf(&group_algebra(&FinGroup::symmetric3(), CoeffRing::Rationals)).passes());
    }

    #[test]
    fn mutations_break_one_axiom_each() {
        for ring in [CoeffRing::Rationals, CoeffRing::PrimeField(5)] {
            for m in mutation_suite(ring) {
                let r = verify_hopf(&m.algebra);
                assert_eq!(r.failing(), [m.intended], "{}", m.name);
                assert!(r.witness(m.intended).is_some());
            }
        }
    }
}
