use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::alg::HopfAlg;
use crate::coeffs::{Matrix, Scalar};
use crate::error::Result;

/// Finitely supported `Σ_n x_n tⁿ` with `x_n` in the base algebra.
pub type LaurentElem = BTreeMap<i64, Vec<Scalar>>;

/// `H[t, t⁻¹]` with `t` central and group-like: `Δ(t) = t ⊗ t`,
/// `ε(t) = 1`, `S(t) = t⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentHopf {
    base: HopfAlg,
}

/// How `t` is killed when passing back to the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalConvention {
    /// `t ↦ 1`, the quotient by the augmentation ideal of `R[t, t⁻¹]`.
    #[default]
    TEqualsOne,
    /// Keep only the `t⁰` component.
    DegreeZero,
}

pub fn laurent_extension(h: &HopfAlg) -> LaurentHopf {
    LaurentHopf { base: h.clone() }
}

/// The base algebra recovered from `lh`; elements map through
/// [`LaurentHopf::evaluate`].
pub fn evaluate_t(lh: &LaurentHopf) -> HopfAlg {
    lh.base.clone()
}

impl LaurentHopf {
    pub fn base(&self) -> &HopfAlg {
        &self.base
    }

    fn clean(&self, mut x: LaurentElem) -> LaurentElem {
        x.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        x
    }

    /// `x tⁿ`.
    pub fn embed(&self, x: &[Scalar], n: i64) -> LaurentElem {
        self.clean([(n, x.to_vec())].into_iter().collect())
    }

    /// `tⁿ`.
    pub fn t_pow(&self, n: i64) -> LaurentElem {
        self.embed(self.base.unit(), n)
    }

    pub fn mul(&self, x: &LaurentElem, y: &LaurentElem) -> LaurentElem {
        let ring = self.base.ring();
        let mut out = LaurentElem::new();
        for (m, a) in x {
            for (n, b) in y {
                let p = self.base.mul(a, b);
                let slot = out.entry(m + n).or_insert_with(|| vec![ring.zero(); p.len()]);
                for (s, v) in slot.iter_mut().zip(p) {
                    *s = ring.add(s, &v);
                }
            }
        }
        self.clean(out)
    }

    /// `Δ(x)` with components indexed by the bidegree `(m, n)`.
    pub fn delta(&self, x: &LaurentElem) -> BTreeMap<(i64, i64), Vec<Scalar>> {
        let mut out = BTreeMap::new();
        for (n, a) in x {
            let d = self.base.delta(a);
            if d.iter().any(|c| !c.is_zero()) {
                out.insert((*n, *n), d);
            }
        }
        out
    }

    pub fn epsilon(&self, x: &LaurentElem) -> Scalar {
        let ring = self.base.ring();
        x.values().fold(ring.zero(), |acc, a| ring.add(&acc, &self.base.epsilon(a)))
    }

    pub fn antipode(&self, x: &LaurentElem) -> LaurentElem {
        self.clean(x.iter().map(|(n, a)| (-n, self.base.apply_antipode(a))).collect())
    }

    pub fn evaluate(&self, x: &LaurentElem, convention: EvalConvention) -> Vec<Scalar> {
        let ring = self.base.ring();
        let mut out = vec![ring.zero(); self.base.dim()];
        for (n, a) in x {
            if convention == EvalConvention::DegreeZero && *n != 0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(a) {
                *o = ring.add(o, v);
            }
        }
        out
    }

    /// Group-likeness of `t` and the Hopf identities on `e_i tⁿ` for
    /// `|n| ≤ window`, as named flags.
    pub fn verify(&self, window: i64) -> Vec<(&'static str, bool)> {
        let h = &self.base;
        let ring = h.ring();
        let one = self.t_pow(0);
        let (t, ti) = (self.t_pow(1), self.t_pow(-1));
        let d = h.dim();
        let unit_tensor: Vec<Scalar> = (0..d * d).map(|ij| ring.mul(&h.unit()[ij / d], &h.unit()[ij % d])).collect();
        let group_like = self.delta(&t) == [((1, 1), unit_tensor)].into_iter().collect()
            && self.epsilon(&t) == ring.one()
            && self.antipode(&t) == ti
            && self.mul(&t, &ti) == one;
        let basis: Vec<LaurentElem> = (-window..=window)
            .flat_map(|n| (0..h.dim()).map(move |i| (n, i)))
            .map(|(n, i)| self.embed(&h.basis_vec(i), n))
            .collect();
        let mut assoc = true;
        let mut antipode = true;
        let mut counit_mult = true;
        for x in &basis {
            for y in &basis {
                let xy = self.mul(x, y);
                if self.epsilon(&xy) != ring.mul(&self.epsilon(x), &self.epsilon(y)) {
                    counit_mult = false;
                }
                for z in basis.iter().take(h.dim()) {
                    if self.mul(&xy, z) != self.mul(x, &self.mul(y, z)) {
                        assoc = false;
                    }
                }
            }
            // m(S ⊗ id)Δ(x) = ε(x)·1, using that Δ keeps the t-degree
            for ((m, n), dx) in self.delta(x) {
                let dim = h.dim();
                let mut acc = LaurentElem::new();
                for i in 0..dim {
                    for j in 0..dim {
                        let c = &dx[i * dim + j];
                        if c.is_zero() {
                            continue;
                        }
                        let left = self.antipode(&self.embed(&h.basis_vec(i), m));
                        let prod = self.mul(&left, &self.embed(&h.basis_vec(j), n));
                        for (k, v) in prod {
                            let slot = acc.entry(k).or_insert_with(|| vec![ring.zero(); dim]);
                            for (s, w) in slot.iter_mut().zip(v) {
                                *s = ring.add(s, &ring.mul(c, &w));
                            }
                        }
                    }
                }
                let want = self.embed(&h.unit().iter().map(|u| ring.mul(u, &self.epsilon(x))).collect::<Vec<_>>(), 0);
                if self.clean(acc) != want {
                    antipode = false;
                }
            }
        }
        vec![
            ("t_group_like", group_like),
            ("associativity", assoc),
            ("counit_multiplicative", counit_mult),
            ("antipode", antipode),
        ]
    }
}

/// Outcome of computing `lh ⊗_{R[t,t⁻¹]} R` on a window of degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCheck {
    pub window: i64,
    /// Dimension of the window modulo the relations `x tⁿ⁺¹ = x tⁿ`.
    pub quotient_dim: usize,
    /// The evaluation map vanishes on the relations and has full rank, so
    /// its kernel is exactly the relation span.
    pub kernel_matches: bool,
    /// Evaluation is multiplicative on basis pairs inside the window.
    pub multiplicative: bool,
}

impl QuotientCheck {
    pub fn agrees(&self, base_dim: usize) -> bool {
        self.kernel_matches && self.multiplicative && self.quotient_dim == base_dim
    }
}

/// Imposes `t = 1` by linear algebra on `⊕_{|n| ≤ window} H tⁿ` and
/// compares the quotient with the evaluation map.
pub fn laurent_quotient_check(lh: &LaurentHopf, window: i64, convention: EvalConvention) -> Result<QuotientCheck> {
    let h = lh.base();
    let ring = h.ring();
    let d = h.dim();
    let width = (2 * window + 1) as usize;
    let slot = |n: i64, i: usize| ((n + window) as usize) * d + i;
    let mut rels = Vec::new();
    for n in -window..window {
        for i in 0..d {
            let mut v = vec![ring.zero(); width * d];
            v[slot(n + 1, i)] = ring.one();
            v[slot(n, i)] = ring.neg(&ring.one());
            rels.push(v);
        }
    }
    let w = if rels.is_empty() {
        Matrix::zeros(ring, width * d, 0)?
    } else {
        Matrix::new(ring, rels.len(), width * d, rels.concat())?.transpose()
    };
    let quotient_dim = width * d - w.rank();
    let mut e = Matrix::zeros(ring, d, width * d)?;
    for n in -window..=window {
        for i in 0..d {
            for (r, v) in lh.evaluate(&lh.embed(&h.basis_vec(i), n), convention).into_iter().enumerate() {
                e.set(r, slot(n, i), v);
            }
        }
    }
    let kernel_matches = e.mul(&w)?.is_zero() && e.rank() == d && quotient_dim == d;
    let mut multiplicative = true;
    'm: for m in -window..=window {
        for n in -window..=window {
            if (m + n).abs() > window {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    let x = lh.embed(&h.basis_vec(i), m);
                    let y = lh.embed(&h.basis_vec(j), n);
                    let lhs = lh.evaluate(&lh.mul(&x, &y), convention);
                    let rhs = h.mul(&lh.evaluate(&x, convention), &lh.evaluate(&y, convention));
                    if lhs != rhs {
                        multiplicative = false;
                        break 'm;
                    }
                }
            }
        }
    }
    Ok(QuotientCheck {
        window,
        quotient_dim,
        kernel_matches,
        multiplicative,
    })
}

/// `R[t, t⁻¹] → lh → H` against `unit ∘ counit`, on `tⁿ` for `|n| ≤ window`.
pub fn unit_counit_check(lh: &LaurentHopf, window: i64, convention: EvalConvention) -> bool {
    let h = lh.base();
    (-window..=window).all(|n| {
        // ε(tⁿ) = 1 in R[t, t⁻¹]
        lh.evaluate(&lh.t_pow(n), convention) == h.unit()
    })
}
