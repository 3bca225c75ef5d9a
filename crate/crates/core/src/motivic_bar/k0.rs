use alloc::vec;
use alloc::vec::Vec;

use super::gens::GeneratorSet;
use crate::algebras::{factor_degrees, tensor_algebra, FinAlgebra};
use crate::coeffs::{CoeffRing, Scalar};
use crate::error::{invalid, shape, Error, Result};

/// A class in `K₀(A_s^op ⊗ A_t)`, read as a morphism `A_s → A_t`: an
/// equivariant integer matrix indexed by (target point, source point).
/// Orbit indicator matrices form the basis, one per factor of `A_s ⊗ A_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K0HomClass {
    pub source: usize,
    pub target: usize,
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

/// Rank and factor degrees of `K₀(a^op ⊗ b)`, from the tensor algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0HomBasis {
    pub rank: usize,
    pub factor_degrees: Vec<usize>,
}

/// `K₀(a^op ⊗ b)` for commutative étale `a`, `b`: free on the factors of
/// `a ⊗ b`.
pub fn k0_hom(a: &FinAlgebra, b: &FinAlgebra) -> Result<K0HomBasis> {
    if !a.is_commutative() || !b.is_commutative() {
        return Err(Error::Unsupported("K₀ classes are only modelled for commutative étale algebras".into()));
    }
    let mut d = factor_degrees(&tensor_algebra(a, b)?)?;
    d.sort_unstable();
    Ok(K0HomBasis {
        rank: d.len(),
        factor_degrees: d,
    })
}

impl K0HomClass {
    /// `Σ c_O [O]` over the orbits of `X_target × X_source`.
    pub fn from_orbits(gs: &GeneratorSet, source: usize, target: usize, coeffs: &[i64]) -> Result<Self> {
        gs.generator(source)?;
        gs.generator(target)?;
        let pair = gs.pair(target, source);
        if coeffs.len() != pair.orbits.len() {
            return Err(shape!("{} orbit coefficients for rank {}", coeffs.len(), pair.orbits.len()));
        }
        let entries = pair.orbit_of.iter().map(|&o| coeffs[o]).collect();
        Ok(K0HomClass {
            source,
            target,
            rows: gs.points(target),
            cols: gs.points(source),
            entries,
        })
    }

    pub fn basis(gs: &GeneratorSet, source: usize, target: usize, orbit: usize) -> Result<Self> {
        let mut c = vec![0; gs.pair(target, source).orbits.len()];
        *c.get_mut(orbit).ok_or_else(|| invalid!("orbit {orbit} out of range"))? = 1;
        Self::from_orbits(gs, source, target, &c)
    }

    /// An explicit matrix; rejected unless it is constant on orbits.
    pub fn from_matrix(gs: &GeneratorSet, source: usize, target: usize, entries: Vec<i64>) -> Result<Self> {
        gs.generator(source)?;
        gs.generator(target)?;
        let (rows, cols) = (gs.points(target), gs.points(source));
        if entries.len() != rows * cols {
            return Err(shape!("{} entries for a {rows}×{cols} class", entries.len()));
        }
        let pair = gs.pair(target, source);
        for o in &pair.orbits {
            if o.iter().any(|&p| entries[p] != entries[o[0]]) {
                return Err(invalid!("matrix is not Galois-equivariant"));
            }
        }
        Ok(K0HomClass {
            source,
            target,
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(gs: &GeneratorSet, a: usize) -> Result<Self> {
        let n = gs.generator(a)?.points.len();
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Self::from_matrix(gs, a, a, e)
    }

    /// Class of the bimodule `A_t` along an algebra map `A_s → A_t`, given by
    /// its map on points `X_t → X_s`.
    pub fn graph(gs: &GeneratorSet, source: usize, target: usize, points: &[usize]) -> Result<Self> {
        let xs = &gs.generator(source)?.points;
        let xt = &gs.generator(target)?.points;
        if !xt.is_equivariant(xs, points) {
            return Err(invalid!("point map is not an equivariant map X_target → X_source"));
        }
        let (rows, cols) = (xt.len(), xs.len());
        let mut e = vec![0; rows * cols];
        for (y, &x) in points.iter().enumerate() {
            e[y * cols + x] = 1;
        }
        Self::from_matrix(gs, source, target, e)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Coordinates in the orbit basis.
    pub fn coordinates(&self, gs: &GeneratorSet) -> Vec<i64> {
        gs.pair(self.target, self.source).orbits.iter().map(|o| self.entries[o[0]]).collect()
    }
}

/// `g ∘ f` for `f: a → b`, `g: b → c`.
pub fn compose_k0(f: &K0HomClass, g: &K0HomClass) -> Result<K0HomClass> {
    if f.target != g.source {
        return Err(shape!("cannot compose {}→{} with {}→{}", f.source, f.target, g.source, g.target));
    }
    let (rows, inner, cols) = (g.rows, g.cols, f.cols);
    let mut e = vec![0i64; rows * cols];
    for r in 0..rows {
        for k in 0..inner {
            let x = g.entries[r * inner + k];
            if x == 0 {
                continue;
            }
            for c in 0..cols {
                let v = x.checked_mul(f.entries[k * cols + c]).ok_or(Error::Overflow("K₀ composition"))?;
                e[r * cols + c] = e[r * cols + c].checked_add(v).ok_or(Error::Overflow("K₀ composition"))?;
            }
        }
    }
    Ok(K0HomClass {
        source: f.source,
        target: g.target,
        rows,
        cols,
        entries: e,
    })
}

/// The induced map `HH₀(A_s) → HH₀(A_t)` on `R^{X_s}`.
pub fn hh_action(m: &K0HomClass, v: &[Scalar], ring: CoeffRing) -> Result<Vec<Scalar>> {
    if v.len() != m.cols {
        return Err(shape!("HH₀ vector of length {} for a class with {} source points", v.len(), m.cols));
    }
    (0..m.rows)
        .map(|r| {
            let mut acc = ring.zero();
            for (c, x) in v.iter().enumerate() {
                let e = m.entries[r * m.cols + c];
                if e != 0 {
                    acc = ring.add(&acc, &ring.mul(&ring.from_i64(e), x));
                }
            }
            ring.normalize(acc)
        })
        .collect()
}

/// The transposed class `A_t → A_s`.
pub fn transfer(m: &K0HomClass) -> K0HomClass {
    let mut e = vec![0; m.entries.len()];
    for r in 0..m.rows {
        for c in 0..m.cols {
            e[c * m.rows + r] = m.entries[r * m.cols + c];
        }
    }
    K0HomClass {
        source: m.target,
        target: m.source,
        rows: m.cols,
        cols: m.rows,
        entries: e,
    }
}

/// `Σ_x e_x ⊗ e_x ∈ HH₀(A) ⊗ HH₀(A)`, as a flattened `|X|×|X|` tensor.
pub fn coevaluation(gs: &GeneratorSet, a: usize, ring: CoeffRing) -> Result<Vec<Scalar>> {
    let n = gs.generator(a)?.points.len();
    let mut t = vec![ring.zero(); n * n];
    for i in 0..n {
        t[i * n + i] = ring.one();
    }
    Ok(t)
}

/// `(ε ⊗ id)` applied to a coevaluation tensor, with `ε(e_x) = 1`.
pub fn counit_contract(t: &[Scalar], n: usize, ring: CoeffRing) -> Result<Vec<Scalar>> {
    if t.len() != n * n {
        return Err(shape!("tensor of length {} is not {n}×{n}", t.len()));
    }
    (0..n)
        .map(|j| {
            let mut acc = ring.zero();
            for i in 0..n {
                acc = ring.add(&acc, &t[i * n + j]);
            }
            ring.normalize(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motivic_bar::gaussian_corpus;

    #[test]
    fn inclusion_and_transfer() {
        let gs = gaussian_corpus().unwrap();
        let q = CoeffRing::Rationals;
        let inc = K0HomClass::graph(&gs, 0, 1, &[0, 0]).unwrap();
        assert_eq!(hh_action(&inc, &[q.one()], q).unwrap(), [q.one(), q.one()]);
        let tr = transfer(&inc);
        let v = [q.from_i64(1), q.from_i64(1)];
        assert_eq!(hh_action(&tr, &v, q).unwrap(), [q.from_i64(2)]);
        assert_eq!(tr.entries(), &[1, 1]);
    }

    #[test]
    fn identity_is_a_unit() {
        let gs = gaussian_corpus().unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for o in 0..gs.pair(b, a).orbits.len() {
                    let f = K0HomClass::basis(&gs, a, b, o).unwrap();
                    let ia = K0HomClass::identity(&gs, a).unwrap();
                    let ib = K0HomClass::identity(&gs, b).unwrap();
                    assert_eq!(compose_k0(&ia, &f).unwrap(), f);
                    assert_eq!(compose_k0(&f, &ib).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn conjugation_squares_to_identity() {
        let gs = gaussian_corpus().unwrap();
        let conj = K0HomClass::graph(&gs, 1, 1, &[1, 0]).unwrap();
        let sq = compose_k0(&conj, &conj).unwrap();
        assert_eq!(sq, K0HomClass::identity(&gs, 1).unwrap());
        assert!(K0HomClass::graph(&gs, 1, 1, &[0, 0]).is_err());
    }

    #[test]
    fn coevaluation_counit() {
        let gs = gaussian_corpus().unwrap();
        let q = CoeffRing::Rationals;
        let t = coevaluation(&gs, 2, q).unwrap();
        assert_eq!(counit_contract(&t, 4, q).unwrap(), vec![q.one(); 4]);
    }

    #[test]
    fn ranks_from_algebras() {
        let q = CoeffRing::Rationals;
        let k = FinAlgebra::base_field(q).unwrap();
        let qi = FinAlgebra::quotient(&crate::algebras::poly::Poly::from_i64(q, &[1, 0, 1]).unwrap()).unwrap();
        assert_eq!(k0_hom(&k, &k).unwrap().rank, 1);
        assert_eq!(k0_hom(&qi, &qi).unwrap().rank, 2);
        assert_eq!(k0_hom(&k, &qi).unwrap().factor_degrees, [2]);
    }
}
