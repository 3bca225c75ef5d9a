//! Finite-dimensional associative unital algebras over a prime field or ℚ,
//! étale algebras, and Hochschild homology through the bar complex.

mod etale;
mod factor;
mod hochschild;
pub mod poly;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::coeffs::{CoeffRing, Matrix, Scalar};
use crate::error::{invalid, shape, Error, Result};

pub use etale::{etale_algebra, factor_degrees, is_etale, EtaleSpec};
pub use hochschild::{hochschild_complex, hochschild_homology};
use poly::Poly;

/// Algebra given by structure constants `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAlgebra {
    base: CoeffRing,
    dim: usize,
    labels: Vec<String>,
    sc: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl FinAlgebra {
    /// Validates the shape, associativity and the unit laws.
    pub fn new(base: CoeffRing, labels: Vec<String>, sc: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Self> {
        base.require_field()?;
        let dim = labels.len();
        if dim == 0 {
            return Err(invalid!("algebras have positive dimension"));
        }
        if sc.len() != dim * dim * dim || unit.len() != dim {
            return Err(shape!("structure constants for dimension {dim}"));
        }
        let norm = |v: Vec<Scalar>| v.into_iter().map(|x| base.normalize(x)).collect::<Result<Vec<_>>>();
        let a = FinAlgebra {
            base,
            dim,
            labels,
            sc: norm(sc)?,
            unit: norm(unit)?,
        };
        if let Some((i, j, l)) = a.associativity_witness() {
            return Err(invalid!("not associative at (e{i} e{j}) e{l}"));
        }
        for i in 0..dim {
            let e = a.basis(i);
            if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
                return Err(invalid!("unit law fails on e{i}"));
            }
        }
        Ok(a)
    }

    pub fn from_i64(base: CoeffRing, labels: Vec<String>, sc: &[i64], unit: &[i64]) -> Result<Self> {
        let sc = sc.iter().map(|&x| base.from_i64(x)).collect();
        let unit = unit.iter().map(|&x| base.from_i64(x)).collect();
        Self::new(base, labels, sc, unit)
    }

    pub fn base_field(base: CoeffRing) -> Result<Self> {
        Self::new(base, vec![String::from("1")], vec![Scalar::one()], vec![Scalar::one()])
    }

    /// `k[x]/(f)` for monic `f`, basis `1, x, …, x^(n-1)`. No separability
    /// requirement.
    pub fn quotient(f: &Poly) -> Result<Self> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = f.degree().unwrap();
        if n == 0 {
            return Err(invalid!("quotient by a unit is the zero ring"));
        }
        let ring = f.ring();
        let mut sc = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let r = Poly::monomial(ring, i + j).rem(f)?;
                for k in 0..n {
                    sc[(i * n + j) * n + k] = r.coeff(k);
                }
            }
        }
        let mut unit = vec![Scalar::zero(); n];
        unit[0] = Scalar::one();
        let labels = (0..n).map(|i| format!("x^{i}")).collect();
        Self::new(ring, labels, sc, unit)
    }

    /// Full matrix algebra with basis `E_rc`, index `r * n + c`.
    pub fn matrix_algebra(base: CoeffRing, n: usize) -> Result<Self> {
        Self::matrix_units(base, n, |_, _| true)
    }

    /// Upper-triangular `n x n` matrices.
    pub fn upper_triangular(base: CoeffRing, n: usize) -> Result<Self> {
        Self::matrix_units(base, n, |r, c| r <= c)
    }

    fn matrix_units(base: CoeffRing, n: usize, keep: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let units: Vec<(usize, usize)> = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|&(r, c)| keep(r, c))
            .collect();
        let d = units.len();
        let pos = |rc: (usize, usize)| units.iter().position(|&u| u == rc);
        let mut sc = vec![Scalar::zero(); d * d * d];
        for (i, &(r1, c1)) in units.iter().enumerate() {
            for (j, &(r2, c2)) in units.iter().enumerate() {
                if c1 == r2 {
                    let k = pos((r1, c2)).expect("closed under products");
                    sc[(i * d + j) * d + k] = Scalar::one();
                }
            }
        }
        let unit = units
            .iter()
            .map(|&(r, c)| if r == c { Scalar::one() } else { Scalar::zero() })
            .collect();
        let labels = units.iter().map(|(r, c)| format!("E{r}{c}")).collect();
        Self::new(base, labels, sc, unit)
    }

    /// Direct product of algebras over a common base.
    pub fn product(parts: &[FinAlgebra]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| invalid!("empty product"))?;
        let base = first.base;
        let dim: usize = parts.iter().map(|a| a.dim).sum();
        let mut sc = vec![Scalar::zero(); dim * dim * dim];
        let mut unit = Vec::with_capacity(dim);
        let mut labels = Vec::with_capacity(dim);
        let mut off = 0;
        for (f, a) in parts.iter().enumerate() {
            if a.base != base {
                return Err(Error::RingMismatch(format!("{} vs {}", a.base, base)));
            }
            for i in 0..a.dim {
                for j in 0..a.dim {
                    for k in 0..a.dim {
                        sc[((off + i) * dim + off + j) * dim + off + k] = a.structure(i, j, k).clone();
                    }
                }
            }
            unit.extend(a.unit.iter().cloned());
            labels.extend(a.labels.iter().map(|l| format!("{l}#{f}")));
            off += a.dim;
        }
        Self::new(base, labels, sc, unit)
    }

    pub fn base(&self) -> CoeffRing {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn structure(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.sc[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constants(&self) -> &[Scalar] {
        &self.sc
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let r = self.base;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = r.mul(xi, yj);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.sc[(i * n + j) * n + k];
                    if !c.is_zero() {
                        *o = r.add(o, &r.mul(&s, c));
                    }
                }
            }
        }
        out
    }

    /// Left multiplication by `x` as a `dim x dim` matrix.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.base, self.dim, self.dim).expect("dimension below cap");
        for j in 0..self.dim {
            let col = self.mul(x, &self.basis(j));
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for l in 0..n {
                    let el = self.basis(l);
                    let left = self.mul(&ij, &el);
                    let right = self.mul(&self.basis(i), &self.mul(&self.basis(j), &el));
                    if left != right {
                        return Some((i, j, l));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.structure(i, j, k) == self.structure(j, i, k))))
    }
}

/// Algebra homomorphism given by a `target.dim x source.dim` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    source: FinAlgebra,
    target: FinAlgebra,
    matrix: Matrix,
}

impl AlgebraMap {
    /// Validates shape, unitality and multiplicativity on basis pairs.
    pub fn new(source: FinAlgebra, target: FinAlgebra, matrix: Matrix) -> Result<Self> {
        if source.base != target.base || matrix.ring() != source.base {
            return Err(Error::RingMismatch(format!("{} vs {}", source.base, target.base)));
        }
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(shape!("algebra map is {}x{}", matrix.rows(), matrix.cols()));
        }
        if matrix.mul_vec(&source.unit)? != target.unit {
            return Err(invalid!("map is not unital"));
        }
        for i in 0..source.dim {
            let fi = matrix.column(i);
            for j in 0..source.dim {
                let fj = matrix.column(j);
                let lhs = matrix.mul_vec(&source.mul(&source.basis(i), &source.basis(j)))?;
                if lhs != target.mul(&fi, &fj) {
                    return Err(invalid!("map is not multiplicative on (e{i}, e{j})"));
                }
            }
        }
        Ok(AlgebraMap { source, target, matrix })
    }

    /// The unit map `k → a`.
    pub fn unit_of(a: &FinAlgebra) -> Result<Self> {
        let k = FinAlgebra::base_field(a.base)?;
        let m = Matrix::new(a.base, a.dim, 1, a.unit.clone())?;
        Self::new(k, a.clone(), m)
    }

    pub fn source(&self) -> &FinAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FinAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn compose(&self, after: &AlgebraMap) -> Result<AlgebraMap> {
        if after.source != self.target {
            return Err(invalid!("maps are not composable"));
        }
        AlgebraMap::new(self.source.clone(), after.target.clone(), after.matrix.mul(&self.matrix)?)
    }
}

/// `a ⊗ b` with basis `e_i ⊗ f_j` at index `i * b.dim + j`.
pub fn tensor_algebra(a: &FinAlgebra, b: &FinAlgebra) -> Result<FinAlgebra> {
    if a.base != b.base {
        return Err(Error::RingMismatch(format!("{} vs {}", a.base, b.base)));
    }
    let r = a.base;
    let (da, db) = (a.dim, b.dim);
    let n = da * db;
    let mut sc = vec![Scalar::zero(); n * n * n];
    for i in 0..da {
        for i2 in 0..da {
            for k in 0..da {
                let x = a.structure(i, i2, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..db {
                    for j2 in 0..db {
                        for l in 0..db {
                            let y = b.structure(j, j2, l);
                            if !y.is_zero() {
                                sc[((i * db + j) * n + i2 * db + j2) * n + k * db + l] = r.mul(x, y);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut unit = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..da {
        for j in 0..db {
            unit.push(r.mul(&a.unit[i], &b.unit[j]));
            labels.push(format!("{}⊗{}", a.labels[i], b.labels[j]));
        }
    }
    FinAlgebra::new(r, labels, sc, unit)
}

/// Same basis, structure constants transposed in the first two indices.
pub fn opposite_algebra(a: &FinAlgebra) -> FinAlgebra {
    let n = a.dim;
    let mut sc = a.sc.clone();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                sc[(i * n + j) * n + k] = a.structure(j, i, k).clone();
            }
        }
    }
    FinAlgebra {
        sc,
        ..a.clone()
    }
}

/// `dim a − rank span{e_i e_j − e_j e_i}`.
pub fn hh0_commutator_oracle(a: &FinAlgebra) -> usize {
    let n = a.dim;
    let r = a.base;
    let mut entries = vec![Scalar::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            for k in 0..n {
                entries[k * n * n + col] = r.sub(a.structure(i, j, k), a.structure(j, i, k));
            }
        }
    }
    let m = Matrix::new(r, n, n * n, entries).expect("commutator span below the column cap");
    n - m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoeffRing {
        CoeffRing::Rationals
    }

    #[test]
    fn matrix_algebra_commutators() {
        let m2 = FinAlgebra::matrix_algebra(q(), 2).unwrap();
        assert_eq!(m2.dim(), 4);
        assert_eq!(hh0_commutator_oracle(&m2), 1);
        assert!(!m2.is_commutative());
    }

    #[test]
    fn opposite_of_upper_triangular() {
        let t = FinAlgebra::upper_triangular(q(), 2).unwrap();
        let op = opposite_algebra(&t);
        assert_ne!(op, t);
        assert_eq!(opposite_algebra(&op), t);
        // the opposite is still a valid algebra
        FinAlgebra::new(q(), op.labels.clone(), op.sc.clone(), op.unit.clone()).unwrap();
    }

    #[test]
    fn tensor_with_base_field() {
        let a = FinAlgebra::upper_triangular(q(), 2).unwrap();
        let k = FinAlgebra::base_field(q()).unwrap();
        let t = tensor_algebra(&a, &k).unwrap();
        assert_eq!(t.structure_constants(), a.structure_constants());
        assert_eq!(t.unit(), a.unit());
    }

    #[test]
    fn rejects_wrong_unit() {
        let bad = FinAlgebra::from_i64(
            q(),
            vec!["1".into(), "x".into()],
            &[1, 0, 0, 1, 0, 1, 1, 1],
            &[0, 1],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn unit_map_and_composition() {
        let f = Poly::from_i64(q(), &[1, 0, 1]).unwrap();
        let a = FinAlgebra::quotient(&f).unwrap();
        let u = AlgebraMap::unit_of(&a).unwrap();
        let k = FinAlgebra::base_field(q()).unwrap();
        let id_k = AlgebraMap::new(k.clone(), k, Matrix::identity(q(), 1).unwrap()).unwrap();
        assert_eq!(id_k.compose(&u).unwrap(), u);
        // conjugation x -> -x is an automorphism of Q[x]/(x^2+1)
        let conj = Matrix::from_i64(q(), 2, 2, &[1, 0, 0, -1]).unwrap();
        assert!(AlgebraMap::new(a.clone(), a.clone(), conj).is_ok());
        let bad = Matrix::from_i64(q(), 2, 2, &[1, 0, 0, 2]).unwrap();
        assert!(AlgebraMap::new(a.clone(), a, bad).is_err());
    }
}
