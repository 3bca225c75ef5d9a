use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::{CoeffRing, Scalar};
use crate::error::{shape, Error, Result};

/// Dense matrices refuse to grow beyond this many columns.
pub const MAX_COLS: usize = 20_000;

/// Dense row-major matrix over a [`CoeffRing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: CoeffRing,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of [`Matrix::smith_normal_form`]: `u * m * v == diagonal`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub u: Matrix,
    pub v: Matrix,
    pub diagonal: Matrix,
}

fn guard(cols: usize) -> Result<()> {
    if cols > MAX_COLS {
        return Err(Error::SizeGuard {
            what: "dense matrix".to_string(),
            needed: cols,
            cap: MAX_COLS,
        });
    }
    Ok(())
}

impl Matrix {
    pub fn new(ring: CoeffRing, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        guard(cols)?;
        if entries.len() != rows * cols {
            return Err(shape!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            ));
        }
        let entries = entries
            .into_iter()
            .map(|x| ring.normalize(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_i64(ring: CoeffRing, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(ring, rows, cols, entries.iter().map(|&x| ring.from_i64(x)).collect())
    }

    pub fn zeros(ring: CoeffRing, rows: usize, cols: usize) -> Result<Self> {
        guard(cols)?;
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        })
    }

    pub fn identity(ring: CoeffRing, n: usize) -> Result<Self> {
        let mut m = Self::zeros(ring, n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        Ok(m)
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = self.ring.normalize(value).expect("value in ring");
    }

    /// Adds `value` to entry `(r, c)`.
    pub fn add_to(&mut self, r: usize, c: usize, value: &Scalar) {
        let idx = r * self.cols + c;
        self.entries[idx] = self.ring.add(&self.entries[idx], value);
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            ring: self.ring,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        if self.cols != other.rows {
            return Err(shape!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            ));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        if let CoeffRing::PrimeField(_) = self.ring {
            for e in out.entries.iter_mut() {
                *e = self.ring.normalize(core::mem::take(e))?;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(shape!("vector of length {} for {} columns", v.len(), self.cols));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                self.ring.normalize(acc).expect("closed under ring ops")
            })
            .collect())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(shape!("subtracting matrices of different shapes"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|a| self.ring.mul(a, s)).collect();
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Columns `cols` of `self`, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.ring, self.rows, cols.len())?;
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.entries[r * cols.len() + j] = self.get(r, c).clone();
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            entries.extend_from_slice(self.row(r));
        }
        Matrix {
            ring: self.ring,
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(shape!("hstack of {} and {} rows", self.rows, other.rows));
        }
        let cols = self.cols + other.cols;
        let mut out = Matrix::zeros(self.ring, self.rows, cols)?;
        for r in 0..self.rows {
            out.entries[r * cols..r * cols + self.cols].clone_from_slice(self.row(r));
            out.entries[r * cols + self.cols..(r + 1) * cols].clone_from_slice(other.row(r));
        }
        Ok(out)
    }

    /// Reduced row echelon form over a field; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let ring = self.ring;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = ring.inv(self.get(r, c)).expect("nonzero pivot in a field");
            for j in c..self.cols {
                let idx = r * self.cols + j;
                self.entries[idx] = ring.mul(&self.entries[idx], &inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pv = &self.entries[r * self.cols + j];
                    if pv.is_zero() {
                        continue;
                    }
                    let t = ring.mul(&f, pv);
                    let idx = i * self.cols + j;
                    self.entries[idx] = ring.sub(&self.entries[idx], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank and a kernel basis over a field.
    ///
    /// Integer matrices are rejected; use [`Matrix::smith_normal_form`].
    pub fn rank_kernel(&self) -> Result<(usize, Vec<Vec<Scalar>>)> {
        self.ring.require_field()?;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = self.ring.neg(m.get(row, free));
            }
            basis.push(v);
        }
        Ok((pivots.len(), basis))
    }

    /// Rank over the fraction field (ℚ for integer matrices).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        if m.ring == CoeffRing::Integers {
            m.ring = CoeffRing::Rationals;
        }
        m.rref().len()
    }

    /// Inverse of a square matrix; over ℤ only unimodular matrices qualify.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(shape!("inverse of a {}x{} matrix", self.rows, self.cols));
        }
        let n = self.rows;
        let field = if self.ring == CoeffRing::Integers {
            CoeffRing::Rationals
        } else {
            self.ring
        };
        let mut a = self.clone();
        a.ring = field;
        let mut id = Matrix::identity(field, n)?;
        id.ring = field;
        let mut aug = a.hstack(&id)?;
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Invalid("matrix is singular".to_string()));
        }
        let mut out = Matrix::zeros(self.ring, n, n)?;
        for i in 0..n {
            for j in 0..n {
                let x = aug.get(i, n + j).clone();
                out.entries[i * n + j] = self.ring.normalize(x).map_err(|_| {
                    Error::Invalid("matrix is not invertible over the integers".to_string())
                })?;
            }
        }
        Ok(out)
    }

    /// Smith normal form over ℤ with unimodular transforms.
    pub fn smith_normal_form(&self) -> Result<SmithForm> {
        if self.ring != CoeffRing::Integers {
            return Err(Error::NotIntegers(self.ring.descriptor()));
        }
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigInt>> = (0..m)
            .map(|i| self.row(i).iter().map(|x| x.numer().clone()).collect())
            .collect();
        let mut u: Vec<Vec<BigInt>> = identity_int(m);
        let mut v: Vec<Vec<BigInt>> = identity_int(n);
        let mut t = 0;
        while t < m.min(n) {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        u.swap(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..n {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        for row in v.iter_mut() {
                            row.swap(t, j);
                        }
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // divisibility: fold an offending row into the pivot row
                let mut offender = None;
                'scan: for i in t + 1..m {
                    for j in t + 1..n {
                        if !a[i][j].is_multiple_of(&a[t][t]) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        row_axpy(&mut a, t, i, &minus_one);
                        row_axpy(&mut u, t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -core::mem::take(x);
                }
                for x in u[t].iter_mut() {
                    *x = -core::mem::take(x);
                }
            }
            t += 1;
        }
        let invariant_factors = (0..m.min(n))
            .map(|i| a[i][i].clone())
            .filter(|d| !d.is_zero())
            .collect();
        let to_matrix = |rows: Vec<Vec<BigInt>>, r: usize, c: usize| -> Result<Matrix> {
            Matrix::new(
                CoeffRing::Integers,
                r,
                c,
                rows.into_iter().flatten().map(Scalar::from_integer).collect(),
            )
        };
        Ok(SmithForm {
            invariant_factors,
            u: to_matrix(u, m, m)?,
            v: to_matrix(v, n, n)?,
            diagonal: to_matrix(a, m, n)?,
        })
    }
}

fn identity_int(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// row[target] -= q * row[source]
fn row_axpy(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = a[source].clone();
    for (x, s) in a[target].iter_mut().zip(src) {
        *x -= q * s;
    }
}

/// col[target] -= q * col[source]
fn col_axpy(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoeffRing {
        CoeffRing::Rationals
    }

    #[test]
    fn identity_has_full_rank() {
        let (rank, ker) = Matrix::identity(q(), 2).unwrap().rank_kernel().unwrap();
        assert_eq!(rank, 2);
        assert!(ker.is_empty());
    }

    #[test]
    fn zero_map_over_f2() {
        let f2 = CoeffRing::PrimeField(2);
        let (rank, ker) = Matrix::zeros(f2, 3, 4).unwrap().rank_kernel().unwrap();
        assert_eq!(rank, 0);
        assert_eq!(ker.len(), 4);
    }

    #[test]
    fn all_ones_over_f2() {
        let f2 = CoeffRing::PrimeField(2);
        let m = Matrix::from_i64(f2, 2, 2, &[1, 1, 1, 1]).unwrap();
        let (rank, ker) = m.rank_kernel().unwrap();
        assert_eq!(rank, 1);
        assert_eq!(ker, vec![vec![f2.one(), f2.one()]]);
        assert!(m.mul_vec(&ker[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn rank_kernel_rejects_integers() {
        let m = Matrix::identity(CoeffRing::Integers, 2).unwrap();
        assert!(matches!(m.rank_kernel(), Err(Error::NotAField(_))));
    }

    #[test]
    fn smith_of_diag_2_3() {
        let m = Matrix::from_i64(CoeffRing::Integers, 2, 2, &[2, 0, 0, 3]).unwrap();
        let s = m.smith_normal_form().unwrap();
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.diagonal);
        assert!(s.u.inverse().is_ok() && s.v.inverse().is_ok());
    }

    #[test]
    fn smith_of_identity_and_zero() {
        let id = Matrix::identity(CoeffRing::Integers, 3).unwrap();
        assert_eq!(
            id.smith_normal_form().unwrap().invariant_factors,
            vec![BigInt::one(); 3]
        );
        let z = Matrix::zeros(CoeffRing::Integers, 2, 3).unwrap();
        assert!(z.smith_normal_form().unwrap().invariant_factors.is_empty());
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            Matrix::zeros(q(), 1, MAX_COLS + 1),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(q(), 2, 2, &[2, 1, 1, 1]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(q(), 2).unwrap());
        let z = Matrix::from_i64(CoeffRing::Integers, 1, 1, &[2]).unwrap();
        assert!(z.inverse().is_err());
    }
}
