use alloc::vec::Vec;

use num_traits::Zero;

use super::FinAlgebra;
use crate::coeffs::{homology, ChainComplex, HomologyReport, Matrix, Scalar, MAX_COLS};
use crate::error::{invalid, Error, Result};

/// Sparse structure constants: `products[i * n + j]` lists `(k, c_ijk)`.
fn sparse_products(a: &FinAlgebra) -> Vec<Vec<(usize, Scalar)>> {
    let n = a.dim();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(
                (0..n)
                    .filter(|&k| !a.structure(i, j, k).is_zero())
                    .map(|k| (k, a.structure(i, j, k).clone()))
                    .collect(),
            );
        }
    }
    out
}

/// Un-normalized Hochschild complex in degrees `0..=m`, degree `n` being
/// `a^{⊗(n+1)}` with the first tensor factor most significant in the index.
pub fn hochschild_complex(a: &FinAlgebra, m: usize) -> Result<ChainComplex> {
    if m < 1 {
        return Err(invalid!("truncation must be at least 1"));
    }
    let d = a.dim();
    let top = d
        .checked_pow(m as u32 + 1)
        .filter(|&t| t <= MAX_COLS)
        .ok_or_else(|| Error::SizeGuard {
            what: alloc::format!("Hochschild degree {m}"),
            needed: d.saturating_pow(m as u32 + 1),
            cap: MAX_COLS,
        })?;
    let _ = top;
    let r = a.base();
    let prod = sparse_products(a);
    let ranks: Vec<usize> = (0..=m).map(|n| d.pow(n as u32 + 1)).collect();
    let mut diffs = Vec::with_capacity(m + 1);
    diffs.push(Matrix::zeros(r, 0, d)?);
    let minus = |x: &Scalar| r.neg(x);
    for n in 1..=m {
        let mut dm = Matrix::zeros(r, ranks[n - 1], ranks[n])?;
        let mut digits = alloc::vec![0usize; n + 1];
        for col in 0..ranks[n] {
            let mut c = col;
            for slot in digits.iter_mut().rev() {
                *slot = c % d;
                c /= d;
            }
            let encode = |ds: &[usize]| ds.iter().fold(0usize, |acc, &x| acc * d + x);
            let mut shorter = alloc::vec![0usize; n];
            for i in 0..n {
                let sign_neg = i % 2 == 1;
                for (k, cst) in &prod[digits[i] * d + digits[i + 1]] {
                    shorter[..i].copy_from_slice(&digits[..i]);
                    shorter[i] = *k;
                    shorter[i + 1..].copy_from_slice(&digits[i + 2..]);
                    let v = if sign_neg { minus(cst) } else { cst.clone() };
                    dm.add_to(encode(&shorter), col, &v);
                }
            }
            // cyclic term (-1)^n a_n a_0 ⊗ a_1 ⊗ … ⊗ a_(n-1)
            for (k, cst) in &prod[digits[n] * d + digits[0]] {
                shorter[0] = *k;
                shorter[1..].copy_from_slice(&digits[1..n]);
                let v = if n % 2 == 1 { minus(cst) } else { cst.clone() };
                dm.add_to(encode(&shorter), col, &v);
            }
        }
        diffs.push(dm);
    }
    ChainComplex::new(r, 0, ranks, diffs)
}

/// Homology of the truncated complex; only degrees below `m` are trusted.
pub fn hochschild_homology(a: &FinAlgebra, n: usize, m: usize) -> Result<HomologyReport> {
    if n >= m {
        return Err(Error::DegreeOutOfRange {
            degree: n as i64,
            lo: 0,
            hi: m as i64 - 1,
        });
    }
    homology(&hochschild_complex(a, m)?, n as i64)
}

#[cfg(test)]
mod tests {
    use super::super::poly::Poly;
    use super::super::{etale_algebra, hh0_commutator_oracle, EtaleSpec};
    use super::*;
    use crate::coeffs::CoeffRing;

    #[test]
    fn ground_field() {
        let k = FinAlgebra::base_field(CoeffRing::Rationals).unwrap();
        let c = hochschild_complex(&k, 4).unwrap();
        assert!(c.ranks().iter().all(|&r| r == 1));
        for n in 1..=4 {
            let expect = if n % 2 == 0 { 1 } else { 0 };
            assert_eq!(c.differential(n).get(0, 0), &Scalar::from_integer(expect.into()));
        }
        assert_eq!(hochschild_homology(&k, 0, 3).unwrap().free_rank, 1);
        assert_eq!(hochschild_homology(&k, 1, 3).unwrap().free_rank, 0);
    }

    #[test]
    fn dual_numbers_have_one_form() {
        let q = CoeffRing::Rationals;
        let a = FinAlgebra::quotient(&Poly::from_i64(q, &[0, 0, 1]).unwrap()).unwrap();
        assert_eq!(hochschild_homology(&a, 1, 2).unwrap().free_rank, 1);
    }

    #[test]
    fn boundary_degree_is_rejected() {
        let k = FinAlgebra::base_field(CoeffRing::Rationals).unwrap();
        assert!(matches!(hochschild_homology(&k, 3, 3), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn matrix_algebra_hh0_matches_oracle() {
        let m2 = FinAlgebra::matrix_algebra(CoeffRing::Rationals, 2).unwrap();
        assert_eq!(hochschild_homology(&m2, 0, 1).unwrap().free_rank, hh0_commutator_oracle(&m2));
    }

    #[test]
    fn size_guard() {
        let a = etale_algebra(&EtaleSpec::from_i64(CoeffRing::Rationals, &[&[-2, 0, 0, 1]]).unwrap()).unwrap();
        assert!(matches!(hochschild_complex(&a, 9), Err(Error::SizeGuard { .. })));
    }
}
