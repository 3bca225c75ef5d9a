use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::ring::{CoeffRing, Scalar};
use crate::error::{invalid, shape, Error, Result};

/// Bounded, homologically indexed chain complex of free modules.
///
/// `differential(n)` maps degree `n` to degree `n - 1` and has shape
/// `rank(n - 1) x rank(n)`. Construction verifies `d∘d = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: CoeffRing,
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub degree: i64,
    pub free_rank: usize,
    /// Invariant factors greater than one; always empty over a field.
    pub torsion: Vec<BigInt>,
}

impl ChainComplex {
    /// `diffs[k]` is the differential out of degree `lo + k`.
    pub fn new(ring: CoeffRing, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(invalid!("a chain complex needs at least one degree"));
        }
        if diffs.len() != ranks.len() {
            return Err(shape!("{} differentials for {} degrees", diffs.len(), ranks.len()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::RingMismatch(format!("differential over {}", d.ring())));
            }
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            if d.rows() != below || d.cols() != ranks[k] {
                return Err(shape!(
                    "d_{} is {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    below,
                    ranks[k]
                ));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k])?.is_zero() {
                return Err(invalid!("d∘d != 0 at degree {}", lo + k as i64));
            }
        }
        Ok(ChainComplex {
            ring,
            lo,
            ranks,
            diffs,
        })
    }

    /// Complex with the given ranks and all differentials zero.
    pub fn zero_differentials(ring: CoeffRing, lo: i64, ranks: Vec<usize>) -> Result<Self> {
        let diffs = (0..ranks.len())
            .map(|k| Matrix::zeros(ring, if k == 0 { 0 } else { ranks[k - 1] }, ranks[k]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, lo, ranks, diffs)
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Differential out of degree `n`; zero outside the stored range.
    pub fn differential(&self, n: i64) -> Matrix {
        if n < self.lo || n > self.hi() {
            Matrix::zeros(self.ring, self.rank(n - 1), self.rank(n)).expect("small zero matrix")
        } else {
            self.diffs[(n - self.lo) as usize].clone()
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi())
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64)
            .sum()
    }
}

/// Homology at degree `n`.
pub fn homology(c: &ChainComplex, n: i64) -> Result<HomologyReport> {
    if n < c.lo || n > c.hi() {
        return Err(Error::DegreeOutOfRange {
            degree: n,
            lo: c.lo,
            hi: c.hi(),
        });
    }
    let d_out = c.differential(n);
    let d_in = c.differential(n + 1);
    match c.ring {
        CoeffRing::Integers => {
            let snf = d_in.smith_normal_form()?;
            let rank_in = snf.invariant_factors.len();
            let rank_out = d_out.rank();
            let torsion = snf
                .invariant_factors
                .into_iter()
                .filter(|d| !d.is_one())
                .collect();
            Ok(HomologyReport {
                degree: n,
                free_rank: c.rank(n) - rank_out - rank_in,
                torsion,
            })
        }
        _ => {
            let (rank_out, _) = d_out.rank_kernel()?;
            let rank_in = d_in.rank();
            Ok(HomologyReport {
                degree: n,
                free_rank: c.rank(n) - rank_out - rank_in,
                torsion: Vec::new(),
            })
        }
    }
}

/// Tensor product with the Koszul sign `d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy`.
///
/// The basis of degree `n` lists the blocks `C_p ⊗ D_(n-p)` by increasing
/// `p`, each block in row-major order `x * rank(D_q) + y`.
pub fn tensor_complex(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if c.ring != d.ring {
        return Err(Error::RingMismatch(format!("{} vs {}", c.ring, d.ring)));
    }
    let ring = c.ring;
    let lo = c.lo + d.lo;
    let hi = c.hi() + d.hi();
    // offsets[n][p] = start of block C_p ⊗ D_(n-p)
    let block_offset = |n: i64, p: i64| -> usize {
        (c.lo..p).map(|pp| c.rank(pp) * d.rank(n - pp)).sum()
    };
    let mut ranks = Vec::new();
    for n in lo..=hi {
        ranks.push((c.lo..=c.hi()).map(|p| c.rank(p) * d.rank(n - p)).sum());
    }
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let rows = if n == lo { 0 } else { ranks[(n - 1 - lo) as usize] };
        let cols = ranks[(n - lo) as usize];
        let mut m = Matrix::zeros(ring, rows, cols)?;
        if n > lo {
            for p in c.lo..=c.hi() {
                let q = n - p;
                let (rc, rd) = (c.rank(p), d.rank(q));
                if rc == 0 || rd == 0 {
                    continue;
                }
                let src = block_offset(n, p);
                let dc = c.differential(p);
                let dd = d.differential(q);
                let sign = if p.rem_euclid(2) == 0 { ring.one() } else { ring.neg(&ring.one()) };
                // dx ⊗ y lands in block (p-1, q)
                if c.rank(p - 1) > 0 {
                    let tgt = block_offset(n - 1, p - 1);
                    for x in 0..rc {
                        for x2 in 0..c.rank(p - 1) {
                            let a = dc.get(x2, x);
                            if a.is_zero() {
                                continue;
                            }
                            for y in 0..rd {
                                m.add_to(tgt + x2 * rd + y, src + x * rd + y, a);
                            }
                        }
                    }
                }
                // (-1)^p x ⊗ dy lands in block (p, q-1)
                let rd2 = d.rank(q - 1);
                if rd2 > 0 {
                    let tgt = block_offset(n - 1, p);
                    for y in 0..rd {
                        for y2 in 0..rd2 {
                            let b = dd.get(y2, y);
                            if b.is_zero() {
                                continue;
                            }
                            let sb = ring.mul(&sign, b);
                            for x in 0..rc {
                                m.add_to(tgt + x * rd2 + y2, src + x * rd + y, &sb);
                            }
                        }
                    }
                }
            }
        }
        diffs.push(m);
    }
    ChainComplex::new(ring, lo, ranks, diffs)
}

/// Degreewise quotient `full / sub` along a split injective chain map.
///
/// `inclusion[k]` is the component at degree `full.lo() + k` and must have
/// shape `rank_full x rank_sub`. Over ℤ the inclusion must be split
/// (all Smith invariant factors equal to one).
pub fn quotient_by_acyclics(
    full: &ChainComplex,
    sub: &ChainComplex,
    inclusion: &[Matrix],
) -> Result<ChainComplex> {
    let ring = full.ring;
    if sub.ring != ring {
        return Err(Error::RingMismatch(format!("{} vs {}", ring, sub.ring)));
    }
    if inclusion.len() != full.ranks.len() {
        return Err(shape!("{} inclusion components for {} degrees", inclusion.len(), full.ranks.len()));
    }
    // per degree: (projection onto complement coordinates, complement lift)
    let mut proj = Vec::new();
    let mut lift = Vec::new();
    let mut ranks = Vec::new();
    for (k, iota) in inclusion.iter().enumerate() {
        let n = full.lo + k as i64;
        let (rf, rs) = (full.rank(n), sub.rank(n));
        if iota.rows() != rf || iota.cols() != rs {
            return Err(shape!("inclusion at degree {n} is {}x{}", iota.rows(), iota.cols()));
        }
        // chain map check: d_full ∘ ι_n = ι_(n-1) ∘ d_sub
        if k > 0 {
            let lhs = full.differential(n).mul(iota)?;
            let rhs = inclusion[k - 1].mul(&sub.differential(n))?;
            if lhs != rhs {
                return Err(invalid!("inclusion does not commute with differentials at degree {n}"));
            }
        }
        let (basis, inv) = split_basis(iota)?;
        let complement: Vec<usize> = (rs..rf).collect();
        proj.push(inv.select_rows(&complement));
        lift.push(basis.select_columns(&complement)?);
        ranks.push(rf - rs);
    }
    let mut diffs = Vec::new();
    for k in 0..ranks.len() {
        let n = full.lo + k as i64;
        let d = if k == 0 {
            Matrix::zeros(ring, 0, ranks[0])?
        } else {
            proj[k - 1].mul(&full.differential(n))?.mul(&lift[k])?
        };
        diffs.push(d);
    }
    ChainComplex::new(ring, full.lo, ranks, diffs)
}

/// Returns an invertible `P = [ι | E]` and `P⁻¹`.
fn split_basis(iota: &Matrix) -> Result<(Matrix, Matrix)> {
    let ring = iota.ring();
    let (rf, rs) = (iota.rows(), iota.cols());
    if ring == CoeffRing::Integers {
        let snf = iota.smith_normal_form()?;
        if snf.invariant_factors.len() != rs || snf.invariant_factors.iter().any(|d| !d.is_one()) {
            return Err(invalid!("inclusion is not split injective over Z"));
        }
        // U ι V = [I; 0]  ⇒  ι V = U⁻¹ [I; 0]
        let u_inv = snf.u.inverse()?;
        let head = iota.mul(&snf.v)?;
        let tail: Vec<usize> = (rs..rf).collect();
        let basis = head.hstack(&u_inv.select_columns(&tail)?)?;
        let inv = basis.inverse()?;
        return Ok((basis, inv));
    }
    if iota.rank() != rs {
        return Err(invalid!("inclusion is not injective"));
    }
    let mut basis = iota.clone();
    for e in 0..rf {
        if basis.cols() == rf {
            break;
        }
        let mut unit = Matrix::zeros(ring, rf, 1)?;
        unit.set(e, 0, Scalar::one());
        let candidate = basis.hstack(&unit)?;
        if candidate.rank() == candidate.cols() {
            basis = candidate;
        }
    }
    let inv = basis.inverse()?;
    Ok((basis, inv))
}

impl HomologyReport {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn two_term(ring: CoeffRing, a: i64) -> ChainComplex {
        // 0 -> R --a--> R -> 0 in degrees 1, 0
        ChainComplex::new(
            ring,
            0,
            vec![1, 1],
            vec![
                Matrix::zeros(ring, 0, 1).unwrap(),
                Matrix::from_i64(ring, 1, 1, &[a]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_is_acyclic() {
        for ring in [CoeffRing::Rationals, CoeffRing::PrimeField(3), CoeffRing::Integers] {
            let c = two_term(ring, 1);
            assert!(homology(&c, 0).unwrap().is_zero());
            assert!(homology(&c, 1).unwrap().is_zero());
        }
    }

    #[test]
    fn multiplication_by_two_over_z() {
        let c = two_term(CoeffRing::Integers, 2);
        let h0 = homology(&c, 0).unwrap();
        assert_eq!(h0.free_rank, 0);
        assert_eq!(h0.torsion, vec![BigInt::from(2)]);
        assert!(homology(&c, 1).unwrap().is_zero());
    }

    #[test]
    fn zero_differentials_give_free_homology() {
        let c = ChainComplex::zero_differentials(CoeffRing::Rationals, -1, vec![2, 0, 3]).unwrap();
        for (n, r) in [(-1, 2), (0, 0), (1, 3)] {
            assert_eq!(homology(&c, n).unwrap().free_rank, r);
        }
        assert!(matches!(homology(&c, 2), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn rejects_nonzero_square() {
        let q = CoeffRing::Rationals;
        let r = ChainComplex::new(
            q,
            0,
            vec![1, 1, 1],
            vec![
                Matrix::zeros(q, 0, 1).unwrap(),
                Matrix::from_i64(q, 1, 1, &[1]).unwrap(),
                Matrix::from_i64(q, 1, 1, &[1]).unwrap(),
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn tensor_with_unit() {
        let q = CoeffRing::Rationals;
        let unit = ChainComplex::zero_differentials(q, 0, vec![1]).unwrap();
        let c = two_term(q, 3);
        assert_eq!(tensor_complex(&c, &unit).unwrap(), c);
    }

    #[test]
    fn tensor_ranks_are_binomial_and_acyclic() {
        let q = CoeffRing::Rationals;
        let c = two_term(q, 1);
        let t = tensor_complex(&c, &c).unwrap();
        assert_eq!(t.ranks(), &[1, 2, 1]);
        for n in 0..=2 {
            assert!(homology(&t, n).unwrap().is_zero());
        }
    }

    #[test]
    fn quotient_edge_cases() {
        let q = CoeffRing::Rationals;
        let full = two_term(q, 1);
        let zero = ChainComplex::zero_differentials(q, 0, vec![0, 0]).unwrap();
        let inc0: Vec<Matrix> = (0..2).map(|_| Matrix::zeros(q, 1, 0).unwrap()).collect();
        assert_eq!(quotient_by_acyclics(&full, &zero, &inc0).unwrap(), full);
        let ids: Vec<Matrix> = (0..2).map(|_| Matrix::identity(q, 1).unwrap()).collect();
        let quot = quotient_by_acyclics(&full, &full, &ids).unwrap();
        assert_eq!(quot.ranks(), &[0, 0]);
    }

    #[test]
    fn quotient_rejects_non_chain_map() {
        let q = CoeffRing::Rationals;
        let full = two_term(q, 1);
        // sub = R in degree 1 only, mapped into degree 1: d_full ι != 0
        let sub = ChainComplex::zero_differentials(q, 0, vec![0, 1]).unwrap();
        let inc = vec![Matrix::zeros(q, 1, 0).unwrap(), Matrix::identity(q, 1).unwrap()];
        assert!(quotient_by_acyclics(&full, &sub, &inc).is_err());
    }
}
