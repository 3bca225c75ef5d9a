use alloc::vec::Vec;

use super::ExactCatSpec;
use crate::coeffs::CoeffRing;
use crate::error::Result;

/// K₀ and K₁ of a finite product of finite fields, before and after ⊗R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KOracleReport {
    /// Number of simple factors.
    pub k0_rank: usize,
    /// `K₁ = ∏ ℤ/(q_i - 1)`, listed per factor (trivial factors included).
    pub k1_cyclic_orders: Vec<u64>,
    pub k0_tensored_rank: usize,
    /// Rank of `K₁ ⊗ R` over a field `R`; the free part over ℤ (always 0).
    pub k1_tensored_rank: usize,
    /// Nontrivial cyclic orders surviving `⊗ℤ`.
    pub k1_tensored_torsion: Vec<u64>,
}

pub fn k_oracle(spec: &ExactCatSpec, ring: CoeffRing) -> Result<KOracleReport> {
    let orders: Vec<u64> = spec.primes().iter().map(|&q| q - 1).collect();
    let (rank, torsion) = match ring {
        CoeffRing::Rationals => (0, Vec::new()),
        CoeffRing::PrimeField(l) => (orders.iter().filter(|&&o| o % l == 0).count(), Vec::new()),
        CoeffRing::Integers => (0, orders.iter().copied().filter(|&o| o > 1).collect()),
    };
    Ok(KOracleReport {
        k0_rank: spec.factors(),
        k1_cyclic_orders: orders,
        k0_tensored_rank: spec.factors(),
        k1_tensored_rank: rank,
        k1_tensored_torsion: torsion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = ExactCatSpec::new(alloc::vec![2], 1).unwrap();
        let r = k_oracle(&f2, CoeffRing::Rationals).unwrap();
        assert_eq!((r.k0_rank, r.k1_cyclic_orders.as_slice()), (1, &[1u64][..]));
        let f5 = ExactCatSpec::new(alloc::vec![5], 1).unwrap();
        assert_eq!(k_oracle(&f5, CoeffRing::Integers).unwrap().k1_tensored_torsion, [4]);
        assert_eq!(k_oracle(&f5, CoeffRing::PrimeField(2)).unwrap().k1_tensored_rank, 1);
        let f22 = ExactCatSpec::new(alloc::vec![2, 2], 1).unwrap();
        assert_eq!(k_oracle(&f22, CoeffRing::Rationals).unwrap().k0_rank, 2);
    }
}
