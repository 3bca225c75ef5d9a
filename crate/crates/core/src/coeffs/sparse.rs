//! Streaming column rank for very large, very sparse boundary matrices.
//!
//! Columns are pushed one at a time and reduced against stored pivots keyed
//! by their largest row index. Over F_p entries are residues; over ℚ the
//! reduction is fraction-free in `i128` with every stored vector divided by
//! its content, and an overflow is reported instead of wrapping.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::ring::CoeffRing;
use crate::error::{Error, Result};

type Entry = (u32, i128);

#[derive(Debug, Clone)]
pub struct SparseRank {
    modulus: Option<i128>,
    pivots: Vec<Option<Vec<Entry>>>,
    rank: usize,
}

impl SparseRank {
    /// `rows` is the length of every pushed column. ℤ is treated as ℚ.
    pub fn new(ring: CoeffRing, rows: usize) -> Self {
        let modulus = match ring {
            CoeffRing::PrimeField(p) => Some(p as i128),
            _ => None,
        };
        SparseRank {
            modulus,
            pivots: vec![None; rows],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a column given as `(row, coefficient)` pairs; repeated rows are
    /// summed. Returns whether the rank grew.
    pub fn push(&mut self, column: &[(usize, i64)]) -> Result<bool> {
        let mut v: Vec<Entry> = Vec::with_capacity(column.len());
        for &(r, c) in column {
            if r >= self.pivots.len() {
                return Err(Error::Shape(alloc::format!(
                    "row {r} outside a column of length {}",
                    self.pivots.len()
                )));
            }
            v.push((r as u32, c as i128));
        }
        v.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<Entry> = Vec::with_capacity(v.len());
        for (r, c) in v {
            match merged.last_mut() {
                Some(last) if last.0 == r => last.1 += c,
                _ => merged.push((r, c)),
            }
        }
        let mut v = self.clean(merged);
        while let Some(&(top, _)) = v.last() {
            match &self.pivots[top as usize] {
                Some(p) => v = self.eliminate(&v, p)?,
                None => {
                    self.pivots[top as usize] = Some(v);
                    self.rank += 1;
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn clean(&self, v: Vec<Entry>) -> Vec<Entry> {
        match self.modulus {
            Some(p) => v
                .into_iter()
                .map(|(r, c)| (r, c.rem_euclid(p)))
                .filter(|e| e.1 != 0)
                .collect(),
            None => {
                let mut v: Vec<Entry> = v.into_iter().filter(|e| e.1 != 0).collect();
                let g = v.iter().fold(0i128, |g, e| g.gcd(&e.1));
                if g > 1 {
                    for e in &mut v {
                        e.1 /= g;
                    }
                }
                v
            }
        }
    }

    /// Cancels the leading entry of `v` using pivot vector `p`.
    fn eliminate(&self, v: &[Entry], p: &[Entry]) -> Result<Vec<Entry>> {
        let a = v.last().expect("nonempty").1;
        let b = p.last().expect("nonempty").1;
        // result = sv * v - sp * p
        let (sv, sp) = match self.modulus {
            Some(m) => (1i128, a * mod_inv(b, m) % m),
            None => {
                let g = a.gcd(&b);
                (b / g, a / g)
            }
        };
        let ovf = Error::Overflow("sparse rank elimination");
        let mut out = Vec::with_capacity(v.len() + p.len());
        let (mut i, mut j) = (0, 0);
        while i < v.len() || j < p.len() {
            let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
            let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
            let (r, c) = if take_v {
                i += 1;
                (v[i - 1].0, v[i - 1].1.checked_mul(sv).ok_or(ovf.clone())?)
            } else if take_p {
                j += 1;
                (p[j - 1].0, p[j - 1].1.checked_mul(sp).ok_or(ovf.clone())?.checked_neg().ok_or(ovf.clone())?)
            } else {
                let x = v[i].1.checked_mul(sv).ok_or(ovf.clone())?;
                let y = p[j].1.checked_mul(sp).ok_or(ovf.clone())?;
                let r = v[i].0;
                i += 1;
                j += 1;
                (r, x.checked_sub(y).ok_or(ovf.clone())?)
            };
            out.push((r, c));
        }
        let out = self.clean(out);
        debug_assert!(out.last().is_none_or(|e| e.0 < v.last().unwrap().0));
        Ok(out)
    }
}

fn mod_inv(a: i128, m: i128) -> i128 {
    let e = a.rem_euclid(m).extended_gcd(&m);
    e.x.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Matrix;

    #[test]
    fn matches_dense_rank() {
        let cols: [&[(usize, i64)]; 4] = [
            &[(0, 1), (1, 1)],
            &[(1, 1), (2, 1)],
            &[(0, 1), (2, -1)],
            &[(0, 2), (1, 3), (2, 1)],
        ];
        let mut dense = [0i64; 12];
        for (c, col) in cols.iter().enumerate() {
            for &(r, x) in col.iter() {
                dense[r * 4 + c] += x;
            }
        }
        for ring in [CoeffRing::Rationals, CoeffRing::PrimeField(2), CoeffRing::PrimeField(3)] {
            let mut s = SparseRank::new(ring, 3);
            for col in cols {
                s.push(col).unwrap();
            }
            let m = Matrix::from_i64(ring, 3, 4, &dense).unwrap();
            assert_eq!(s.rank(), m.rank(), "{ring}");
        }
    }

    #[test]
    fn repeated_rows_are_summed() {
        let mut s = SparseRank::new(CoeffRing::Rationals, 2);
        assert!(!s.push(&[(0, 1), (0, -1)]).unwrap());
        assert!(s.push(&[(1, 2), (1, 2)]).unwrap());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn rejects_row_out_of_range() {
        let mut s = SparseRank::new(CoeffRing::Rationals, 2);
        assert!(s.push(&[(2, 1)]).is_err());
    }
}
