//! Finite exact categories of modules over products of prime fields, exact
//! cubes, the normalized cube complex, the tensor pairing and K-oracles.

mod complex;
mod cube;
mod enumerate;
mod oracle;
mod pairing;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::coeffs::ring::is_prime;
use crate::error::{invalid, Error, Result};

pub use crate::coeffs::quotient_by_acyclics;
pub use complex::{
    boundary, cube_complex, cube_complex_with_progress, degenerate_closure_defect, CubeComplexOptions, CubeComplexReport, DegreeCounts,
};
pub use cube::Cube;
pub use enumerate::{enumerate_cubes, enumerate_ses, for_each_cube, CubeIndex, Extender};
pub use oracle::{k_oracle, KOracleReport};
pub use pairing::{chain_boundary, chain_product, cube_pairing, leibniz_defect, pairing_target, unit_cube, Chain};

/// Largest supported dimension cap; morphisms are packed into 16 entries.
pub const MAX_DIM_CAP: usize = 4;

/// Modules of total dimension at most `dim_cap` over `∏ F_p`, one object
/// per isomorphism class, ordered lexicographically by dimension vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCatSpec {
    primes: Vec<u64>,
    dim_cap: usize,
    objects: Vec<Vec<u8>>,
    lookup: BTreeMap<Vec<u8>, u16>,
}

/// Block-diagonal morphism, one block per factor, packed row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor {
    pub src: u16,
    pub tgt: u16,
    pub e: [u8; 16],
}

impl ExactCatSpec {
    pub fn new(primes: Vec<u64>, dim_cap: usize) -> Result<Self> {
        if primes.is_empty() || primes.len() > 4 {
            return Err(invalid!("between one and four field factors are supported"));
        }
        for &p in &primes {
            if !is_prime(p) || p > 251 {
                return Err(Error::Unsupported(format!("factor F_{p}: only primes below 256")));
            }
        }
        if dim_cap == 0 || dim_cap > MAX_DIM_CAP {
            return Err(Error::Unsupported(format!("dimension cap {dim_cap} outside 1..={MAX_DIM_CAP}")));
        }
        let f = primes.len();
        let side = dim_cap + 1;
        let mut objects: Vec<Vec<u8>> = (0..side.pow(f as u32))
            .map(|code| (0..f).map(|k| ((code / side.pow(k as u32)) % side) as u8).collect::<Vec<u8>>())
            .filter(|d| d.iter().map(|&x| x as usize).sum::<usize>() <= dim_cap)
            .collect();
        objects.sort();
        let lookup = objects.iter().enumerate().map(|(i, d)| (d.clone(), i as u16)).collect();
        Ok(ExactCatSpec {
            primes,
            dim_cap,
            objects,
            lookup,
        })
    }

    /// Parses `f2`, `f3`, `f2xf2`, … as a product of prime fields.
    pub fn parse_base(s: &str, dim_cap: usize) -> Result<Self> {
        let primes = s
            .split(['x', '×', '*'])
            .map(|t| {
                let t = t.trim();
                let digits = t.strip_prefix("fp:").or_else(|| t.strip_prefix('f')).or_else(|| t.strip_prefix('F'));
                digits
                    .and_then(|d| d.trim_start_matches('_').parse::<u64>().ok())
                    .ok_or_else(|| invalid!("bad base factor {t:?}"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(primes, dim_cap)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn factors(&self) -> usize {
        self.primes.len()
    }

    pub fn objects(&self) -> &[Vec<u8>] {
        &self.objects
    }

    pub fn dims(&self, obj: u16) -> &[u8] {
        &self.objects[obj as usize]
    }

    pub fn object(&self, dims: &[u8]) -> Option<u16> {
        self.lookup.get(dims).copied()
    }

    pub fn zero_object(&self) -> u16 {
        0
    }

    pub fn total_dim(&self, obj: u16) -> usize {
        self.dims(obj).iter().map(|&d| d as usize).sum()
    }

    pub fn describe(&self) -> alloc::string::String {
        let parts: Vec<_> = self.primes.iter().map(|p| format!("F_{p}")).collect();
        format!("{} (dim <= {})", parts.join(" x "), self.dim_cap)
    }

    /// Block offsets and shapes `(offset, rows, cols)` of morphisms `a → b`.
    pub(crate) fn blocks(&self, a: u16, b: u16) -> impl Iterator<Item = (usize, usize, usize, u64)> + '_ {
        let (da, db) = (self.dims(a), self.dims(b));
        let mut off = 0;
        (0..self.primes.len()).map(move |f| {
            let (r, c) = (db[f] as usize, da[f] as usize);
            let o = off;
            off += r * c;
            (o, r, c, self.primes[f])
        })
    }

    pub fn zero_mor(&self, a: u16, b: u16) -> Mor {
        Mor { src: a, tgt: b, e: [0; 16] }
    }

    pub fn identity(&self, a: u16) -> Mor {
        let mut m = self.zero_mor(a, a);
        for (o, r, _, _) in self.blocks(a, a) {
            for i in 0..r {
                m.e[o + i * r + i] = 1;
            }
        }
        m
    }

    pub fn is_identity(&self, m: &Mor) -> bool {
        m.src == m.tgt && *m == self.identity(m.src)
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Mor, f: &Mor) -> Mor {
        debug_assert_eq!(g.src, f.tgt);
        let mut out = self.zero_mor(f.src, g.tgt);
        let bf: Vec<_> = self.blocks(f.src, f.tgt).collect();
        let bg: Vec<_> = self.blocks(g.src, g.tgt).collect();
        let bo: Vec<_> = self.blocks(f.src, g.tgt).collect();
        for k in 0..self.primes.len() {
            let (of, _, cf, p) = bf[k];
            let (og, rg, cg, _) = bg[k];
            let oo = bo[k].0;
            for i in 0..rg {
                for j in 0..cf {
                    let mut s = 0u64;
                    for t in 0..cg {
                        s += g.e[og + i * cg + t] as u64 * f.e[of + t * cf + j] as u64;
                    }
                    out.e[oo + i * cf + j] = (s % p) as u8;
                }
            }
        }
        out
    }

    /// Rank of each block.
    pub(crate) fn block_ranks(&self, m: &Mor) -> Vec<usize> {
        self.blocks(m.src, m.tgt)
            .map(|(o, r, c, p)| small_rank(&m.e[o..o + r * c], r, c, p))
            .collect()
    }

    pub fn is_mono(&self, m: &Mor) -> bool {
        self.block_ranks(m).iter().zip(self.dims(m.src)).all(|(&r, &d)| r == d as usize)
    }

    pub fn is_epi(&self, m: &Mor) -> bool {
        self.block_ranks(m).iter().zip(self.dims(m.tgt)).all(|(&r, &d)| r == d as usize)
    }

    /// A left inverse of a mono, `l ∘ m = id`.
    pub(crate) fn left_inverse(&self, m: &Mor) -> Mor {
        let t = self.transpose(m);
        self.transpose(&self.right_inverse(&t))
    }

    /// A section of an epi, `m ∘ s = id`.
    pub(crate) fn right_inverse(&self, m: &Mor) -> Mor {
        let mut out = self.zero_mor(m.tgt, m.src);
        let bm: Vec<_> = self.blocks(m.src, m.tgt).collect();
        let bo: Vec<_> = self.blocks(m.tgt, m.src).collect();
        for k in 0..self.primes.len() {
            let (om, r, c, p) = bm[k];
            let oo = bo[k].0;
            let s = small_right_inverse(&m.e[om..om + r * c], r, c, p);
            out.e[oo..oo + r * c].copy_from_slice(&s);
        }
        out
    }

    pub(crate) fn transpose(&self, m: &Mor) -> Mor {
        let mut out = self.zero_mor(m.tgt, m.src);
        let bm: Vec<_> = self.blocks(m.src, m.tgt).collect();
        let bo: Vec<_> = self.blocks(m.tgt, m.src).collect();
        for k in 0..self.primes.len() {
            let (om, r, c, _) = bm[k];
            let oo = bo[k].0;
            for i in 0..r {
                for j in 0..c {
                    out.e[oo + j * r + i] = m.e[om + i * c + j];
                }
            }
        }
        out
    }
}

/// Rank of a small row-major matrix over F_p.
pub(crate) fn small_rank(e: &[u8], r: usize, c: usize, p: u64) -> usize {
    let mut m: Vec<u64> = e.iter().map(|&x| x as u64).collect();
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| m[i * c + col] != 0) else {
            continue;
        };
        for j in 0..c {
            m.swap(piv * c + j, rank * c + j);
        }
        let inv = pow_mod(m[rank * c + col], p - 2, p);
        for j in 0..c {
            m[rank * c + j] = m[rank * c + j] * inv % p;
        }
        for i in 0..r {
            if i != rank && m[i * c + col] != 0 {
                let f = m[i * c + col];
                for j in 0..c {
                    m[i * c + j] = (m[i * c + j] + (p - f) * m[rank * c + j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Basis of the kernel of a small `r x c` matrix over F_p, as columns of a
/// row-major `c x k` matrix (`k = c - rank`).
pub(crate) fn small_kernel(e: &[u8], r: usize, c: usize, p: u64) -> (Vec<u8>, usize) {
    let mut m: Vec<u64> = e.iter().map(|&x| x as u64).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| m[i * c + col] != 0) else {
            continue;
        };
        for j in 0..c {
            m.swap(piv * c + j, rank * c + j);
        }
        let inv = pow_mod(m[rank * c + col], p - 2, p);
        for j in 0..c {
            m[rank * c + j] = m[rank * c + j] * inv % p;
        }
        for i in 0..r {
            if i != rank && m[i * c + col] != 0 {
                let f = m[i * c + col];
                for j in 0..c {
                    m[i * c + j] = (m[i * c + j] + (p - f) * m[rank * c + j]) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..c).filter(|j| !pivots.contains(j)).collect();
    let k = free.len();
    let mut out = alloc::vec![0u8; c * k];
    for (t, &fcol) in free.iter().enumerate() {
        out[fcol * k + t] = 1;
        for (row, &pcol) in pivots.iter().enumerate() {
            out[pcol * k + t] = ((p - m[row * c + fcol]) % p) as u8;
        }
    }
    (out, k)
}

/// A right inverse (`c x r`) of a full-row-rank `r x c` matrix over F_p.
fn small_right_inverse(e: &[u8], r: usize, c: usize, p: u64) -> Vec<u8> {
    // row-reduce [M | I_r]; pivot columns give the support of the section
    let w = c + r;
    let mut m = alloc::vec![0u64; r * w];
    for i in 0..r {
        for j in 0..c {
            m[i * w + j] = e[i * c + j] as u64;
        }
        m[i * w + c + i] = 1;
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| m[i * w + col] != 0) else {
            continue;
        };
        for j in 0..w {
            m.swap(piv * w + j, rank * w + j);
        }
        let inv = pow_mod(m[rank * w + col], p - 2, p);
        for j in 0..w {
            m[rank * w + j] = m[rank * w + j] * inv % p;
        }
        for i in 0..r {
            if i != rank && m[i * w + col] != 0 {
                let f = m[i * w + col];
                for j in 0..w {
                    m[i * w + j] = (m[i * w + j] + (p - f) * m[rank * w + j]) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    debug_assert_eq!(rank, r, "section of a non-surjective block");
    // E M = R with R having unit pivot columns; S places E's rows at pivots
    let mut s = alloc::vec![0u8; c * r];
    for (row, &col) in pivots.iter().enumerate() {
        for j in 0..r {
            s[col * r + j] = m[row * w + c + j] as u8;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skeleton_objects() {
        let s = ExactCatSpec::new(alloc::vec![2], 2).unwrap();
        assert_eq!(s.objects().len(), 3);
        let s = ExactCatSpec::parse_base("f2xf2", 2).unwrap();
        assert_eq!(s.objects().len(), 6);
        assert_eq!(s.dims(s.zero_object()), &[0, 0]);
        assert!(ExactCatSpec::parse_base("f4", 2).is_err());
    }

    #[test]
    fn sections_and_retractions() {
        let s = ExactCatSpec::new(alloc::vec![3], 3).unwrap();
        let a = s.object(&[1]).unwrap();
        let b = s.object(&[3]).unwrap();
        // mono F_3 -> F_3^3, x -> (2x, x, 0)
        let mut i = s.zero_mor(a, b);
        i.e[..3].copy_from_slice(&[2, 1, 0]);
        assert!(s.is_mono(&i));
        let l = s.left_inverse(&i);
        assert!(s.is_identity(&s.compose(&l, &i)));
        let t = s.transpose(&i);
        assert!(s.is_epi(&t));
        let sec = s.right_inverse(&t);
        assert!(s.is_identity(&s.compose(&t, &sec)));
    }
}
