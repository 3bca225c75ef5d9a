//! Factor degrees of integer polynomials: factorization modulo a small
//! prime, Hensel lifting and recombination of the lifted factors.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::Poly;
use crate::coeffs::ring::is_prime;
use crate::coeffs::CoeffRing;
use crate::error::{Error, Result};

type IntPoly = Vec<BigInt>;

fn trim(mut f: IntPoly) -> IntPoly {
    while f.len() > 1 && f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of `f` by the monic `g`, if `g` divides `f` over ℤ.
fn int_div_monic(f: &[BigInt], g: &[BigInt]) -> Option<IntPoly> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for top in (dg..f.len()).rev() {
        let c = r[top].clone();
        if !c.is_zero() {
            for (k, gk) in g.iter().enumerate() {
                r[top - dg + k] -= &c * gk;
            }
        }
        q[top - dg] = c;
    }
    r.iter().all(Zero::is_zero).then(|| trim(q))
}

/// Symmetric residues modulo `m`.
fn symmetric(f: &[BigInt], m: &BigInt) -> IntPoly {
    let half: BigInt = m >> 1;
    f.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn to_fp(f: &[BigInt], ring: CoeffRing) -> Result<Poly> {
    Poly::new(ring, f.iter().map(|c| ring.from_int(c.clone())).collect())
}

fn from_fp(f: &Poly) -> IntPoly {
    f.coeffs().iter().map(|c| c.to_integer()).collect()
}

/// `(s, t)` with `s·a + t·b = 1` for coprime `a`, `b` over F_p.
fn bezout(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    let ring = a.ring();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(ring), Poly::zero(ring));
    let (mut t0, mut t1) = (Poly::zero(ring), Poly::one(ring));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        (r0, r1, s0, s1, t0, t1) = (r1, r, s1, s, t1, t);
    }
    let inv = Poly::new(ring, vec![ring.inv(&r0.coeff(0)).ok_or(Error::Overflow("bezout"))?])?;
    Ok((s0.mul(&inv), t0.mul(&inv)))
}

/// Splits a product of distinct monic irreducibles of common degree `d`
/// over F_p, p odd.
fn equal_degree_split(g: &Poly, d: usize, out: &mut Vec<Poly>, seed: &mut u64) -> Result<()> {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return Ok(());
    }
    if n == d {
        out.push(g.clone());
        return Ok(());
    }
    let ring = g.ring();
    let p = ring.characteristic();
    let e: BigInt = (BigInt::from(p).pow(d as u32) - 1u32) >> 1;
    loop {
        let coeffs = (0..n)
            .map(|_| {
                *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ring.from_i64(((*seed >> 33) % p) as i64)
            })
            .collect();
        let a = Poly::new(ring, coeffs)?;
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = a.pow_mod(e.clone(), g)?.sub(&Poly::one(ring));
        let h = g.gcd(&b);
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < n {
            let rest = g.div_rem(&h)?.0;
            equal_degree_split(&h, d, out, seed)?;
            return equal_degree_split(&rest, d, out, seed);
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p.
fn factor_mod_p(f: &Poly) -> Result<Vec<Poly>> {
    let ring = f.ring();
    let p = ring.characteristic();
    let x = Poly::monomial(ring, 1);
    let mut rest = f.clone();
    let mut frob = x.clone();
    let mut out = Vec::new();
    let mut seed = 0x2545_f491_4f6c_dd1du64;
    let mut k = 0;
    while rest.degree().unwrap_or(0) > 0 {
        k += 1;
        if 2 * k > rest.degree().unwrap() {
            out.push(rest.clone());
            break;
        }
        frob = frob.pow_mod(BigInt::from(p), &rest)?;
        let g = rest.gcd(&frob.sub(&x));
        if g.degree().unwrap_or(0) > 0 {
            equal_degree_split(&g, k, &mut out, &mut seed)?;
            rest = rest.div_rem(&g)?.0;
            frob = frob.rem(&rest)?;
        }
    }
    Ok(out)
}

/// Lifts `f ≡ g·h (mod p)` with monic `g`, `h` to a factorization modulo
/// `modulus = p^k`; `f` only needs to be known modulo `modulus`.
fn hensel_pair(f: &[BigInt], g: &Poly, h: &Poly, p: u64, modulus: &BigInt) -> Result<(IntPoly, IntPoly)> {
    let ring = g.ring();
    let (s, t) = bezout(g, h)?;
    let (mut gl, mut hl) = (from_fp(g), from_fp(h));
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    while &m < modulus {
        let gh = int_mul(&gl, &hl);
        let e: IntPoly = (0..f.len())
            .map(|i| {
                let d = &f[i] - gh.get(i).cloned().unwrap_or_default();
                d.mod_floor(modulus) / &m
            })
            .collect();
        let e = to_fp(&e, ring)?;
        let (q, r) = t.mul(&e).div_rem(g)?;
        let dh = s.mul(&e).add(&q.mul(h));
        for (i, c) in r.coeffs().iter().enumerate() {
            gl[i] += &m * c.to_integer();
        }
        for (i, c) in dh.coeffs().iter().enumerate() {
            hl[i] += &m * c.to_integer();
        }
        m *= &pb;
    }
    Ok((symmetric(&gl, modulus), symmetric(&hl, modulus)))
}

/// Bound on the coefficients of any monic integer factor of `f`.
fn factor_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm: BigInt = f.iter().map(|c| c * c).sum();
    (norm.sqrt() + 1u32) << n
}

fn choose_prime(f: &[BigInt]) -> Result<(u64, Vec<Poly>)> {
    let mut best: Option<(u64, Vec<Poly>)> = None;
    let mut tried = 0;
    for p in (3u64..).step_by(2).filter(|&p| is_prime(p)).take(60) {
        let fp = to_fp(f, CoeffRing::PrimeField(p))?;
        if fp.degree() != Some(f.len() - 1) || !fp.is_separable() {
            continue;
        }
        let factors = factor_mod_p(&fp)?;
        if best.as_ref().is_none_or(|b| factors.len() < b.1.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried == 6 {
            break;
        }
    }
    best.ok_or(Error::Unsupported(alloc::string::String::from(
        "no good reduction prime below 300",
    )))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Degrees of the irreducible factors over ℤ of a monic squarefree integer
/// polynomial, sorted.
pub(crate) fn monic_factor_degrees(f: &[BigInt]) -> Result<Vec<usize>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(if n == 1 { vec![1] } else { Vec::new() });
    }
    let (p, mut modular) = choose_prime(f)?;
    if modular.len() == 1 {
        return Ok(vec![n]);
    }
    let bound = factor_bound(f) * 2u32;
    let mut modulus = BigInt::from(p);
    while modulus <= bound {
        modulus *= p;
    }

    let ring = CoeffRing::PrimeField(p);
    let mut lifted = Vec::with_capacity(modular.len());
    let mut rest: IntPoly = f.to_vec();
    while modular.len() > 1 {
        let g = modular.remove(0);
        let h = modular.iter().fold(Poly::one(ring), |acc, u| acc.mul(u));
        let (gl, hl) = hensel_pair(&rest, &g, &h, p, &modulus)?;
        lifted.push(gl);
        rest = hl;
    }
    lifted.push(rest);

    let mut target = f.to_vec();
    let mut out = Vec::new();
    let mut k = 1;
    while 2 * k <= lifted.len() {
        let mut found = None;
        for s in subsets(lifted.len(), k) {
            let prod = s.iter().fold(vec![BigInt::one()], |acc, &i| int_mul(&acc, &lifted[i]));
            let g = symmetric(&prod, &modulus);
            if let Some(q) = int_div_monic(&target, &g) {
                found = Some((s, g.len() - 1, q));
                break;
            }
        }
        match found {
            Some((s, d, q)) => {
                out.push(d);
                target = q;
                for &i in s.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => k += 1,
        }
    }
    if target.len() > 1 {
        out.push(target.len() - 1);
    }
    out.sort_unstable();
    Ok(out)
}
