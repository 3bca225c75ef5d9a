//! Dense univariate polynomials over a prime field or ℚ, coefficients in
//! ascending degree.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeffs::{CoeffRing, Scalar};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: CoeffRing,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(ring: CoeffRing, coeffs: Vec<Scalar>) -> Result<Self> {
        ring.require_field()?;
        let coeffs = coeffs
            .into_iter()
            .map(|c| ring.normalize(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly { ring, coeffs }.trimmed())
    }

    pub fn from_i64(ring: CoeffRing, coeffs: &[i64]) -> Result<Self> {
        Self::new(ring, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    pub fn zero(ring: CoeffRing) -> Self {
        Poly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: CoeffRing) -> Self {
        Poly { ring, coeffs: vec![Scalar::one()] }
    }

    /// The monomial `x^n`.
    pub fn monomial(ring: CoeffRing, n: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        Poly { ring, coeffs }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.ring.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Poly { ring: self.ring, coeffs }.trimmed()
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.ring.neg(&Scalar::one())))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| self.ring.mul(c, s)).collect();
        Poly { ring: self.ring, coeffs }.trimmed()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring);
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = self.ring.add(&coeffs[i + j], &self.ring.mul(a, b));
            }
        }
        Poly { ring: self.ring, coeffs }.trimmed()
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or_else(|| invalid!("division by the zero polynomial"))?;
        let lead_inv = self.ring.inv(d.leading().unwrap()).expect("field");
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = self.ring.mul(&r[top], &lead_inv);
            if !c.is_zero() {
                let shift = top - dd;
                for (k, dk) in d.coeffs.iter().enumerate() {
                    r[shift + k] = self.ring.sub(&r[shift + k], &self.ring.mul(&c, dk));
                }
                q[shift] = c;
            }
            r.pop();
        }
        Ok((
            Poly { ring: self.ring, coeffs: q }.trimmed(),
            Poly { ring: self.ring, coeffs: r }.trimmed(),
        ))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn make_monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.ring.inv(l).expect("field")),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.ring.mul(c, &self.ring.from_i64(i as i64)))
            .collect();
        Poly { ring: self.ring, coeffs }.trimmed()
    }

    pub fn is_separable(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: BigInt, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(self.ring).rem(m)?;
        while e.is_positive() {
            if e.is_odd() {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| self.ring.add(&self.ring.mul(&acc, x), c))
    }
}

/// Degrees of the irreducible factors of a monic separable polynomial over
/// F_p, by distinct-degree factorization.
pub fn distinct_degree_profile(f: &Poly) -> Result<Vec<usize>> {
    let p = match f.ring() {
        CoeffRing::PrimeField(p) => p,
        other => return Err(Error::Unsupported(alloc::format!("distinct-degree split over {other}"))),
    };
    if !f.is_separable() {
        return Err(Error::NotSeparable(alloc::format!("{:?}", f.coeffs())));
    }
    let ring = f.ring();
    let mut rest = f.make_monic();
    let x = Poly::monomial(ring, 1);
    let mut frob = x.clone();
    let mut out = Vec::new();
    let mut k = 0usize;
    while rest.degree().unwrap_or(0) > 0 {
        k += 1;
        if 2 * k > rest.degree().unwrap() {
            out.push(rest.degree().unwrap());
            break;
        }
        frob = frob.pow_mod(BigInt::from(p), &rest)?;
        let g = rest.gcd(&frob.sub(&x));
        let dg = g.degree().unwrap_or(0);
        for _ in 0..dg / k {
            out.push(k);
        }
        if dg > 0 {
            rest = rest.div_rem(&g)?.0;
            frob = frob.rem(&rest)?;
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// First monic irreducible polynomial of degree `d` over F_p in
/// lexicographic order of its lower coefficients.
pub fn find_irreducible(p: u64, d: usize) -> Result<Poly> {
    let ring = CoeffRing::prime_field(p)?;
    if d == 0 {
        return Err(invalid!("irreducible polynomials have positive degree"));
    }
    let total = (p as u128).checked_pow(d as u32).ok_or(Error::Overflow("irreducible search"))?;
    for code in 0..total {
        let mut c = code;
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(ring.from_i64((c % p as u128) as i64));
            c /= p as u128;
        }
        coeffs.push(Scalar::one());
        let f = Poly::new(ring, coeffs)?;
        if d > 1 && f.coeff(0).is_zero() {
            continue;
        }
        if f.is_separable() && distinct_degree_profile(&f)? == [d] {
            return Ok(f);
        }
    }
    Err(invalid!("no irreducible polynomial of degree {d} over F_{p}"))
}

/// Degrees of the irreducible factors over ℚ of a squarefree polynomial,
/// sorted.
pub fn rational_factor_degrees(f: &Poly) -> Result<Vec<usize>> {
    if f.ring() != CoeffRing::Rationals {
        return Err(invalid!("rational factorization needs a polynomial over Q"));
    }
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    // a^(n-1) f(x/a) is monic with the same factor degrees
    let ints = primitive_integer_coeffs(f);
    let n = ints.len() - 1;
    let lead = ints[n].clone();
    let mut scale = BigInt::one();
    let mut monic = vec![BigInt::one(); n + 1];
    for i in (0..n).rev() {
        monic[i] = &ints[i] * &scale;
        scale *= &lead;
    }
    super::factor::monic_factor_degrees(&monic)
}

fn primitive_integer_coeffs(f: &Poly) -> Vec<BigInt> {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * Scalar::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if ints.last().is_some_and(Signed::is_negative) { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|c| c / &g * &sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> CoeffRing {
        CoeffRing::PrimeField(2)
    }

    #[test]
    fn division_identity() {
        let q = CoeffRing::Rationals;
        let f = Poly::from_i64(q, &[-2, 0, 0, 1]).unwrap();
        let d = Poly::from_i64(q, &[1, 1]).unwrap();
        let (quo, r) = f.div_rem(&d).unwrap();
        assert_eq!(quo.mul(&d).add(&r), f);
        assert_eq!(r.degree(), Some(0));
    }

    #[test]
    fn separability() {
        let q = CoeffRing::Rationals;
        assert!(Poly::from_i64(q, &[1, 0, 1]).unwrap().is_separable());
        assert!(!Poly::from_i64(q, &[0, 0, 1]).unwrap().is_separable());
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(!Poly::from_i64(f2(), &[1, 0, 1]).unwrap().is_separable());
    }

    #[test]
    fn profiles_over_f2() {
        let f = Poly::from_i64(f2(), &[1, 1, 1]).unwrap();
        assert_eq!(distinct_degree_profile(&f).unwrap(), [2]);
        // x^3 + x = x (x + 1)^2 is not separable; x^3 - x is not over F_2 either
        let g = Poly::from_i64(f2(), &[0, 1, 1]).unwrap();
        assert_eq!(distinct_degree_profile(&g).unwrap(), [1, 1]);
        // (x^2+x+1)(x^3+x+1)
        let h = f.mul(&Poly::from_i64(f2(), &[1, 1, 0, 1]).unwrap());
        assert_eq!(distinct_degree_profile(&h).unwrap(), [2, 3]);
    }

    #[test]
    fn irreducible_search() {
        for d in 1..=6 {
            let f = find_irreducible(2, d).unwrap();
            assert_eq!(f.degree(), Some(d));
            assert_eq!(distinct_degree_profile(&f).unwrap(), [d]);
        }
        assert_eq!(find_irreducible(2, 2).unwrap(), Poly::from_i64(f2(), &[1, 1, 1]).unwrap());
    }

    #[test]
    fn rational_factorization() {
        let q = CoeffRing::Rationals;
        let cases: [(&[i64], &[usize]); 5] = [
            (&[1, 0, 1], &[2]),
            (&[-2, 0, 0, 1], &[3]),
            (&[-1, 0, 1], &[1, 1]),
            // (x^2+1)(x^2+9)
            (&[9, 0, 10, 0, 1], &[2, 2]),
            // x^4 + 1 is irreducible
            (&[1, 0, 0, 0, 1], &[4]),
        ];
        for (c, want) in cases {
            let f = Poly::from_i64(q, c).unwrap();
            assert_eq!(rational_factor_degrees(&f).unwrap(), want, "{c:?}");
        }
    }
}
