use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{distinct_degree_profile, find_irreducible, rational_factor_degrees, Poly};
use super::FinAlgebra;
use crate::coeffs::{CoeffRing, Matrix, Scalar};
use crate::error::{invalid, Error, Result};

/// Étale algebra `∏ k[x]/(f)` presented by monic separable polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleSpec {
    base: CoeffRing,
    polys: Vec<Poly>,
    factor_degrees: Vec<usize>,
}

impl EtaleSpec {
    pub fn new(base: CoeffRing, polys: Vec<Poly>) -> Result<Self> {
        base.require_field()?;
        if polys.is_empty() {
            return Err(invalid!("an étale presentation needs at least one polynomial"));
        }
        let mut factor_degrees = Vec::new();
        for f in &polys {
            if f.ring() != base {
                return Err(Error::RingMismatch(format!("{} vs {}", f.ring(), base)));
            }
            if !f.is_monic() {
                return Err(Error::NotMonic);
            }
            if f.degree() == Some(0) {
                return Err(invalid!("constant polynomial"));
            }
            let g = f.gcd(&f.derivative());
            if g.degree() != Some(0) {
                return Err(Error::NotSeparable(format!("{:?}", g.coeffs())));
            }
            factor_degrees.extend(match base {
                CoeffRing::PrimeField(_) => distinct_degree_profile(f)?,
                _ => rational_factor_degrees(f)?,
            });
        }
        factor_degrees.sort_unstable();
        Ok(EtaleSpec {
            base,
            polys,
            factor_degrees,
        })
    }

    /// Polynomials as ascending coefficient lists of integers.
    pub fn from_i64(base: CoeffRing, polys: &[&[i64]]) -> Result<Self> {
        let polys = polys
            .iter()
            .map(|c| Poly::from_i64(base, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, polys)
    }

    /// F_(p^d) as an F_p-algebra, via the first irreducible polynomial.
    pub fn finite_field(p: u64, d: usize) -> Result<Self> {
        let f = find_irreducible(p, d)?;
        Self::new(f.ring(), vec![f])
    }

    pub fn base(&self) -> CoeffRing {
        self.base
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn factor_degrees(&self) -> &[usize] {
        &self.factor_degrees
    }

    pub fn dim(&self) -> usize {
        self.factor_degrees.iter().sum()
    }
}

pub fn etale_algebra(spec: &EtaleSpec) -> Result<FinAlgebra> {
    let parts = spec
        .polys
        .iter()
        .map(FinAlgebra::quotient)
        .collect::<Result<Vec<_>>>()?;
    if parts.len() == 1 {
        Ok(parts.into_iter().next().unwrap())
    } else {
        FinAlgebra::product(&parts)
    }
}

/// Trace form `(x, y) ↦ tr(L_{xy})`.
fn trace_form(a: &FinAlgebra) -> Matrix {
    let n = a.dim();
    let r = a.base();
    let traces: Vec<Scalar> = (0..n)
        .map(|k| {
            let l = a.left_mul_matrix(&a.basis(k));
            (0..n).fold(Scalar::zero(), |t, i| r.add(&t, l.get(i, i)))
        })
        .collect();
    let mut m = Matrix::zeros(r, n, n).expect("small");
    for i in 0..n {
        for j in 0..n {
            let mut t = Scalar::zero();
            for (k, tk) in traces.iter().enumerate() {
                t = r.add(&t, &r.mul(a.structure(i, j, k), tk));
            }
            m.set(i, j, t);
        }
    }
    m
}

/// Commutative with nondegenerate trace form.
pub fn is_etale(a: &FinAlgebra) -> bool {
    a.is_commutative() && trace_form(a).rank() == a.dim()
}

/// Degrees of the field factors of a commutative étale algebra, sorted.
///
/// Over F_p the count of factors whose degree is divisible by `e` is read
/// off the dimensions of the fixed spaces of powers of Frobenius. Over ℚ
/// a primitive element is searched for and its characteristic polynomial
/// factored.
pub fn factor_degrees(a: &FinAlgebra) -> Result<Vec<usize>> {
    if !is_etale(a) {
        return Err(invalid!("algebra is not étale"));
    }
    match a.base() {
        CoeffRing::PrimeField(p) => frobenius_profile(a, p),
        _ => {
            let chi = primitive_char_poly(a)?;
            rational_factor_degrees(&chi)
        }
    }
}

fn power(a: &FinAlgebra, x: &[Scalar], e: u64) -> Vec<Scalar> {
    let mut acc = a.unit().to_vec();
    let mut base = x.to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = a.mul(&acc, &base);
        }
        base = a.mul(&base, &base);
        e >>= 1;
    }
    acc
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut out = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            out = -out;
        }
        d += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

fn totient(n: usize) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

fn frobenius_profile(a: &FinAlgebra, p: u64) -> Result<Vec<usize>> {
    let n = a.dim();
    let r = a.base();
    let mut frob = Matrix::zeros(r, n, n)?;
    for j in 0..n {
        for (i, v) in power(a, &a.basis(j), p).into_iter().enumerate() {
            frob.set(i, j, v);
        }
    }
    let id = Matrix::identity(r, n)?;
    // fixed[k] = dim ker(F^k - I) = Σ_i gcd(k, d_i)
    let mut fixed = vec![0i64; n + 1];
    let mut fk = id.clone();
    for slot in fixed.iter_mut().skip(1) {
        fk = fk.mul(&frob)?;
        *slot = (n - fk.sub(&id)?.rank()) as i64;
    }
    // divisible[e] = #{i : e | d_i}
    let mut divisible = vec![0i64; n + 1];
    for (k, slot) in divisible.iter_mut().enumerate().skip(1) {
        let h: i64 = (1..=k).filter(|e| k % e == 0).map(|e| mobius(k / e) * fixed[e]).sum();
        *slot = h / totient(k) as i64;
    }
    let mut out = Vec::new();
    for d in 1..=n {
        let exact: i64 = (d..=n).step_by(d).map(|m| mobius(m / d) * divisible[m]).sum();
        for _ in 0..exact {
            out.push(d);
        }
    }
    if out.iter().sum::<usize>() != n {
        return Err(invalid!("Frobenius profile does not account for the dimension"));
    }
    Ok(out)
}

/// Faddeev–LeVerrier characteristic polynomial over ℚ, ascending.
fn char_poly(m: &Matrix) -> Result<Poly> {
    let n = m.rows();
    let r = m.ring();
    let id = Matrix::identity(r, n)?;
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut mk = Matrix::zeros(r, n, n)?;
    for k in 1..=n {
        mk = m.mul(&mk)?.sub(&id.scale(&r.neg(&coeffs[n - k + 1])))?;
        let amk = m.mul(&mk)?;
        let tr = (0..n).fold(Scalar::zero(), |t, i| t + amk.get(i, i));
        coeffs[n - k] = -tr / Scalar::from_integer(BigInt::from(k));
    }
    Poly::new(r, coeffs)
}

fn primitive_char_poly(a: &FinAlgebra) -> Result<Poly> {
    let n = a.dim();
    for t in 1..=(4 * n as i64 + 4) {
        let x: Vec<Scalar> = (0..n)
            .map(|i| Scalar::from_integer(BigInt::from(t).pow(i as u32)))
            .collect();
        let chi = char_poly(&a.left_mul_matrix(&x))?;
        if chi.is_separable() {
            return Ok(chi);
        }
    }
    Err(Error::Unsupported(format!("no primitive element found in dimension {n}")))
}

#[cfg(test)]
mod tests {
    use super::super::tensor_algebra;
    use super::*;

    #[test]
    fn gaussian_model() {
        let s = EtaleSpec::from_i64(CoeffRing::Rationals, &[&[1, 0, 1]]).unwrap();
        let a = etale_algebra(&s).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_commutative());
        assert_eq!(s.factor_degrees(), &[2]);
    }

    #[test]
    fn rejects_bad_polynomials() {
        let q = CoeffRing::Rationals;
        assert!(matches!(EtaleSpec::from_i64(q, &[&[0, 0, 1]]), Err(Error::NotSeparable(_))));
        assert!(matches!(EtaleSpec::from_i64(q, &[&[1, 0, 2]]), Err(Error::NotMonic)));
    }

    #[test]
    fn f4_is_a_field() {
        let s = EtaleSpec::from_i64(CoeffRing::PrimeField(2), &[&[1, 1, 1]]).unwrap();
        let a = etale_algebra(&s).unwrap();
        assert_eq!(factor_degrees(&a).unwrap(), [2]);
    }

    #[test]
    fn tensor_squares_split() {
        let gauss = etale_algebra(&EtaleSpec::from_i64(CoeffRing::Rationals, &[&[1, 0, 1]]).unwrap()).unwrap();
        let t = tensor_algebra(&gauss, &gauss).unwrap();
        assert_eq!(factor_degrees(&t).unwrap(), [2, 2]);
        let f4 = etale_algebra(&EtaleSpec::finite_field(2, 2).unwrap()).unwrap();
        let t = tensor_algebra(&f4, &f4).unwrap();
        assert_eq!(factor_degrees(&t).unwrap(), [2, 2]);
    }

    #[test]
    fn nilpotents_are_not_etale() {
        let q = CoeffRing::Rationals;
        let a = FinAlgebra::quotient(&Poly::from_i64(q, &[0, 0, 1]).unwrap()).unwrap();
        assert!(!is_etale(&a));
        assert!(factor_degrees(&a).is_err());
    }
}
