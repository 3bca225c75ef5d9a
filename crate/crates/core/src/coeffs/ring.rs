use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

/// Scalars are stored uniformly as reduced fractions of big integers.
///
/// Over F_p the value is always the canonical residue `0..p` with
/// denominator one; over ℤ the denominator is always one.
pub type Scalar = BigRational;

/// The coefficient ring R.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoeffRing {
    Rationals,
    PrimeField(u64),
    Integers,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(invalid!("{p} is not prime"));
        }
        Ok(CoeffRing::PrimeField(p))
    }

    /// Parses the `q` / `fp:<p>` / `z` descriptor used in every file format.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" => Ok(CoeffRing::Rationals),
            "z" | "Z" => Ok(CoeffRing::Integers),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .or_else(|| other.strip_prefix("f"))
                    .ok_or_else(|| invalid!("unknown ring descriptor {other:?}"))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| invalid!("bad prime in ring descriptor {other:?}"))?;
                CoeffRing::prime_field(p)
            }
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            CoeffRing::Rationals => "q".to_string(),
            CoeffRing::PrimeField(p) => format!("fp:{p}"),
            CoeffRing::Integers => "z".to_string(),
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffRing::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn require_field(&self) -> Result<()> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.descriptor()))
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_int(BigInt::from(n))
    }

    pub fn from_int(&self, n: BigInt) -> Scalar {
        match self {
            CoeffRing::PrimeField(p) => Scalar::from_integer(n.mod_floor(&BigInt::from(*p))),
            _ => Scalar::from_integer(n),
        }
    }

    /// Brings an arbitrary rational into canonical form for this ring.
    pub fn normalize(&self, x: Scalar) -> Result<Scalar> {
        match self {
            CoeffRing::Rationals => Ok(x),
            CoeffRing::Integers => {
                if x.is_integer() {
                    Ok(x)
                } else {
                    Err(invalid!("{x} is not an integer"))
                }
            }
            CoeffRing::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let den = x.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(invalid!("{x} has denominator divisible by {p}"));
                }
                let inv = mod_inverse(&den, &pb).expect("nonzero residue mod prime");
                Ok(Scalar::from_integer((x.numer() * inv).mod_floor(&pb)))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// Multiplicative inverse; `None` for zero and for non-units of ℤ.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            CoeffRing::Rationals => Some(a.recip()),
            CoeffRing::Integers => {
                if a.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            CoeffRing::PrimeField(p) => {
                let pb = BigInt::from(*p);
                mod_inverse(a.numer(), &pb).map(Scalar::from_integer)
            }
        }
    }

    /// Reduction after an operation whose operands were already canonical.
    fn reduce(&self, x: Scalar) -> Scalar {
        match self {
            CoeffRing::PrimeField(p) => {
                Scalar::from_integer(x.numer().mod_floor(&BigInt::from(*p)))
            }
            _ => x,
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let value = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| invalid!("bad scalar {s:?}"))?;
                let d: BigInt = d.trim().parse().map_err(|_| invalid!("bad scalar {s:?}"))?;
                if d.is_zero() {
                    return Err(invalid!("zero denominator in {s:?}"));
                }
                Scalar::new(n, d)
            }
            None => Scalar::from_integer(s.parse().map_err(|_| invalid!("bad scalar {s:?}"))?),
        };
        self.normalize(value)
    }

    /// Small-integer view of a canonical scalar, when it fits.
    pub fn to_i64(&self, a: &Scalar) -> Option<i64> {
        if a.is_integer() {
            a.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::PrimeField(p) => write!(f, "F_{p}"),
            CoeffRing::Integers => write!(f, "Z"),
        }
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_roundtrip() {
        for s in ["q", "z", "fp:7"] {
            assert_eq!(CoeffRing::parse(s).unwrap().descriptor(), s);
        }
        assert!(CoeffRing::parse("fp:6").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let r = CoeffRing::prime_field(5).unwrap();
        let a = r.from_i64(3);
        let b = r.from_i64(4);
        assert_eq!(r.add(&a, &b), r.from_i64(2));
        assert_eq!(r.mul(&a, &b), r.from_i64(2));
        assert_eq!(r.mul(&a, &r.inv(&a).unwrap()), r.one());
        assert_eq!(r.parse_scalar("1/2").unwrap(), r.from_i64(3));
        assert_eq!(r.from_i64(-1), r.from_i64(4));
    }

    #[test]
    fn integer_units() {
        let z = CoeffRing::Integers;
        assert!(z.inv(&z.from_i64(2)).is_none());
        assert_eq!(z.inv(&z.from_i64(-1)), Some(z.from_i64(-1)));
        assert!(z.parse_scalar("3/4").is_err());
    }
}
