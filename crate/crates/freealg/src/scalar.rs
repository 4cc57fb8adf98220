//! Exact field scalars: arbitrary-precision rationals or a prime field GF(p).
//!
//! All arithmetic is exact. GF(p) is only admitted with p large enough for
//! the degree bound in play, which callers enforce through
//! [`Field::require_char_above`].

use crate::error::{EngineError, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The coefficient field of the ambient free algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Gf(u64),
}

impl Field {
    /// Validate a GF(p) modulus: odd prime, small enough that products fit in u64.
    pub fn gf(p: u64) -> Result<Field> {
        if p < 3 || p >= (1 << 31) || !is_prime(p) {
            return Err(EngineError::BadModulus(p));
        }
        Ok(Field::Gf(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Gf(p) => *p,
        }
    }

    /// Characteristic 0 or strictly above `bound`.
    pub fn require_char_above(&self, bound: u32) -> Result<()> {
        match self {
            Field::Rational => Ok(()),
            Field::Gf(p) if *p > bound as u64 => Ok(()),
            Field::Gf(p) => Err(EngineError::CharacteristicTooSmall {
                characteristic: *p,
                needed: bound,
            }),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Gf(p) => Scalar::Gf { val: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Gf(p) => {
                let m = *p as i64;
                Scalar::Gf {
                    val: n.rem_euclid(m) as u64,
                    modulus: *p,
                }
            }
        }
    }

    /// Exact fraction n/d; `d` must be invertible in the field.
    pub fn fraction(&self, n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        match self {
            Field::Rational => {
                Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            Field::Gf(_) => {
                let num = self.from_i64(n);
                let den = self.from_i64(d);
                num.mul(&den.inverse().expect("denominator divisible by modulus"))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Gf(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. Elements of distinct fields must never be mixed;
/// arithmetic panics on a mismatch because it indicates a caller bug.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Gf { val: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Gf { modulus, .. } => Field::Gf(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gf { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Gf { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Gf { val: a, modulus: p }, Scalar::Gf { val: b, modulus: q }) if p == q => {
                Scalar::Gf {
                    val: (a + b) % p,
                    modulus: *p,
                }
            }
            _ => panic!("scalar arithmetic over mismatched fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Gf { val, modulus } => Scalar::Gf {
                val: (modulus - val) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Gf { val: a, modulus: p }, Scalar::Gf { val: b, modulus: q }) if p == q => {
                Scalar::Gf {
                    val: (a * b) % p,
                    modulus: *p,
                }
            }
            _ => panic!("scalar arithmetic over mismatched fields"),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Gf { val, modulus } => Scalar::Gf {
                val: mod_pow(*val, *modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inverse().expect("division by zero scalar"))
    }
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Gf { val, .. } => write!(f, "{val}"),
        }
    }
}

/// True when the rational is negative; used by printers to fold signs.
pub fn is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.is_negative(),
        Scalar::Gf { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let f = Field::Rational;
        let third = f.fraction(1, 3);
        let sum = third.add(&third).add(&third);
        assert!(sum.is_one());
    }

    #[test]
    fn gf_inverse() {
        let f = Field::gf(11).unwrap();
        for n in 1..11 {
            let s = f.from_i64(n);
            assert!(s.mul(&s.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn gf_modulus_validation() {
        assert!(Field::gf(2).is_err());
        assert!(Field::gf(9).is_err());
        assert!(Field::gf(7).is_ok());
    }

    #[test]
    fn characteristic_guard() {
        assert!(Field::Rational.require_char_above(100).is_ok());
        assert!(Field::gf(7).unwrap().require_char_above(6).is_ok());
        assert!(Field::gf(7).unwrap().require_char_above(7).is_err());
    }
}
