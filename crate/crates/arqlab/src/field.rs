//! Exact scalars over the rationals or a prime field.
//!
//! Every matrix, algebra and module in this crate carries a [`FieldSpec`]
//! describing the coefficient field. Arithmetic goes through the spec so that
//! prime-field values stay reduced to `0..p`. Mixing scalars that belong to
//! different specs is a caller bug and panics; public entry points validate
//! field agreement up front and return [`Error::FieldMismatch`] instead.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Upper bound (exclusive) for prime-field characteristics. Keeping p below
/// 2^31 lets products of two reduced values fit comfortably in u64 and sums
/// of many products in u128.
pub const MAX_PRIME: u64 = 1 << 31;

/// The coefficient field of a computation: Q or F_p for a prime p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

/// A single scalar. The prime-field variant stores the reduced residue and
/// relies on the surrounding [`FieldSpec`] for the modulus.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// Validated prime-field constructor.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if p >= MAX_PRIME {
            return Err(Error::InvalidParameter(format!(
                "prime {p} exceeds the supported bound {MAX_PRIME}"
            )));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Parse "q" / "Q" or "gf:p".
    pub fn parse(text: &str) -> Result<FieldSpec> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = t
            .strip_prefix("gf:")
            .or_else(|| t.strip_prefix("GF:"))
            .or_else(|| t.strip_prefix("Gf:"))
        {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad prime in field spec {t:?}")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::InvalidParameter(format!(
            "unknown field spec {t:?}, expected \"q\" or \"gf:<prime>\""
        )))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp(r)
            }
        }
    }

    /// A rational n/d, reduced into the field. For a prime field the
    /// denominator must be invertible.
    pub fn from_ratio(&self, n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        match self {
            FieldSpec::Rationals => {
                Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            FieldSpec::Prime(_) => {
                let den = self.from_i64(d);
                assert!(!self.is_zero(&den), "denominator vanishes in the field");
                self.mul(&self.from_i64(n), &self.inv(&den))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(x) => x.is_one(),
            Scalar::Fp(x) => *x == 1,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp((x + p - y) % p)
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    /// Multiplicative inverse; panics on zero (callers check first).
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Rat(x.recip())
            }
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                Scalar::Fp(mod_inv(*x, *p))
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Best-effort float image, used only to seed numeric root finding.
    pub fn to_f64(&self, a: &Scalar) -> Option<f64> {
        match a {
            Scalar::Rat(x) => x.to_f64(),
            Scalar::Fp(x) => Some(*x as f64),
        }
    }

    /// True for rationals with negative sign; prime-field values are never
    /// negative. Used only to pretty-print "- c" instead of "+ -c".
    pub fn is_negative(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(x) => x.is_negative(),
            Scalar::Fp(_) => false,
        }
    }

    /// Render a scalar the way the text format expects: integers bare,
    /// rationals as n/d, prime-field values as reduced residues.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(x) => {
                if x.is_integer() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp(x) => x.to_string(),
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p); p prime and a nonzero mod p.
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert!(r0 == 1, "not invertible");
    t0.rem_euclid(p as i128) as u64
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Check that all listed specs agree, returning the common one.
pub fn common_field(specs: &[FieldSpec]) -> Result<FieldSpec> {
    let first = *specs.first().expect("at least one field");
    for s in specs {
        if *s != first {
            return Err(Error::FieldMismatch(format!(
                "cannot mix scalars over {first} and {s}"
            )));
        }
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime(5).is_ok());
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(2).is_ok());
    }

    #[test]
    fn parse_specs() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("gf:7").unwrap(), FieldSpec::Prime(7));
        assert!(FieldSpec::parse("gf:6").is_err());
        assert!(FieldSpec::parse("r").is_err());
    }

    #[test]
    fn rational_arithmetic() {
        let f = FieldSpec::Rationals;
        let half = f.from_ratio(1, 2);
        let third = f.from_ratio(1, 3);
        let sum = f.add(&half, &third);
        assert_eq!(sum, f.from_ratio(5, 6));
        assert!(f.is_one(&f.mul(&half, &f.from_i64(2))));
        assert_eq!(f.inv(&half), f.from_i64(2));
    }

    #[test]
    fn prime_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), f.from_i64(2));
        assert_eq!(f.mul(&a, &b), f.from_i64(2));
        assert_eq!(f.neg(&a), f.from_i64(2));
        assert!(f.is_one(&f.mul(&a, &f.inv(&a))));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
    }

    #[test]
    fn mod_inverse_small_field() {
        let f = FieldSpec::prime(2).unwrap();
        assert!(f.is_one(&f.inv(&f.one())));
    }

    #[test]
    fn formatting() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.format(&q.from_i64(-3)), "-3");
        assert_eq!(q.format(&q.from_ratio(2, 4)), "1/2");
        let p = FieldSpec::prime(7).unwrap();
        assert_eq!(p.format(&p.from_i64(-1)), "6");
    }

    #[test]
    fn mismatch_is_detected() {
        let err = common_field(&[FieldSpec::Rationals, FieldSpec::Prime(5)]).unwrap_err();
        assert!(matches!(err, crate::error::Error::FieldMismatch(_)));
    }
}
