//! Exact scalar rings for the elimination engine.
//!
//! Everything downstream of this module works over [`Rational`]. The
//! [`Scalar`] trait exists so the elimination code can also run over a small
//! odd prime field, which the tests use for exhaustive cross-checking of the
//! linear algebra; both scalars are 2-torsion free, so either choice is a
//! legal coefficient ring for the algebra machinery.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact field scalar usable by the elimination routines.
///
/// Implementations must be exact: equal values compare equal bit-for-bit in
/// canonical form, and all operations are total except division by zero.
pub trait Scalar:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Field division. Panics if `rhs` is zero.
    fn div(&self, rhs: &Self) -> Self;

    /// Rescale a nonzero row in place by a nonzero constant of the
    /// implementation's choice, as a swell-control hook for fraction-free
    /// elimination. The default keeps the row as is; [`Rational`] clears
    /// denominators and divides out integer content.
    fn normalize_row(_row: &mut [Self]) {}
}

/// Arbitrary-precision rational in canonical form: positive denominator,
/// `gcd(|numerator|, denominator) = 1`, zero stored as `0/1`.
///
/// Serialized as the string `"p/q"`, or `"p"` when the denominator is one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: BigInt, denominator: BigInt) -> crate::Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ParseRational(format!("{numerator}/0")));
        }
        // BigRational::new reduces and normalizes the sign.
        Ok(Rational(BigRational::new(numerator, denominator)))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }

    /// Scale to a primitive integer row: multiply by the lcm of all
    /// denominators, divide by the gcd of all numerators, and make the first
    /// nonzero entry positive. Keeps fraction-free elimination in `BigInt`
    /// territory with content growth stripped after every update.
    fn normalize_row(row: &mut [Self]) {
        let mut denom_lcm = BigInt::one();
        for v in row.iter() {
            if !v.is_zero() {
                denom_lcm = denom_lcm.lcm(v.denominator());
            }
        }
        let mut content = BigInt::zero();
        for v in row.iter() {
            if !v.is_zero() {
                let scaled = v.numerator() * (&denom_lcm / v.denominator());
                content = content.gcd(&scaled);
            }
        }
        if content.is_zero() {
            return; // all-zero row
        }
        let mut factor = BigRational::new(denom_lcm, content);
        if let Some(first) = row.iter().find(|v| !v.is_zero()) {
            if first.numerator().is_negative() {
                factor = -factor;
            }
        }
        for v in row.iter_mut() {
            if !v.is_zero() {
                v.0 *= &factor;
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` where `p` is a signed and `q` an unsigned
    /// decimal integer, `q != 0`. Decimal points are rejected; the value is
    /// canonicalized on construction.
    fn from_str(s: &str) -> crate::Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let valid_int = |t: &str, signed: bool| {
            let t = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
            !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid_int(num_str, true) {
            return Err(bad());
        }
        let numerator: BigInt = num_str.parse().map_err(|_| bad())?;
        let denominator: BigInt = match den_str {
            Some(d) => {
                if !valid_int(d, false) {
                    return Err(bad());
                }
                d.parse().map_err(|_| bad())?
            }
            None => BigInt::one(),
        };
        if denominator.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(numerator, denominator)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_i64(v)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident, $scalar_method:ident) => {
        impl std::ops::$trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Scalar::$scalar_method(self, rhs)
            }
        }
        impl std::ops::$trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Scalar::$scalar_method(&self, &rhs)
            }
        }
    };
}

rational_binop!(Add, add, add);
rational_binop!(Sub, sub, sub);
rational_binop!(Mul, mul, mul);
rational_binop!(Div, div, div);

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Scalar::neg(&self)
    }
}

/// Element of the prime field `F_P` for an odd prime modulus, used only by
/// the exhaustive elimination tests.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    // Oddness and the lower bound are compile-time checks; primality of P is
    // the caller's contract.
    const VALID: () = assert!(P >= 3 && P % 2 == 1, "modulus must be an odd prime >= 3");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Scalar::mul(&acc, &base);
            }
            base = Scalar::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }

    fn one() -> Self {
        Fp::new(1)
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v.rem_euclid(P as i64) as u64)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        Fp::new((self.0 + rhs.0) % P)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Fp::new((P + self.0 - rhs.0) % P)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Fp((((self.0 as u128) * (rhs.0 as u128)) % (P as u128)) as u64)
    }

    fn neg(&self) -> Self {
        Fp::new((P - self.0) % P)
    }

    fn div(&self, rhs: &Self) -> Self {
        assert!(rhs.0 != 0, "division by zero");
        // Fermat inverse; correct because P is prime.
        Scalar::mul(self, &rhs.pow(P - 2))
    }
}
