//! Exact scalar arithmetic: arbitrary-precision rationals and Gaussian rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar. `BigRational` keeps the numerator/denominator
/// reduced with a positive denominator, which is exactly the invariant we
/// need everywhere.
pub type Rat = BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer-valued rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "a/b" or "a" (decimal-free) into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = BigInt::from_str(num).map_err(|_| RatParseError(s.to_string()))?;
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| RatParseError(s.to_string()))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(RatParseError(s.to_string()));
    }
    Ok(Rat::new(n, d))
}

/// Formats a rational as "a/b", or "a" when the denominator is 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal: {0:?}")]
pub struct RatParseError(pub String);

/// Gaussian rational: re + im·i with exact rational components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat { re: rint(re), im: rint(im) }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GaussRat { re: &self.re * r, im: &self.im * r }
    }

    pub fn abs_re(&self) -> Rat {
        self.re.abs()
    }
}

impl std::ops::Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl std::ops::Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl std::ops::Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl std::ops::Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", rat_to_string(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", rat_to_string(&self.im))
        } else {
            write!(f, "{}{}{}i", rat_to_string(&self.re), if self.im.is_negative() { "" } else { "+" }, rat_to_string(&self.im))
        }
    }
}
