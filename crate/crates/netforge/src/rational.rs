//! Exact rational values for discrepancy arithmetic.
//!
//! Discrepancies and volumes are ratios of integers; comparing them through
//! floating point would blur exactly the boundary cases the rest of the
//! crate works hard to keep sharp. [`Rational`] wraps a reduced `i128`
//! fraction and renders decimals only for display.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::Signed;
use serde::Serialize;

use crate::error::Error;
use crate::Result;

/// A reduced fraction with exact comparison and arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(numerator: i128, denominator: i128) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Rational(Ratio::new(numerator, denominator)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n as i128))
    }

    /// The b-adic rational `numerator / base^exponent`.
    pub fn b_adic(numerator: u64, base: u64, exponent: u32) -> Result<Self> {
        let den = crate::badic::pow_checked(base, exponent)?;
        Ok(Rational(Ratio::new(numerator as i128, den as i128)))
    }

    pub fn zero() -> Self {
        Rational::from_integer(0)
    }

    pub fn one() -> Self {
        Rational::from_integer(1)
    }

    /// Canonical numerator (denominator kept positive).
    pub fn numerator(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i128 {
        *self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Numerator and denominator as `i64`, for JSON output.
    pub fn to_i64_pair(&self) -> Result<(i64, i64)> {
        let num = i64::try_from(self.numerator()).map_err(|_| Error::Overflow {
            what: "rational numerator in JSON output",
        })?;
        let den = i64::try_from(self.denominator()).map_err(|_| Error::Overflow {
            what: "rational denominator in JSON output",
        })?;
        Ok((num, den))
    }

    /// Decimal rendering with the given number of significant digits,
    /// correctly rounded (ties away from zero). Display-only; all
    /// comparisons in the crate stay exact.
    pub fn decimal(&self, significant: usize) -> String {
        let significant = significant.max(1);
        let negative = self.0.is_negative();
        let num = self.numerator().unsigned_abs();
        let den = self.denominator().unsigned_abs();
        if num == 0 {
            return "0".to_string();
        }

        let int_part = num / den;
        let int_digits = if int_part == 0 {
            0
        } else {
            int_part.to_string().len()
        };

        // How many fractional digits we still owe, and how many leading
        // fractional zeros precede the first significant digit.
        let mut leading_zeros = 0usize;
        if int_part == 0 {
            let mut rem = num % den;
            while rem * 10 < den {
                rem *= 10;
                leading_zeros += 1;
                if leading_zeros > 64 {
                    break;
                }
            }
        }
        let frac_digits = if int_digits >= significant {
            0
        } else if int_part > 0 {
            significant - int_digits
        } else {
            leading_zeros + significant
        };

        // Round num/den * 10^frac_digits to the nearest integer.
        let scale = 10u128.checked_pow(frac_digits as u32);
        let (mut scaled, frac_digits) = match scale {
            Some(scale10) => match num.checked_mul(scale10) {
                Some(prod) => {
                    let q = prod / den;
                    let r = prod % den;
                    (if 2 * r >= den { q + 1 } else { q }, frac_digits)
                }
                None => (int_part, 0),
            },
            None => (int_part, 0),
        };

        let sign = if negative { "-" } else { "" };
        if frac_digits == 0 {
            return format!("{sign}{scaled}");
        }
        let ten = 10u128.pow(frac_digits as u32);
        let whole = scaled / ten;
        scaled %= ten;
        let mut frac = format!("{scaled:0width$}", width = frac_digits);
        while frac.ends_with('0') {
            frac.pop();
        }
        if frac.is_empty() {
            format!("{sign}{whole}")
        } else {
            format!("{sign}{whole}.{frac}")
        }
    }

    /// JSON view `{decimal, den, num}` used by the CLI.
    pub fn to_json(&self) -> Result<RationalJson> {
        let (num, den) = self.to_i64_pair()?;
        Ok(RationalJson {
            decimal: self.decimal(12),
            den,
            num,
        })
    }
}

/// Serialized form of a [`Rational`]: exact pair plus a display decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalJson {
    pub decimal: String,
    pub den: i64,
    pub num: i64,
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator() == 1 {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}
