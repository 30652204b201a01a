//! Closed-form tower counts for 2x4 bricks, evaluated in exact arithmetic.
//!
//! The height-`n-1` and height-`n-2` formulas contain powers `46^(n-4)` and
//! `46^(n-7)` that are fractional for small `n`; they are evaluated over the
//! rationals and checked to be integral.

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::geometry::BrickShape;

/// Arbitrary-precision count.
pub type ExactInt = BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaError {
    /// The formula is only stated from `min` on.
    OutOfDomain { n: u32, min: u32 },
    /// A rational evaluation did not come out integral.
    NotIntegral { n: u32 },
}

impl fmt::Display for FormulaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaError::OutOfDomain { n, min } => write!(f, "formula needs n >= {min}, got {n}"),
            FormulaError::NotIntegral { n } => write!(f, "formula is not integral at n = {n}"),
        }
    }
}

/// Which reading of the height-`n-2` formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoLessVariant {
    /// `2^(n-7)(1785 - 825n + 256n^2) + ...`, which matches the enumerated table.
    Corrected,
    /// The printed `2^(n-7)(1785 - 825n + 256n) + ...`.
    AsPrinted,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `base^exp` over the rationals, allowing negative exponents.
fn rpow(base: i64, exp: i64) -> BigRational {
    let b = rat(base);
    if exp >= 0 {
        Pow::pow(b, exp as u32)
    } else {
        Pow::pow(b.recip(), (-exp) as u32)
    }
}

fn integral(value: BigRational, n: u32) -> Result<ExactInt, FormulaError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(FormulaError::NotIntegral { n })
    }
}

/// Towers of height `n`: `(46^(n-1) + 2^(n-1)) / 2`, and 1 for a single brick.
pub fn tower_full_height(n: u32) -> Result<ExactInt, FormulaError> {
    if n == 0 {
        return Err(FormulaError::OutOfDomain { n, min: 1 });
    }
    if n == 1 {
        return Ok(ExactInt::one());
    }
    let sum = Pow::pow(BigInt::from(46), n - 1) + Pow::pow(BigInt::from(2), n - 1);
    Ok(sum / 2)
}

/// Buildings of `n` bricks and height `n - 1`, for `n >= 3`.
pub fn tower_one_less(n: u32) -> Result<ExactInt, FormulaError> {
    if n < 3 {
        return Err(FormulaError::OutOfDomain { n, min: 3 });
    }
    let k = n as i64;
    let v = rpow(46, k - 4) * rat(-89115 + 37065 * k) + rpow(2, k - 4) * rat(-8 + 16 * k);
    integral(v, n)
}

/// Buildings of `n` bricks and height `n - 2`, for `n >= 5`.
pub fn tower_two_less(n: u32) -> Result<ExactInt, FormulaError> {
    tower_two_less_variant(n, TwoLessVariant::Corrected)
}

pub fn tower_two_less_variant(n: u32, variant: TwoLessVariant) -> Result<ExactInt, FormulaError> {
    if n < 5 {
        return Err(FormulaError::OutOfDomain { n, min: 5 });
    }
    let k = n as i64;
    let quadratic = match variant {
        TwoLessVariant::Corrected => 256 * k * k,
        TwoLessVariant::AsPrinted => 256 * k,
    };
    let small = rpow(2, k - 7) * rat(1785 - 825 * k + quadratic);
    let big_poly = BigInt::from(-918_674_675i64) - BigInt::from(5_330_182_078i64) * k
        + BigInt::from(1_373_814_225i64) * (k * k);
    let big = rpow(46, k - 7) * BigRational::from_integer(big_poly);
    // The printed variant may legitimately be fractional; report it exactly rounded down.
    match variant {
        TwoLessVariant::Corrected => integral(small + big, n),
        TwoLessVariant::AsPrinted => Ok((small + big).floor().to_integer()),
    }
}

/// `P^(n-1)` where `P` is the number of ways to put one brick on another.
pub fn crude_counts(shape: BrickShape, n: u32) -> Result<ExactInt, FormulaError> {
    if n == 0 {
        return Err(FormulaError::OutOfDomain { n, min: 1 });
    }
    Ok(Pow::pow(BigInt::from(shape.contact_count()), n - 1))
}

/// `binom(n, k)` exactly.
pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return ExactInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = ExactInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
