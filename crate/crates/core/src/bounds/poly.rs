//! Univariate polynomials with exact rational coefficients and real-root
//! isolation by Sturm sequences.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Polynomial::from_ints(&[0, 1])
    }

    /// `x + a`.
    pub fn linear(a: i64) -> Self {
        Polynomial::from_ints(&[a, 1])
    }

    /// `(x + roots[0]) * (x + roots[1]) * ...`.
    pub fn from_shifts(shifts: &[i64]) -> Self {
        shifts.iter().fold(Polynomial::constant(rat(1)), |acc, &a| &acc * &Polynomial::linear(a))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * rat(k as i64)).collect(),
        )
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::constant(rat(1));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let q = &rem[k] / &lead;
            let shift = k - dd;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * c;
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &Polynomial) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The same roots, each with multiplicity one.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Bound on the absolute value of every complex root.
    pub fn root_bound(&self) -> BigRational {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return rat(1);
        }
        let lead = self.coeffs[n].abs();
        let max = self.coeffs[..n].iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        max + rat(1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = a.is_one();
            if !unit || k == 0 {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<Polynomial>,
}

impl Sturm {
    pub fn new(p: &Polynomial) -> Self {
        let p0 = p.square_free();
        let p1 = p0.derivative();
        let mut seq = vec![p0, p1];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        Sturm { seq }
    }

    /// Sign changes at `x`, skipping zeros.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.seq {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// A real root known to lie in `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        (to_f64(&self.lo) + to_f64(&self.hi)) / 2.0
    }
}

pub fn to_f64(x: &BigRational) -> f64 {
    // Scale to keep the numerator and denominator within f64 range.
    let shift = (x.numer().bits() as i64).max(x.denom().bits() as i64) - 60;
    let (n, d) = if shift > 0 {
        (x.numer() >> shift as usize, x.denom() >> shift as usize)
    } else {
        (x.numer().clone(), x.denom().clone())
    };
    let (n, d) = (big_to_f64(&n), big_to_f64(&d));
    if d == 0.0 {
        if n == 0.0 {
            0.0
        } else {
            libm::copysign(f64::INFINITY, n)
        }
    } else {
        n / d
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    let (sign, digits) = v.to_u64_digits();
    let mut acc = 0.0;
    for d in digits.iter().rev() {
        acc = acc * 18446744073709551616.0 + *d as f64;
    }
    if sign == num_bigint::Sign::Minus {
        -acc
    } else {
        acc
    }
}

/// Isolates the largest real root of `p` greater than `floor` to an interval
/// of width at most `tol`.
pub fn largest_root_above(p: &Polynomial, floor: &BigRational, tol: &BigRational) -> Option<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return None;
    }
    let sturm = Sturm::new(p);
    let mut hi = rat(1);
    let bound = p.root_bound();
    while hi < bound {
        hi *= rat(2);
    }
    let mut lo = floor.clone();
    if sturm.count_in(&lo, &hi) == 0 {
        return None;
    }
    let two = rat(2);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if sturm.count_in(&mid, &hi) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(RootInterval { lo, hi })
}

/// Bisects for the point where an increasing function crosses `target`,
/// starting from `lo < x* <= hi`, until the width is at most `tol`.
pub fn bisect_increasing(
    f: impl Fn(&BigRational) -> BigRational,
    target: &BigRational,
    mut lo: BigRational,
    mut hi: BigRational,
    tol: &BigRational,
) -> RootInterval {
    let two = rat(2);
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / &two;
        if f(&mid) >= *target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootInterval { lo, hi }
}
