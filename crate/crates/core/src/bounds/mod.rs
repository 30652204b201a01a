//! Upper and lower bounds on the growth constant `h` of a brick shape.
//!
//! Upper bounds come from counting tapes: the closed form for any shape, and
//! for 2x4 bricks the refinement by stud partitions, where `h <= P(x)/x^15`
//! for every `x > 0` and the best choice is the largest root of
//! `15 P(x) - x P'(x)`. Lower bounds come from the bottleneck-free counts
//! `c_n`: `sum c_i h^-i <= 1`, optionally with a geometric tail when
//! `c_{n+2} >= g c_n` is known.
//!
//! Every value is computed exactly and rounded outward to two decimals.

pub mod partition;
pub mod poly;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::formulas::binomial;
use crate::geometry::BrickShape;
pub use partition::{PartitionWitness, Positions};
pub use poly::{Polynomial, RootInterval, Sturm};
use poly::{bisect_increasing, largest_root_above, rat, to_f64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Upper,
    Lower,
    /// The growth constant itself.
    Exact,
    /// A non-rigorous estimate from finite data.
    Estimate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rounding {
    Up,
    Down,
    Exact,
    Nearest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Method {
    /// Closed form from counting all tapes.
    CrudeUpper,
    /// Towers of single contacts.
    CrudeLower,
    /// Stud partitions with the given size tuples.
    Partition { top: [u32; 8], reduced: [u32; 8] },
    /// Truncated sum over `c_1..c_n`.
    BottleneckSum { terms: usize },
    /// Truncated sum plus a geometric tail with ratio `growth`.
    BottleneckTail { terms: usize, growth: u64 },
    /// `log T(n) / n`.
    LogSlope { n: usize },
    /// `T(n) / T(n-1)`.
    SuccessiveRatio { n: usize },
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::CrudeUpper => "crude-upper",
            Method::CrudeLower => "crude-lower",
            Method::Partition { .. } => "partition",
            Method::BottleneckSum { .. } => "bottleneck-sum",
            Method::BottleneckTail { .. } => "bottleneck-tail",
            Method::LogSlope { .. } => "log-slope",
            Method::SuccessiveRatio { .. } => "successive-ratio",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The exact value that was rounded.
    Value(BigRational),
    /// A root of `poly` isolated to `root`, and the exact bound evaluated at `at`.
    Root { poly: Polynomial, root: RootInterval, at: BigRational, value: BigRational },
    /// The counts used and the interval holding `1/h`.
    Counts { cs: Vec<BigInt>, root: RootInterval },
    /// Counts used by an estimate.
    Data(Vec<u64>),
}

/// A bound, stored in hundredths after outward rounding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub hundredths: i64,
    pub rounding: Rounding,
    pub method: Method,
    pub witness: Witness,
}

impl BoundReport {
    pub fn value(&self) -> f64 {
        self.hundredths as f64 / 100.0
    }

    /// The value with exactly two decimals.
    pub fn value_string(&self) -> String {
        alloc::format!("{}", Hundredths(self.hundredths))
    }
}

struct Hundredths(i64);

impl fmt::Display for Hundredths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let a = self.0.unsigned_abs();
        write!(f, "{sign}{}.{:02}", a / 100, a % 100)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundError {
    /// `15 P - x P'` has no positive root.
    NoPositiveRoot,
    /// No positive count to build a lower bound from.
    NoCounts,
    /// A size tuple does not cover all positions.
    Tuple(&'static str),
}

impl fmt::Display for BoundError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundError::NoPositiveRoot => f.write_str("the stationarity polynomial has no positive root"),
            BoundError::NoCounts => f.write_str("no positive bottleneck-free count given"),
            BoundError::Tuple(why) => f.write_str(why),
        }
    }
}

pub fn round_up(v: &BigRational) -> i64 {
    i64::try_from((v * rat(100)).ceil().to_integer()).expect("bound fits in i64")
}

pub fn round_down(v: &BigRational) -> i64 {
    i64::try_from((v * rat(100)).floor().to_integer()).expect("bound fits in i64")
}

/// Width of root intervals.
pub fn tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64))
}

fn ratio_pow(num: u64, e1: u32, den: u64, e2: u32) -> BigRational {
    BigRational::new(Pow::pow(BigInt::from(num), e1), Pow::pow(BigInt::from(den), e2))
}

/// `s^(e+1) / (s-1)^(e-1)` with `s = e = 2bw`, or `s = b^2, e = 2b^2` for
/// square bricks. The 1x1 brick has only towers, so `h = 1`.
pub fn crude_upper_bound(shape: BrickShape) -> BoundReport {
    let s = if shape.is_square() { shape.studs() } else { 2 * shape.studs() } as u64;
    let e = 2 * shape.studs();
    if s == 1 {
        return BoundReport {
            kind: BoundKind::Exact,
            hundredths: 100,
            rounding: Rounding::Exact,
            method: Method::CrudeUpper,
            witness: Witness::Value(rat(1)),
        };
    }
    let v = ratio_pow(s, e + 1, s - 1, e - 1);
    BoundReport {
        kind: BoundKind::Upper,
        hundredths: round_up(&v),
        rounding: Rounding::Up,
        method: Method::CrudeUpper,
        witness: Witness::Value(v),
    }
}

/// The single-contact count, `h >= (2b-1)(2w-1) + (b+w-1)^2`.
pub fn crude_lower_bound(shape: BrickShape) -> BoundReport {
    let p = shape.contact_count();
    let exact = p == 1;
    BoundReport {
        kind: if exact { BoundKind::Exact } else { BoundKind::Lower },
        hundredths: 100 * p as i64,
        rounding: Rounding::Exact,
        method: Method::CrudeLower,
        witness: Witness::Value(BigRational::from_integer(BigInt::from(p))),
    }
}

/// Size tuples for the stud partitions of the 2x4 brick: `top` bounds the
/// class sizes over all 46 positions, `reduced` those over the 30 positions
/// left once one stud is known to be taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionSpec {
    pub top: [u32; 8],
    pub reduced: [u32; 8],
}

impl PartitionSpec {
    /// Six per stud on the open side, six on five studs on the reduced side.
    pub const EVEN: PartitionSpec = PartitionSpec { top: [6; 8], reduced: [6, 6, 6, 6, 6, 0, 0, 0] };
    /// The even partition with its two classes of five.
    pub const REFINED: PartitionSpec =
        PartitionSpec { top: [5, 5, 6, 6, 6, 6, 6, 6], reduced: [6, 6, 6, 6, 6, 0, 0, 0] };
    pub const UNEVEN: PartitionSpec =
        PartitionSpec { top: [16, 15, 7, 5, 2, 1, 0, 0], reduced: [15, 7, 4, 3, 1, 0, 0, 0] };

    pub fn new(top: [u32; 8], reduced: [u32; 8]) -> Result<Self, BoundError> {
        if top.iter().sum::<u32>() < 46 {
            return Err(BoundError::Tuple("open-side sizes must add up to at least 46"));
        }
        if reduced.iter().sum::<u32>() < 30 {
            return Err(BoundError::Tuple("reduced sizes must add up to at least 30"));
        }
        Ok(PartitionSpec { top, reduced })
    }

    /// `P_0(y) = (y + a_1)..(y + a_8)`.
    pub fn p0(&self) -> Polynomial {
        Polynomial::from_shifts(&self.top.map(i64::from))
    }

    /// `P(y) = P_0(y) (y + b_1)..(y + b_8)`.
    pub fn p(&self) -> Polynomial {
        &self.p0() * &Polynomial::from_shifts(&self.reduced.map(i64::from))
    }

    /// Looks for actual partitions of the 2x4 positions with these sizes.
    pub fn find_witness(&self) -> Option<PartitionWitness> {
        partition::find_witness(&Positions::new(BrickShape::TWO_BY_FOUR), &self.top, &self.reduced)
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |t: &[u32; 8], f: &mut fmt::Formatter<'_>| {
            for (i, v) in t.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        };
        join(&self.top, f)?;
        f.write_str(";")?;
        join(&self.reduced, f)
    }
}

impl core::str::FromStr for PartitionSpec {
    type Err = BoundError;

    /// Parses `"a1,..,a8;b1,..,b8"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = BoundError::Tuple("expected two lists of eight non-negative integers separated by ';'");
        let (a, b) = s.split_once(';').ok_or(bad.clone())?;
        let parse = |t: &str| -> Option<[u32; 8]> {
            let v: Vec<u32> = t.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
            v.try_into().ok()
        };
        let (top, reduced) = (parse(a).ok_or(bad.clone())?, parse(b).ok_or(bad)?);
        PartitionSpec::new(top, reduced)
    }
}

/// `15 P(x) - x P'(x)`.
pub fn stationarity(p: &Polynomial) -> Polynomial {
    &p.scale(&rat(15)) - &(&Polynomial::x() * &p.derivative())
}

/// `h <= P(x_0) / x_0^15` at the largest root `x_0` of `15 P - x P'`.
pub fn partition_upper_bound(spec: &PartitionSpec) -> Result<BoundReport, BoundError> {
    let p = spec.p();
    let q = stationarity(&p);
    let root = largest_root_above(&q, &BigRational::zero(), &tolerance()).ok_or(BoundError::NoPositiveRoot)?;
    let at = root.hi.clone();
    let value = p.eval(&at) / Pow::pow(&at, 15u32);
    Ok(BoundReport {
        kind: BoundKind::Upper,
        hundredths: round_up(&value),
        rounding: Rounding::Up,
        method: Method::Partition { top: spec.top, reduced: spec.reduced },
        witness: Witness::Root { poly: q, root, at, value },
    })
}

/// `6 * 13^13 / 12^12`.
pub fn even_closed_form() -> BigRational {
    ratio_pow(13, 13, 12, 12) * rat(6)
}

/// Checks in exact arithmetic that 72 is the largest root of the even
/// stationarity polynomial and that the bound there is `6 * 13^13 / 12^12`.
pub fn even_symbolic_check() -> bool {
    let p = PartitionSpec::EVEN.p();
    let q = stationarity(&p);
    let x0 = rat(72);
    let sturm = Sturm::new(&q);
    let bound = q.root_bound() + rat(1);
    q.eval(&x0).is_zero() && sturm.count_in(&x0, &bound) == 0 && p.eval(&x0) / Pow::pow(&x0, 15u32) == even_closed_form()
}

/// The degree-8 factor of the uneven stationarity polynomial.
pub fn uneven_r() -> Polynomial {
    Polynomial::from_ints(&[-2016000, -4392600, -3645736, -1504645, -332657, -38700, -2056, -23, 1])
}

/// Largest real root of [`uneven_r`].
pub fn uneven_r_root() -> RootInterval {
    largest_root_above(&uneven_r(), &BigRational::zero(), &tolerance()).expect("R has a positive root")
}

/// Coefficient of `y^(15n - 31)` in `P_0(y)^2 P(y)^(n-3)`, which bounds `a_n`.
pub fn dominance_coefficient(spec: &PartitionSpec, n: usize) -> BigInt {
    assert!(n >= 3, "defined for n >= 3");
    let p0 = spec.p0();
    let f = &(&p0 * &p0) * &spec.p().pow(n as u32 - 3);
    f.coeff(15 * n - 31).to_integer()
}

pub fn coefficient_dominance_check(spec: &PartitionSpec, n: usize, a_n: u64) -> bool {
    dominance_coefficient(spec, n) >= BigInt::from(a_n)
}

/// `C(13n - 23, n - 1) * 6^(n-1)`, the even-partition bound on `a_n`.
pub fn six_bound(n: u64) -> BigInt {
    assert!(n >= 2, "defined for n >= 2");
    binomial(13 * n - 23, n - 1) * Pow::pow(BigInt::from(6), (n - 1) as u32)
}

fn sum_poly(cs: &[BigInt]) -> Polynomial {
    let mut coeffs = vec![BigRational::zero()];
    coeffs.extend(cs.iter().map(|c| BigRational::from_integer(c.clone())));
    Polynomial::new(coeffs)
}

/// Upper end of the search interval for `1/h`: where the first term alone reaches 1.
fn start_hi(cs: &[BigInt]) -> BigRational {
    match cs.first() {
        Some(c) if c.is_positive() => BigRational::new(BigInt::one(), c.clone()),
        _ => rat(1),
    }
}

fn lower_report(cs: &[BigInt], root: RootInterval, method: Method) -> BoundReport {
    let h = root.hi.recip();
    BoundReport {
        kind: BoundKind::Lower,
        hundredths: round_down(&h),
        rounding: Rounding::Down,
        method,
        witness: Witness::Counts { cs: cs.to_vec(), root },
    }
}

/// `h >= 1/x*` where `c_1 x + .. + c_n x^n = 1` at `x*`; `cs[i]` is `c_{i+1}`.
pub fn lower_bound_from_c(cs: &[BigInt]) -> Result<BoundReport, BoundError> {
    if cs.iter().any(|c| c.is_negative()) || cs.iter().all(|c| c.is_zero()) {
        return Err(BoundError::NoCounts);
    }
    let f = sum_poly(cs);
    let root = bisect_increasing(|x| f.eval(x), &rat(1), BigRational::zero(), start_hi(cs), &tolerance());
    Ok(lower_report(cs, root, Method::BottleneckSum { terms: cs.len() }))
}

/// Like [`lower_bound_from_c`], with the tail `c_{k+2j} >= growth^j c_k`
/// added for the last two given counts. The tail sums to
/// `growth (c_{n-1} x^(n+1) + c_n x^(n+2)) / (1 - growth x^2)`.
pub fn lower_bound_with_tail(cs: &[BigInt], growth: u64) -> Result<BoundReport, BoundError> {
    if growth == 0 || cs.len() < 2 {
        let mut r = lower_bound_from_c(cs)?;
        r.method = Method::BottleneckTail { terms: cs.len(), growth };
        return Ok(r);
    }
    if cs.iter().any(|c| c.is_negative()) || cs.iter().all(|c| c.is_zero()) {
        return Err(BoundError::NoCounts);
    }
    let n = cs.len();
    let head = sum_poly(cs);
    let g = BigRational::from_integer(BigInt::from(growth));
    let tail_num = Polynomial::new(
        (0..=n + 2)
            .map(|k| match k {
                _ if k == n + 1 => BigRational::from_integer(cs[n - 2].clone()) * &g,
                _ if k == n + 2 => BigRational::from_integer(cs[n - 1].clone()) * &g,
                _ => BigRational::zero(),
            })
            .collect(),
    );
    let r = |x: &BigRational| -> BigRational {
        let den = rat(1) - &g * x * x;
        head.eval(x) + tail_num.eval(x) / den
    };
    // Bracket the pole at 1/sqrt(growth) from below.
    let s = growth_sqrt_floor(growth);
    let mut below = BigRational::new(BigInt::one(), BigInt::from(s + 1));
    let mut above = BigRational::new(BigInt::one(), BigInt::from(s.max(1)));
    let mut hi = start_hi(cs);
    if hi > below {
        hi = below.clone();
    }
    let two = rat(2);
    while r(&hi) < rat(1) {
        // Move towards the pole, where r grows without bound.
        let mid = (&below + &above) / &two;
        if &g * &mid * &mid < rat(1) {
            below = mid;
        } else {
            above = mid;
        }
        hi = below.clone();
    }
    let root = bisect_increasing(r, &rat(1), BigRational::zero(), hi, &tolerance());
    Ok(lower_report(cs, root, Method::BottleneckTail { terms: n, growth }))
}

fn growth_sqrt_floor(g: u64) -> u64 {
    let mut s = libm::sqrt(g as f64) as u64;
    while s * s > g {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= g {
        s += 1;
    }
    s
}

/// The best of several partition bounds; ties go to the smaller spec.
pub fn best_partition(candidates: &[PartitionSpec]) -> Option<(PartitionSpec, BoundReport)> {
    let mut best: Option<(PartitionSpec, BoundReport)> = None;
    for spec in candidates {
        let Ok(r) = partition_upper_bound(spec) else { continue };
        let better = match &best {
            None => true,
            Some((s, b)) => r.hundredths < b.hundredths || (r.hundredths == b.hundredths && spec < s),
        };
        if better {
            best = Some((*spec, r));
        }
    }
    best
}

/// Known bottleneck-free counts `c_1..c_6` of the 2x4 brick.
pub const C_2X4: [u64; 6] = [46, 0, 74130, 867346, 318434429, 18335373238];

/// Ratio in `c_{n+2} >= 1248 c_n` for the 2x4 brick.
pub const GROWTH_2X4: u64 = 1248;

/// Rigorous bounds for `shape` from every applicable method, followed by
/// non-rigorous estimates from the totals `ts[i] = T(i + 1)`.
pub fn entropy_summary(shape: BrickShape, cs: &[u64], ts: &[u64]) -> Vec<BoundReport> {
    let mut out = vec![crude_lower_bound(shape)];
    if shape.contact_count() == 1 {
        out.push(crude_upper_bound(shape));
        return out;
    }
    let big: Vec<BigInt> = cs.iter().map(|&c| BigInt::from(c)).collect();
    if shape == BrickShape::TWO_BY_FOUR {
        for k in [3, cs.len()] {
            if k >= 1 && k <= big.len() {
                if let Ok(r) = lower_bound_from_c(&big[..k]) {
                    out.push(r);
                }
            }
        }
        if big.len() >= 6 {
            if let Ok(r) = lower_bound_with_tail(&big[..6], GROWTH_2X4) {
                out.push(r);
            }
        }
    }
    out.push(crude_upper_bound(shape));
    if shape == BrickShape::TWO_BY_FOUR {
        for spec in [PartitionSpec::EVEN, PartitionSpec::REFINED, PartitionSpec::UNEVEN] {
            if let Ok(r) = partition_upper_bound(&spec) {
                out.push(r);
            }
        }
    }
    for (i, &t) in ts.iter().enumerate() {
        let n = i + 1;
        if n >= 2 && t > 0 {
            let slope = libm::exp(libm::log(t as f64) / n as f64);
            out.push(estimate(slope, Method::LogSlope { n }, vec![t]));
            if ts[i - 1] > 0 {
                let ratio = t as f64 / ts[i - 1] as f64;
                out.push(estimate(ratio, Method::SuccessiveRatio { n }, vec![ts[i - 1], t]));
            }
        }
    }
    out
}

fn estimate(v: f64, method: Method, data: Vec<u64>) -> BoundReport {
    BoundReport {
        kind: BoundKind::Estimate,
        hundredths: libm::round(v * 100.0) as i64,
        rounding: Rounding::Nearest,
        method,
        witness: Witness::Data(data),
    }
}

/// Best rigorous interval `[lower, upper]` in a summary.
pub fn interval(reports: &[BoundReport]) -> Option<(i64, i64)> {
    let lo = reports
        .iter()
        .filter(|r| matches!(r.kind, BoundKind::Lower | BoundKind::Exact))
        .map(|r| r.hundredths)
        .max()?;
    let hi = reports
        .iter()
        .filter(|r| matches!(r.kind, BoundKind::Upper | BoundKind::Exact))
        .map(|r| r.hundredths)
        .min()?;
    Some((lo, hi))
}

/// Midpoint of a root interval as a float, for display.
pub fn approx(root: &RootInterval) -> f64 {
    root.midpoint_f64()
}

/// A rational as a float, for display.
pub fn approx_value(v: &BigRational) -> f64 {
    to_f64(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(cs: &[u64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn crude() {
        let s = BrickShape::TWO_BY_FOUR;
        let up = crude_upper_bound(s);
        assert_eq!(up.witness, Witness::Value(ratio_pow(16, 17, 15, 15)));
        assert_eq!(up.value_string(), "674.02");
        assert_eq!(crude_lower_bound(s).hundredths, 4600);
        let one = BrickShape::new(1, 1).unwrap();
        assert_eq!(crude_upper_bound(one).kind, BoundKind::Exact);
        assert_eq!(crude_upper_bound(one).hundredths, 100);
        assert_eq!(crude_lower_bound(one).hundredths, 100);
        let sq = BrickShape::new(2, 2).unwrap();
        assert_eq!(crude_upper_bound(sq).witness, Witness::Value(ratio_pow(4, 9, 3, 7)));
        assert_eq!(crude_lower_bound(sq).hundredths, 900);
    }

    #[test]
    fn partition_ladder() {
        let even = partition_upper_bound(&PartitionSpec::EVEN).unwrap();
        assert_eq!(even.value_string(), "203.82");
        if let Witness::Root { root, .. } = &even.witness {
            assert!(root.lo < rat(72) && rat(72) <= root.hi);
        } else {
            panic!("root witness");
        }
        assert!(even_symbolic_check());
        assert_eq!(partition_upper_bound(&PartitionSpec::REFINED).unwrap().value_string(), "198.57");
        assert_eq!(partition_upper_bound(&PartitionSpec::UNEVEN).unwrap().value_string(), "191.35");
    }

    #[test]
    fn uneven_factorization() {
        let q = stationarity(&PartitionSpec::UNEVEN.p());
        let mut f = &Polynomial::from_shifts(&[15, 7, 1]) * &uneven_r();
        f = f.shift(5).scale(&rat(-1));
        assert_eq!(q, f);
        let r = uneven_r_root();
        assert!(r.lo >= BigRational::new(BigInt::from(6504), BigInt::from(100)));
        assert!(r.hi <= BigRational::new(BigInt::from(6506), BigInt::from(100)));
    }

    #[test]
    fn dominance() {
        assert_eq!(six_bound(3), BigInt::from(4320));
        assert!(coefficient_dominance_check(&PartitionSpec::EVEN, 3, 2596));
        let c3 = dominance_coefficient(&PartitionSpec::EVEN, 3);
        assert!(c3 <= six_bound(3));
    }

    #[test]
    fn lower_ladder() {
        let r3 = lower_bound_from_c(&big(&C_2X4[..3])).unwrap();
        assert_eq!(r3.value_string(), "64.06");
        let r6 = lower_bound_from_c(&big(&C_2X4)).unwrap();
        assert_eq!(r6.value_string(), "76.67");
        let tail = lower_bound_with_tail(&big(&C_2X4), GROWTH_2X4).unwrap();
        assert!(tail.hundredths >= 7832, "{}", tail.value_string());
        assert_eq!(lower_bound_from_c(&big(&[46])).unwrap().hundredths, 4600);
        assert_eq!(lower_bound_with_tail(&big(&C_2X4), 0).unwrap().hundredths, r6.hundredths);
        let one = lower_bound_with_tail(&big(&C_2X4), 1).unwrap();
        assert!(one.hundredths >= r6.hundredths);
        assert_eq!(lower_bound_from_c(&big(&[0, 0])), Err(BoundError::NoCounts));
    }

    #[test]
    fn lower_root_residual() {
        let cs = big(&C_2X4[..3]);
        let r = lower_bound_from_c(&cs).unwrap();
        let Witness::Counts { root, .. } = r.witness else { panic!() };
        let v = sum_poly(&cs).eval(&root.lo);
        assert!(v <= rat(1));
        assert!(v >= rat(1) - BigRational::new(BigInt::one(), BigInt::from(1_000_000)));
    }

    #[test]
    fn summary_orders() {
        let s = entropy_summary(BrickShape::TWO_BY_FOUR, &C_2X4, &[1, 24, 1560, 119580]);
        let (lo, hi) = interval(&s).unwrap();
        assert!(lo >= 7832 && hi == 19135, "{lo} {hi}");
        let one = entropy_summary(BrickShape::new(1, 1).unwrap(), &[], &[]);
        assert_eq!(interval(&one), Some((100, 100)));
    }

    #[test]
    fn spec_parsing() {
        let s: PartitionSpec = "16,15,7,5,2,1,0,0;15,7,4,3,1,0,0,0".parse().unwrap();
        assert_eq!(s, PartitionSpec::UNEVEN);
        assert_eq!(alloc::format!("{s}").parse::<PartitionSpec>().unwrap(), s);
        assert!("1,2;3".parse::<PartitionSpec>().is_err());
        assert!("1,1,1,1,1,1,1,1;6,6,6,6,6,0,0,0".parse::<PartitionSpec>().is_err());
    }

    #[test]
    fn tuples_are_realizable() {
        for spec in [PartitionSpec::EVEN, PartitionSpec::REFINED] {
            let w = spec.find_witness().expect("witness");
            assert_eq!(w.reduced.len(), 8);
        }
        // The uneven open side is realizable, its reduced side is not: a
        // class of 15 avoiding a middle stud does not exist.
        let p = Positions::new(BrickShape::TWO_BY_FOUR);
        let all: Vec<usize> = (0..46).collect();
        assert!(partition::search_assignment(&p, &all, &PartitionSpec::UNEVEN.top).is_some());
        assert!(partition::search_assignment(&p, &p.avoiding(1), &PartitionSpec::UNEVEN.reduced).is_none());
        assert!(PartitionSpec::UNEVEN.find_witness().is_none());
    }

    #[test]
    fn best_of_three() {
        let (spec, r) = best_partition(&[PartitionSpec::EVEN, PartitionSpec::UNEVEN, PartitionSpec::REFINED]).unwrap();
        assert_eq!(spec, PartitionSpec::UNEVEN);
        assert_eq!(r.hundredths, 19135);
    }
}
