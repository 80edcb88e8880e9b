//! Rational intervals, real algebraic numbers with isolating intervals,
//! Sturm sequences and a Schur–Cohn zero count for disks.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::poly::PolyInt;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_int(x: &BigInt) -> Self {
        Interval::point(BigRational::from_integer(x.clone()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether `x ± tol` meets the interval, with `x` and `tol` as floats.
    pub fn contains_f64(&self, x: f64, tol: f64) -> bool {
        let lo = self.lo.to_f64().unwrap_or(f64::NAN);
        let hi = self.hi.to_f64().unwrap_or(f64::NAN);
        lo <= x + tol && x - tol <= hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn abs_upper(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::InvalidArgument("reciprocal of an interval containing 0".into()));
        }
        Ok(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Outward-rounded decimal endpoints with `digits` fractional digits.
    pub fn decimal_bounds(&self, digits: u32) -> (String, String) {
        (decimal_floor(&self.lo, digits), decimal_ceil(&self.hi, digits))
    }
}

impl Add for &Interval {
    type Output = Interval;

    fn add(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;

    fn sub(self, rhs: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;

    fn mul(self, rhs: &Interval) -> Interval {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl Div for &Interval {
    type Output = Result<Interval>;

    fn div(self, rhs: &Interval) -> Result<Interval> {
        Ok(self * &rhs.recip()?)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.decimal_bounds(12);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (lo, hi) = self.decimal_bounds(20);
        [lo, hi].serialize(s)
    }
}

fn scaled_floor(q: &BigRational, digits: u32) -> BigInt {
    let scale = BigInt::from(10).pow(digits);
    (q * BigRational::from_integer(scale)).floor().to_integer()
}

fn format_scaled(v: &BigInt, digits: u32) -> String {
    let neg = v.is_negative();
    let s = v.abs().to_string();
    let d = digits as usize;
    let s = if s.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Largest decimal with `digits` fractional digits that is `≤ q`.
pub fn decimal_floor(q: &BigRational, digits: u32) -> String {
    format_scaled(&scaled_floor(q, digits), digits)
}

/// Smallest decimal with `digits` fractional digits that is `≥ q`.
pub fn decimal_ceil(q: &BigRational, digits: u32) -> String {
    format_scaled(&-scaled_floor(&-q, digits), digits)
}

/// Sturm sequence `p, p', −rem(…)…`, each term scaled by a positive factor.
pub fn sturm_sequence(p: &PolyInt) -> Vec<PolyInt> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() && seq.last().unwrap().degree() > Some(0) {
        let n = seq.len();
        let r = -&seq[n - 2].signed_prem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq.retain(|q| !q.is_zero());
    seq
}

/// Whether `p` has no repeated complex roots: the last Sturm remainder,
/// a multiple of `gcd(p, p')`, is constant.
pub fn is_squarefree(p: &PolyInt) -> bool {
    sturm_sequence(p).last().map_or(false, |q| q.degree() == Some(0))
}

fn sign_changes(seq: &[PolyInt], x: &BigRational) -> usize {
    let signs: Vec<i32> = seq.iter().map(|q| q.sign_at(x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(lo, hi]`.
pub fn count_real_roots(p: &PolyInt, lo: &BigRational, hi: &BigRational) -> usize {
    let seq = sturm_sequence(p);
    sign_changes(&seq, lo).saturating_sub(sign_changes(&seq, hi))
}

/// Number of zeros of `p` in the open disk `|z| < rho`, by the Schur–Cohn
/// recursion in exact arithmetic. `None` in the singular case (a vanishing
/// Schur determinant, e.g. a zero on the circle).
pub fn zeros_in_disk(p: &PolyInt, rho: &BigRational) -> Option<usize> {
    let mut a: Vec<BigRational> = Vec::with_capacity(p.coeffs().len());
    let mut power = BigRational::one();
    for c in p.coeffs() {
        a.push(BigRational::from_integer(c.clone()) * &power);
        power *= rho;
    }
    let n = a.len().checked_sub(1)?;
    let mut negative = 0;
    let mut product = BigRational::one();
    for _ in 0..n {
        let m = a.len() - 1;
        let next: Vec<BigRational> = (0..m).map(|i| &a[0] * &a[i] - &a[m] * &a[m - i]).collect();
        let delta = next[0].clone();
        if delta.is_zero() {
            return None;
        }
        product *= &delta;
        if product.is_negative() {
            negative += 1;
        }
        a = next;
    }
    Some(negative)
}

/// Largest-modulus certificate: the smallest `k ≤ max_k` such that all but
/// `outside` zeros of `p` lie in `|z| < 1 − 2^−k`.
pub fn certify_inner_zeros(p: &PolyInt, outside: usize, max_k: u32) -> Result<BigRational> {
    let deg = p.degree().unwrap_or(0);
    let want = deg
        .checked_sub(outside)
        .ok_or_else(|| Error::InvalidArgument("too many outer zeros".into()))?;
    for k in 1..=max_k {
        let rho = BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << k);
        if zeros_in_disk(p, &rho) == Some(want) {
            return Ok(rho);
        }
    }
    Err(Error::RootIsolation(format!(
        "could not confine {want} zeros of {p} to a disk of radius < 1"
    )))
}

/// A real root of an integer polynomial, isolated in `(lo, hi)` with
/// `p(lo)` and `p(hi)` of opposite signs, or pinned when rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicNumber {
    poly: PolyInt,
    interval: Interval,
    sign_lo: i32,
}

impl AlgebraicNumber {
    /// Isolates the unique root of `p` in `(lo, hi)`; both the sign change
    /// and uniqueness (Sturm count) are certified.
    pub fn isolate(p: &PolyInt, lo: BigRational, hi: BigRational) -> Result<Self> {
        let (slo, shi) = (p.sign_at(&lo), p.sign_at(&hi));
        if slo == 0 || shi == 0 || slo == shi {
            return Err(Error::RootIsolation(format!("{p} has no sign change on [{lo}, {hi}]")));
        }
        let count = count_real_roots(p, &lo, &hi);
        if count != 1 {
            return Err(Error::RootIsolation(format!("{p} has {count} roots in ({lo}, {hi}]")));
        }
        Ok(AlgebraicNumber {
            poly: p.clone(),
            interval: Interval { lo, hi },
            sign_lo: slo,
        })
    }

    pub fn isolate_ints(p: &PolyInt, lo: i64, hi: i64) -> Result<Self> {
        AlgebraicNumber::isolate(p, rat(lo, 1), rat(hi, 1))
    }

    pub fn poly(&self) -> &PolyInt {
        &self.poly
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn lo(&self) -> &BigRational {
        &self.interval.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.interval.hi
    }

    pub fn width(&self) -> BigRational {
        self.interval.width()
    }

    pub fn to_f64(&self) -> f64 {
        self.interval.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.interval.lo == self.interval.hi {
            return;
        }
        let mid = self.interval.midpoint();
        let s = self.poly.sign_at(&mid);
        if s == 0 {
            self.interval = Interval::point(mid);
        } else if s == self.sign_lo {
            self.interval.lo = mid;
        } else {
            self.interval.hi = mid;
        }
    }

    /// Bisects until the width is at most `width`.
    pub fn refine_to(&mut self, width: &BigRational) {
        while &self.width() > width {
            self.bisect();
        }
    }

    pub fn refine_bits(&mut self, bits: u32) {
        self.refine_to(&BigRational::new(BigInt::one(), BigInt::one() << bits));
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        if q <= &self.interval.lo && self.interval.lo != self.interval.hi {
            return Ordering::Greater;
        }
        if q >= &self.interval.hi && self.interval.lo != self.interval.hi {
            return Ordering::Less;
        }
        if self.interval.lo == self.interval.hi {
            return self.interval.lo.cmp(q);
        }
        let s = self.poly.sign_at(q);
        if s == 0 {
            Ordering::Equal
        } else if s == self.sign_lo {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in {}", self.poly, self.interval)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> PolyInt {
        PolyInt::from_i64s(c)
    }

    #[test]
    fn sqrt_two() {
        let mut a = AlgebraicNumber::isolate_ints(&p(&[-2, 0, 1]), 1, 2).unwrap();
        a.refine_bits(40);
        assert!(a.interval().contains_f64(std::f64::consts::SQRT_2, 0.0));
        assert!((a.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-11);
        assert_eq!(a.cmp_rational(&rat(141, 100)), Ordering::Greater);
        assert_eq!(a.cmp_rational(&rat(142, 100)), Ordering::Less);
    }

    #[test]
    fn rational_root_is_pinned() {
        let mut a = AlgebraicNumber::isolate(&p(&[-1, 2]), rat(0, 1), rat(1, 1)).unwrap();
        a.refine_bits(10);
        assert_eq!(a.width(), BigRational::zero());
        assert_eq!(a.cmp_rational(&rat(1, 2)), Ordering::Equal);
    }

    #[test]
    fn isolation_failures() {
        assert!(AlgebraicNumber::isolate_ints(&p(&[-2, 0, 1]), 2, 3).is_err());
        // three roots 0.5, 1, 1.5 of a cubic, all in (0, 2)
        let cubic = &(&p(&[-1, 2]) * &p(&[-1, 1])) * &p(&[-3, 2]);
        assert_eq!(count_real_roots(&cubic, &rat(0, 1), &rat(2, 1)), 3);
        assert!(AlgebraicNumber::isolate_ints(&(&p(&[-1, 2]) * &p(&[-3, 2])), 0, 2).is_err());
    }

    #[test]
    fn sturm_counts() {
        let q = p(&[-1, -2, 1]); // 1 ± √2
        assert_eq!(count_real_roots(&q, &rat(-10, 1), &rat(10, 1)), 2);
        assert_eq!(count_real_roots(&q, &rat(0, 1), &rat(10, 1)), 1);
    }

    #[test]
    fn schur_cohn_counts() {
        assert_eq!(zeros_in_disk(&p(&[-1, 2]), &BigRational::one()), Some(1));
        assert_eq!(zeros_in_disk(&p(&[-3, 1]), &BigRational::one()), Some(0));
        assert_eq!(zeros_in_disk(&p(&[1, 0, 4]), &BigRational::one()), Some(2));
        // a zero on the circle is the singular case
        assert_eq!(zeros_in_disk(&p(&[-1, 1]), &BigRational::one()), None);
        assert_eq!(zeros_in_disk(&p(&[-1, 1]), &rat(1, 2)), Some(0));
        assert_eq!(zeros_in_disk(&p(&[-1, 1]), &rat(2, 1)), Some(1));
    }

    #[test]
    fn interval_arithmetic() {
        let a = Interval::new(rat(1, 1), rat(2, 1)).unwrap();
        let b = Interval::new(rat(-1, 1), rat(3, 1)).unwrap();
        let prod = &a * &b;
        assert_eq!((prod.lo().clone(), prod.hi().clone()), (rat(-2, 1), rat(6, 1)));
        assert!((&a / &b).is_err());
        let q = (&b / &a).unwrap();
        assert_eq!((q.lo().clone(), q.hi().clone()), (rat(-1, 1), rat(3, 1)));
        assert!(Interval::new(rat(1, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn decimals_round_outward() {
        let x = rat(2, 3);
        assert_eq!(decimal_floor(&x, 4), "0.6666");
        assert_eq!(decimal_ceil(&x, 4), "0.6667");
        assert_eq!(decimal_floor(&-x.clone(), 2), "-0.67");
        assert_eq!(decimal_ceil(&rat(5, 1), 2), "5.00");
        assert_eq!(decimal_floor(&rat(123, 1000), 0), "0");
    }
}
