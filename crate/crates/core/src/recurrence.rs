//! Parikh-vector series of the bispecial factors of `u_{2d+1}` and their
//! shortest return words, the closed form of `f_n`, the componentwise
//! dominance of non-palindromic series, and the weighted inequality
//! `(3 − Λ)·h·w ≤ h·r` certified with exact rationals and a refined Λ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factors::FactorIndex;
use crate::matrix::{to_rational_vec, IntMatrix, RatMatrix};
use crate::spectral::{h_weights, lambda_factor, phi_matrix, AlgebraicNumber, Interval};
use crate::word::{parikh, serialize_rational, ParikhVector, Rational, Word};

/// Λ is refined until a decision is reached or its interval is narrower
/// than `2^-MAX_PRECISION_BITS`.
pub const MAX_PRECISION_BITS: u32 = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `F_n` for `n < 2d`.
    Type0,
    TypeI,
    TypeII,
    /// Non-palindromic series starting at `F_k(2d)`, `1 ≤ k ≤ 2d − 1`.
    NonPal(usize),
}

impl Family {
    pub fn all(d: usize) -> Vec<Family> {
        let mut out = vec![Family::Type0, Family::TypeI, Family::TypeII];
        out.extend((1..2 * d).map(Family::NonPal));
        out
    }

    pub fn is_palindromic(self) -> bool {
        !matches!(self, Family::NonPal(_))
    }

    /// Largest index in the family, if finite.
    pub fn last_index(self, d: usize) -> Option<usize> {
        match self {
            Family::Type0 => Some(2 * d - 1),
            _ => None,
        }
    }

    fn check(self, d: usize) -> Result<()> {
        if d == 0 {
            return Err(Error::InvalidArgument("d must be at least 1".into()));
        }
        match self {
            Family::NonPal(k) if k == 0 || k >= 2 * d => Err(Error::InvalidArgument(format!(
                "NonPal({k}) needs 1 ≤ k ≤ {}",
                2 * d - 1
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Type0 => f.write_str("Type0"),
            Family::TypeI => f.write_str("TypeI"),
            Family::TypeII => f.write_str("TypeII"),
            Family::NonPal(k) => write!(f, "NonPal({k})"),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn unit(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::one();
    v
}

fn vadd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vle(a: &[BigInt], b: &[BigInt]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn dot(h: &[BigInt], x: &[BigInt]) -> BigInt {
    h.iter().zip(x).map(|(a, b)| a * b).sum()
}

fn pow_vec(m: &IntMatrix, mut x: Vec<BigInt>, n: usize) -> Vec<BigInt> {
    for _ in 0..n {
        x = m.mul_vec(&x);
    }
    x
}

fn pv(v: Vec<BigInt>) -> ParikhVector {
    ParikhVector::from_counts(v).expect("series vectors are non-negative")
}

fn fail(family: impl fmt::Display, n: usize, detail: impl Into<String>) -> Error {
    Error::CheckFailed {
        family: family.to_string(),
        n,
        detail: detail.into(),
    }
}

/// Addend of the step to index `n`.
fn addend(family: Family, d: usize, n: usize) -> Vec<BigInt> {
    let mut a = unit(2 * d + 1, 0);
    let r = n % (2 * d);
    match family {
        Family::NonPal(k) => {
            if r == 0 || r == 2 * d - k {
                a[2 * d] += 1;
            }
        }
        _ => {
            if r == 0 {
                a[2 * d] += 2;
            }
        }
    }
    a
}

/// `f_0, …, f_{n_max}` for the matrix `m`.
fn f_sequence(m: &IntMatrix, d: usize, n_max: usize) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::zero(); 2 * d + 1]];
    for n in 1..=n_max {
        let next = vadd(&m.mul_vec(&out[n - 1]), &addend(Family::TypeI, d, n));
        out.push(next);
    }
    out
}

/// `f_n` from its defining recurrence.
pub fn f_vector(d: usize, n: usize) -> Result<ParikhVector> {
    let m = phi_matrix(d)?;
    Ok(pv(f_sequence(&m, d, n).swap_remove(n)))
}

/// A bispecial factor's Parikh vector `w` and its shortest return word's
/// Parikh vector `r`. For non-palindromic series the return word is only
/// known to dominate `r` or `r_alt`; both candidates are carried.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesState {
    pub family: Family,
    pub d: usize,
    pub n: usize,
    pub w: ParikhVector,
    pub r: ParikhVector,
    pub r_alt: Option<ParikhVector>,
}

impl SeriesState {
    pub fn seed(family: Family, d: usize) -> Result<Self> {
        family.check(d)?;
        Self::seed_with(family, d, &phi_matrix(d)?)
    }

    pub fn seed_with(family: Family, d: usize, m: &IntMatrix) -> Result<Self> {
        family.check(d)?;
        let dim = 2 * d + 1;
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::Dimension(format!("expected a {dim}×{dim} matrix")));
        }
        let top = 2 * d;
        let (w, r, r_alt) = match family {
            Family::Type0 => (vec![BigInt::zero(); dim], unit(dim, 0), None),
            Family::TypeI => (unit(dim, top), unit(dim, top), None),
            Family::TypeII => (
                f_sequence(m, d, top).swap_remove(top),
                pow_vec(m, unit(dim, 0), top),
                None,
            ),
            Family::NonPal(k) => {
                let w = vadd(&f_sequence(m, d, k)[k], &unit(dim, top));
                (w, pow_vec(m, unit(dim, top), k), Some(pow_vec(m, unit(dim, 0), top)))
            }
        };
        Ok(SeriesState {
            family,
            d,
            n: 0,
            w: pv(w),
            r: pv(r),
            r_alt: r_alt.map(pv),
        })
    }

    pub fn step(&self, m: &IntMatrix) -> Result<Self> {
        if self.family.last_index(self.d).is_some_and(|last| self.n >= last) {
            return Err(Error::InvalidArgument(format!("Type0 has only {} members", 2 * self.d)));
        }
        let n = self.n + 1;
        let w = vadd(&m.mul_vec(self.w.counts()), &addend(self.family, self.d, n));
        Ok(SeriesState {
            family: self.family,
            d: self.d,
            n,
            w: pv(w),
            r: m.apply(&self.r),
            r_alt: self.r_alt.as_ref().map(|r| m.apply(r)),
        })
    }

    /// Candidate lower bounds for the shortest return word.
    pub fn return_bounds(&self) -> impl Iterator<Item = &ParikhVector> {
        std::iter::once(&self.r).chain(self.r_alt.as_ref())
    }
}

pub fn series_step(s: &SeriesState) -> Result<SeriesState> {
    s.step(&phi_matrix(s.d)?)
}

/// Members `0..=n_max` of a family (Type0 stops at `2d − 1`).
pub fn series(family: Family, d: usize, n_max: usize) -> Result<Vec<SeriesState>> {
    let m = phi_matrix(d)?;
    series_with(family, d, n_max, &m, false)
}

fn series_with(family: Family, d: usize, n_max: usize, m: &IntMatrix, perturb_seed: bool) -> Result<Vec<SeriesState>> {
    let mut s = SeriesState::seed_with(family, d, m)?;
    if perturb_seed && family != Family::Type0 {
        s.w += &ParikhVector::unit(2 * d + 1, 2 * d);
    }
    let last = family.last_index(d).map_or(n_max, |l| l.min(n_max));
    let mut out = Vec::with_capacity(last + 1);
    out.push(s);
    for _ in 0..last {
        let next = out.last().unwrap().step(m)?;
        out.push(next);
    }
    Ok(out)
}

/// Negative controls. `seed` adds `e_{2d}` to every series seed except
/// Type 0; `matrix` lowers the entry `M[2d][2d]` from 2 to 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Perturbation {
    pub seed: bool,
    pub matrix: bool,
}

impl Perturbation {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn is_none(&self) -> bool {
        !self.seed && !self.matrix
    }

    fn matrix_for(&self, d: usize) -> Result<IntMatrix> {
        let mut m = phi_matrix(d)?;
        if self.matrix {
            m.set(2 * d, 2 * d, BigInt::one());
        }
        Ok(m)
    }
}

/// Exact rational data of the closed form `f_n = A M^n e_{2d} − B_i e_0`,
/// `i = n mod 2d`, with `A = (M − 2I)(3I − M)^{-1}` and
/// `B_i = (3I − M)^{-1} + 2(M − 2I)(I + M + … + M^{i−1})(3I − M)^{-1}`.
#[derive(Clone, Debug)]
pub struct ClosedFormKit {
    d: usize,
    m: IntMatrix,
    inv: RatMatrix,
    a: RatMatrix,
    b: Vec<RatMatrix>,
}

impl ClosedFormKit {
    pub fn new(d: usize) -> Result<Self> {
        let m = phi_matrix(d)?;
        let dim = 2 * d + 1;
        let inv = m.scale(&BigInt::from(-1)).shift(&BigInt::from(-3)).inverse()?;
        let m_minus_2 = m.shift(&BigInt::from(2)).to_rational();
        let a = &m_minus_2 * &inv;
        let twice = m_minus_2.scale(&BigRational::from_integer(2.into()));
        let mut geometric = IntMatrix::zeros(dim, dim);
        let mut power = IntMatrix::identity(dim);
        let mut b = Vec::with_capacity(2 * d);
        for _ in 0..2 * d {
            b.push(&inv + &(&(&twice * &geometric.to_rational()) * &inv));
            geometric = &geometric + &power;
            power = &power * &m;
        }
        Ok(ClosedFormKit { d, m, inv, a, b })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    /// `(3I − M)^{-1}`.
    pub fn resolvent(&self) -> &RatMatrix {
        &self.inv
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self, i: usize) -> &RatMatrix {
        &self.b[i]
    }

    /// `A x − B_i e_0` for `x = M^n e_{2d}` supplied by the caller.
    fn combine(&self, n: usize, x: &[BigInt]) -> Result<ParikhVector> {
        let ax = self.a.mul_vec(&to_rational_vec(x));
        let bi = self.b[n % (2 * self.d)].column(0);
        let v: Vec<BigInt> = ax
            .iter()
            .zip(&bi)
            .map(|(p, q)| {
                let diff = p - q;
                diff.is_integer().then(|| diff.to_integer())
            })
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvariantBreach(format!("closed form of f_{n} is not integral")))?;
        ParikhVector::from_counts(v).map_err(|_| Error::InvariantBreach(format!("closed form of f_{n} is negative")))
    }

    pub fn evaluate(&self, n: usize) -> Result<ParikhVector> {
        let x = self.m.pow(n as u64).column(2 * self.d);
        self.combine(n, &x)
    }

    /// `f_0, …, f_{n_max}` from the closed form.
    pub fn evaluate_all(&self, n_max: usize) -> Result<Vec<ParikhVector>> {
        let mut x = unit(2 * self.d + 1, 2 * self.d);
        let mut out = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            out.push(self.combine(n, &x)?);
            x = self.m.mul_vec(&x);
        }
        Ok(out)
    }
}

/// `f_n` from the closed form, checked against the recurrence.
pub fn f_closed_form(d: usize, n: usize) -> Result<ParikhVector> {
    let closed = ClosedFormKit::new(d)?.evaluate(n)?;
    let direct = f_vector(d, n)?;
    if closed != direct {
        return Err(Error::InvariantBreach(format!(
            "f_{n}: closed form {closed} differs from recurrence {direct}"
        )));
    }
    Ok(closed)
}

/// Both evaluations of `f_n` agree for all `n ≤ n_max`.
pub fn closed_form_sweep(d: usize, n_max: usize) -> Result<()> {
    let closed = ClosedFormKit::new(d)?.evaluate_all(n_max)?;
    let direct = f_sequence(&phi_matrix(d)?, d, n_max);
    for (n, (c, f)) in closed.iter().zip(&direct).enumerate() {
        if c.counts() != f.as_slice() {
            return Err(Error::InvariantBreach(format!(
                "f_{n}: closed form {c} differs from recurrence"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub d: usize,
    pub n_max: usize,
    pub checked: usize,
}

pub fn verify_explicit_bs(d: usize, n_max: usize) -> Result<SweepReport> {
    verify_explicit_bs_with(d, n_max, Perturbation::none())
}

/// The series obey their explicit forms: Type 0 `w_n = f_n`,
/// `r_n = M^n e_0`; Type I `w_n = f_n + M^n e_{2d}`, `r_n = M^n e_{2d}`;
/// Type II `w_n = f_{n+2d}`, `r_n = M^{n+2d} e_0`; and
/// `M^n f_{2d} + f_n = f_{n+2d}`.
pub fn verify_explicit_bs_with(d: usize, n_max: usize, p: Perturbation) -> Result<SweepReport> {
    let m = phi_matrix(d)?;
    let pm = p.matrix_for(d)?;
    let dim = 2 * d + 1;
    let top = 2 * d;
    let f = f_sequence(&m, d, n_max + top);
    let mut e0_pows = vec![unit(dim, 0)];
    for n in 1..=n_max + top {
        let next = m.mul_vec(&e0_pows[n - 1]);
        e0_pows.push(next);
    }
    let mut checked = 0;
    for s in series_with(Family::Type0, d, n_max, &pm, p.seed)? {
        if s.w.counts() != f[s.n].as_slice() || s.r.counts() != e0_pows[s.n].as_slice() {
            return Err(fail(s.family, s.n, format!("w = {}, r = {}", s.w, s.r)));
        }
        checked += 1;
    }
    let mut top_pow = unit(dim, top);
    for s in series_with(Family::TypeI, d, n_max, &pm, p.seed)? {
        if s.w.counts() != vadd(&f[s.n], &top_pow).as_slice() || s.r.counts() != top_pow.as_slice() {
            return Err(fail(s.family, s.n, format!("w = {}, r = {}", s.w, s.r)));
        }
        top_pow = m.mul_vec(&top_pow);
        checked += 1;
    }
    for s in series_with(Family::TypeII, d, n_max, &pm, p.seed)? {
        if s.w.counts() != f[s.n + top].as_slice() || s.r.counts() != e0_pows[s.n + top].as_slice() {
            return Err(fail(s.family, s.n, format!("w = {}, r = {}", s.w, s.r)));
        }
        checked += 1;
    }
    let mut shifted = f[top].clone();
    for n in 0..=n_max {
        if vadd(&shifted, &f[n]) != f[n + top] {
            return Err(fail("M^n f_2d + f_n = f_(n+2d)", n, "identity fails"));
        }
        shifted = m.mul_vec(&shifted);
        checked += 1;
    }
    Ok(SweepReport { d, n_max, checked })
}

pub fn verify_dominance(d: usize, n_max: usize) -> Result<SweepReport> {
    verify_dominance_with(d, n_max, Perturbation::none())
}

/// For every non-palindromic series and both return-word candidates:
/// `r ≥ w + e_{2d}` or `r ≥ w + e_0 + … + e_{2d−1}`, plus the base cases
/// `w_0 + e_{2d} ≤ M^k e_{2d}` and `M^{2d−1} e_0 + w_0 ≤ M^{2d} e_0`.
pub fn verify_dominance_with(d: usize, n_max: usize, p: Perturbation) -> Result<SweepReport> {
    let m = p.matrix_for(d)?;
    let dim = 2 * d + 1;
    let top = 2 * d;
    let e_top = unit(dim, top);
    let mut lower = vec![BigInt::one(); dim];
    lower[top] = BigInt::zero();
    let mut checked = 0;
    for k in 1..top {
        let family = Family::NonPal(k);
        let states = series_with(family, d, n_max, &m, p.seed)?;
        let w0 = states[0].w.counts();
        if !vle(&vadd(w0, &e_top), &pow_vec(&m, e_top.clone(), k)) {
            return Err(fail(family, 0, "base case w_0 + e_2d ≤ M^k e_2d fails"));
        }
        let e0_pow = pow_vec(&m, unit(dim, 0), top - 1);
        if !vle(&vadd(&e0_pow, w0), &m.mul_vec(&e0_pow)) {
            return Err(fail(family, 0, "base case M^(2d-1) e_0 + w_0 ≤ M^2d e_0 fails"));
        }
        for s in &states {
            let w = s.w.counts();
            let (with_top, with_lower) = (vadd(w, &e_top), vadd(w, &lower));
            for (branch, r) in s.return_bounds().enumerate() {
                if !vle(&with_top, r.counts()) && !vle(&with_lower, r.counts()) {
                    return Err(fail(
                        family,
                        s.n,
                        format!("candidate {branch}: r = {} dominates neither bound for w = {}", r, s.w),
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(SweepReport { d, n_max, checked })
}

/// `M^{2d} (M − 2I)² = I` exactly.
pub fn hamilton_cayley_check(d: usize) -> Result<()> {
    let m = phi_matrix(d)?;
    let shifted = m.shift(&BigInt::from(2));
    let product = &m.pow(2 * d as u64) * &(&shifted * &shifted);
    if product.is_identity() {
        Ok(())
    } else {
        Err(Error::InvariantBreach(format!("M^{}(M−2I)² ≠ I", 2 * d)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Undecided => "undecided",
        })
    }
}

/// Bisects Λ until `judge` decides on its interval or the width of Λ drops
/// to `2^-precision_bits`. `judge` returns `Some(true)` for a certified
/// pass and `Some(false)` for a certified failure.
fn decide<T>(
    lambda: &mut AlgebraicNumber,
    precision_bits: u32,
    mut judge: impl FnMut(&Interval) -> Result<(Option<bool>, T)>,
) -> Result<(Verdict, T)> {
    let three = BigRational::from_integer(3.into());
    while lambda.hi() >= &three {
        lambda.bisect();
    }
    let cap = BigRational::new(BigInt::one(), BigInt::one() << precision_bits);
    loop {
        let (answer, value) = judge(lambda.interval())?;
        match answer {
            Some(true) => return Ok((Verdict::Pass, value)),
            Some(false) => return Ok((Verdict::Fail, value)),
            None if lambda.width() <= cap || lambda.width().is_zero() => return Ok((Verdict::Undecided, value)),
            None => {
                for _ in 0..32 {
                    if lambda.width() <= cap {
                        break;
                    }
                    lambda.bisect();
                }
            }
        }
    }
}

/// Enclosure of `h·r / (3 − Λ) − h·w` over the interval of Λ.
fn weighted_margin(lambda: &Interval, hw: &BigInt, hr: &BigInt) -> Result<Interval> {
    let three = BigRational::from_integer(3.into());
    let hw = BigRational::from_integer(hw.clone());
    let hr = BigRational::from_integer(hr.clone());
    let lo = &hr / (&three - lambda.lo()) - &hw;
    let hi = &hr / (&three - lambda.hi()) - &hw;
    Interval::new(lo, hi)
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightRow {
    pub d: usize,
    pub family: Family,
    pub n: usize,
    #[serde(serialize_with = "serialize_display")]
    pub hw: BigInt,
    /// `h·r` for the smallest return-word candidate.
    #[serde(serialize_with = "serialize_display")]
    pub hr: BigInt,
    /// Certified enclosure of `h·r / (3 − Λ) − h·w`.
    pub margin: Interval,
    pub verdict: Verdict,
}

fn serialize_display<S: Serializer, T: fmt::Display>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn serialize_opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => serialize_rational(q, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightInequalityReport {
    pub d: usize,
    pub n_max: usize,
    pub rows: Vec<WeightRow>,
    /// Smallest certified lower bound on the margin over all rows.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub min_margin: Option<Rational>,
    /// Λ's interval after the last refinement.
    pub lambda: Interval,
    pub verdict: Verdict,
}

impl WeightInequalityReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &WeightRow> {
        self.rows.iter().filter(|r| r.verdict != Verdict::Pass)
    }
}

fn check_lambda(d: usize, lambda: &AlgebraicNumber) -> Result<()> {
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    if lambda.poly() != &lambda_factor(d) || lambda.lo() < &two || lambda.hi() > &three {
        return Err(Error::InvalidArgument(format!(
            "{lambda} is not the root of {} in (2, 3)",
            lambda_factor(d)
        )));
    }
    Ok(())
}

pub fn verify_weight_inequality(d: usize, n_max: usize, lambda: &AlgebraicNumber) -> Result<WeightInequalityReport> {
    verify_weight_inequality_with(d, n_max, lambda, Perturbation::none())
}

/// Certifies `(3 − Λ)·h·w ≤ h·r` for every family and `n ≤ n_max`. A row
/// passes when the lower end of the margin enclosure is positive. For
/// non-palindromic series `r` is the smaller candidate under `h`.
pub fn verify_weight_inequality_with(
    d: usize,
    n_max: usize,
    lambda: &AlgebraicNumber,
    p: Perturbation,
) -> Result<WeightInequalityReport> {
    verify_weight_inequality_capped(d, n_max, lambda, p, MAX_PRECISION_BITS)
}

/// [`verify_weight_inequality_with`] with an explicit cap on the bits of
/// Λ; rows still unresolved at the cap make the run `Undecided`.
pub fn verify_weight_inequality_capped(
    d: usize,
    n_max: usize,
    lambda: &AlgebraicNumber,
    p: Perturbation,
    precision_bits: u32,
) -> Result<WeightInequalityReport> {
    if precision_bits > MAX_PRECISION_BITS {
        return Err(Error::InvalidArgument(format!(
            "precision is capped at {MAX_PRECISION_BITS} bits"
        )));
    }
    check_lambda(d, lambda)?;
    let mut lambda = lambda.clone();
    let m = p.matrix_for(d)?;
    let h = h_weights(d);
    let mut rows = Vec::new();
    for family in Family::all(d) {
        for s in series_with(family, d, n_max, &m, p.seed)? {
            let hw = s.w.weighted(&h);
            let hr = s
                .return_bounds()
                .map(|r| r.weighted(&h))
                .min()
                .expect("at least one candidate");
            let (verdict, margin) = decide(&mut lambda, precision_bits, |iv| {
                let margin = weighted_margin(iv, &hw, &hr)?;
                let answer = if margin.is_positive() {
                    Some(true)
                } else if margin.hi().is_negative() {
                    Some(false)
                } else {
                    None
                };
                Ok((answer, margin))
            })?;
            if verdict == Verdict::Undecided {
                return Err(Error::Undecided(format!("{family} at n = {}", s.n)));
            }
            rows.push(WeightRow {
                d,
                family,
                n: s.n,
                hw,
                hr,
                margin,
                verdict,
            });
        }
    }
    let min_margin = rows.iter().map(|r| r.margin.lo().clone()).min();
    let verdict = if rows.iter().all(|r| r.verdict == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(WeightInequalityReport {
        d,
        n_max,
        rows,
        min_margin,
        lambda: lambda.interval().clone(),
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeOneBoundReport {
    pub d: usize,
    pub n_max: usize,
    /// Largest certified upper bound on `|h (A − (Λ−2)/(3−Λ) I) M^n e_{2d}|`.
    pub max_abs_lhs: f64,
    #[serde(serialize_with = "serialize_rational")]
    pub lhs_bound: Rational,
    /// Smallest `h B_i e_0` over `i < 2d`.
    #[serde(serialize_with = "serialize_rational")]
    pub min_rhs: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub rhs_bound: Rational,
}

/// `d/(d−1) · (1/2 + 1/(2^d − 1))`.
pub fn type_one_bound_constant(d: usize) -> Result<Rational> {
    if d < 2 {
        return Err(Error::InvalidArgument("the bound needs d ≥ 2".into()));
    }
    let half = Rational::new(1.into(), 2.into());
    let tail = Rational::new(BigInt::one(), (BigInt::one() << d) - 1);
    Ok(Rational::new(BigInt::from(d), BigInt::from(d - 1)) * (half + tail))
}

/// The two sides of the Type I inequality
/// `h (A − (Λ−2)/(3−Λ) I) M^n e_{2d} ≤ h B_i e_0`: exact identities for
/// `(3I − M)^{-1} e_0` and `h (M − 2I)`, a certified `|left| ≤ 27/28` for
/// `n ≤ n_max`, and `h B_i e_0 ≥ 3^d/(3^d − 1)` for every `i`.
pub fn type_one_bound_check(d: usize, n_max: usize) -> Result<TypeOneBoundReport> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("the Type I bound needs d ≥ 3, got {d}")));
    }
    let kit = ClosedFormKit::new(d)?;
    let dim = 2 * d + 1;
    let top = 2 * d;
    let h = h_weights(d);
    let hq = to_rational_vec(&h);
    let pow3 = |k: usize| BigInt::from(3).pow(k as u32);

    let scale = Rational::new(BigInt::from(2), pow3(top) - 1);
    let expected: Vec<Rational> = (0..dim)
        .map(|i| &scale * Rational::from_integer(if i < top { pow3(top - 1 - i) } else { BigInt::one() }))
        .collect();
    if kit.resolvent().column(0) != expected {
        return Err(Error::InvariantBreach(
            "(3I − M)^{-1} e_0 differs from its closed form".into(),
        ));
    }
    let row = kit.matrix().shift(&BigInt::from(2)).vec_mul(&h);
    let expected_row: Vec<BigInt> = (0..dim).map(|i| BigInt::from(u8::from(i >= d))).collect();
    if row != expected_row {
        return Err(Error::InvariantBreach(
            "h (M − 2I) differs from (0, …, 0, 1, …, 1)".into(),
        ));
    }

    let rhs_bound = Rational::new(pow3(d), pow3(d) - 1);
    let resolvent_term: Rational = hq.iter().zip(kit.resolvent().column(0)).map(|(a, b)| a * b).sum();
    if resolvent_term != rhs_bound {
        return Err(Error::InvariantBreach(format!(
            "h (3I − M)^{{-1}} e_0 = {resolvent_term}, expected {rhs_bound}"
        )));
    }
    let mut min_rhs: Option<Rational> = None;
    for i in 0..top {
        let v: Rational = hq.iter().zip(kit.b(i).column(0)).map(|(a, b)| a * b).sum();
        if v < rhs_bound {
            return Err(fail("TypeI", i, format!("h B_{i} e_0 = {v} is below {rhs_bound}")));
        }
        if min_rhs.as_ref().map_or(true, |m| &v < m) {
            min_rhs = Some(v);
        }
    }

    let lhs_bound = Rational::new(27.into(), 28.into());
    let ha = kit.a().vec_mul(&hq);
    let mut lambda = AlgebraicNumber::isolate_ints(&lambda_factor(d), 2, 3)?;
    let mut x = unit(dim, top);
    let mut max_abs = Rational::zero();
    let two = Rational::from_integer(2.into());
    let three = Rational::from_integer(3.into());
    for n in 0..=n_max {
        let exact: Rational = ha
            .iter()
            .zip(&x)
            .map(|(a, b)| a * Rational::from_integer(b.clone()))
            .sum();
        let hx = Rational::from_integer(dot(&h, &x));
        let (verdict, enclosure) = decide(&mut lambda, MAX_PRECISION_BITS, |iv| {
            let c_lo = (iv.lo() - &two) / (&three - iv.lo());
            let c_hi = (iv.hi() - &two) / (&three - iv.hi());
            let lhs = Interval::new(&exact - &c_hi * &hx, &exact - &c_lo * &hx)?;
            let answer = if lhs.abs_upper() <= lhs_bound {
                Some(true)
            } else if lhs.lo() > &lhs_bound || lhs.hi() < &-lhs_bound.clone() {
                Some(false)
            } else {
                None
            };
            Ok((answer, lhs))
        })?;
        match verdict {
            Verdict::Pass => {}
            Verdict::Fail => return Err(fail("TypeI", n, format!("left side {enclosure} exceeds {lhs_bound}"))),
            Verdict::Undecided => return Err(Error::Undecided(format!("Type I left side at n = {n}"))),
        }
        max_abs = max_abs.max(enclosure.abs_upper());
        x = kit.matrix().mul_vec(&x);
    }
    Ok(TypeOneBoundReport {
        d,
        n_max,
        max_abs_lhs: crate::word::rational_to_f64(&max_abs),
        lhs_bound,
        min_rhs: min_rhs.expect("2d ≥ 1 residues"),
        rhs_bound,
    })
}

/// A predicted bispecial factor: its Parikh vector, candidate Parikh
/// vectors for its shortest return word, and how many factors share the
/// vector (2 for a non-palindrome and its mirror image).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedBispecial {
    pub family: Family,
    pub n: usize,
    pub w: ParikhVector,
    pub return_bounds: Vec<ParikhVector>,
    pub multiplicity: usize,
}

/// All series members of length at most `max_len`.
pub fn predicted_bispecials(d: usize, max_len: usize) -> Result<Vec<PredictedBispecial>> {
    let m = phi_matrix(d)?;
    let limit = BigInt::from(max_len);
    let mut out = Vec::new();
    for family in Family::all(d) {
        let mut s = SeriesState::seed_with(family, d, &m)?;
        loop {
            if s.w.total() > limit {
                break;
            }
            out.push(PredictedBispecial {
                family,
                n: s.n,
                w: s.w.clone(),
                return_bounds: s.return_bounds().cloned().collect(),
                multiplicity: if family.is_palindromic() { 1 } else { 2 },
            });
            if family.last_index(d).is_some_and(|l| s.n >= l) {
                break;
            }
            s = s.step(&m)?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub d: usize,
    pub cutoff: usize,
    pub observed: usize,
    pub predicted: usize,
    pub unmatched_observed: Vec<Word>,
    pub unmatched_predicted: Vec<(Family, usize)>,
    /// Observed bispecials whose shortest return word contradicts the
    /// predicted Parikh vector (palindromic) or dominates no candidate
    /// (non-palindromic).
    pub return_mismatches: Vec<Word>,
    pub returns_checked: usize,
}

impl CensusReport {
    pub fn is_bijective(&self) -> bool {
        self.unmatched_observed.is_empty() && self.unmatched_predicted.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.is_bijective() && self.return_mismatches.is_empty()
    }
}

/// Matches the bispecial factors found in a prefix of `u_{2d+1}` against
/// the series predictions, as multisets of (Parikh vector, palindromic).
pub fn census(d: usize, idx: &FactorIndex) -> Result<CensusReport> {
    if idx.prefix().alphabet_size() != 2 * d + 1 {
        return Err(Error::Dimension(format!(
            "index is over {} letters, expected {}",
            idx.prefix().alphabet_size(),
            2 * d + 1
        )));
    }
    let predicted = predicted_bispecials(d, idx.cutoff())?;
    let mut remaining: BTreeMap<(ParikhVector, bool), (usize, &PredictedBispecial)> = BTreeMap::new();
    for p in &predicted {
        let key = (p.w.clone(), p.family.is_palindromic());
        if let Some(entry) = remaining.get_mut(&key) {
            entry.0 += p.multiplicity;
        } else {
            remaining.insert(key, (p.multiplicity, p));
        }
    }
    let observed = idx.bispecials();
    let mut report = CensusReport {
        d,
        cutoff: idx.cutoff(),
        observed: observed.len(),
        predicted: predicted.iter().map(|p| p.multiplicity).sum(),
        unmatched_observed: Vec::new(),
        unmatched_predicted: Vec::new(),
        return_mismatches: Vec::new(),
        returns_checked: 0,
    };
    for b in &observed {
        let key = (b.parikh(), b.palindromic);
        let Some(entry) = remaining.get_mut(&key).filter(|e| e.0 > 0) else {
            report.unmatched_observed.push(b.factor.clone());
            continue;
        };
        entry.0 -= 1;
        let prediction = entry.1;
        let Ok(ret) = idx.return_words(&b.factor) else { continue };
        let r = parikh(&ret.shortest);
        let ok = if b.palindromic {
            r == prediction.return_bounds[0]
        } else {
            prediction.return_bounds.iter().any(|bound| bound.le(&r))
        };
        report.returns_checked += 1;
        if !ok {
            report.return_mismatches.push(b.factor.clone());
        }
    }
    for (count, p) in remaining.values() {
        for _ in 0..*count {
            report.unmatched_predicted.push((p.family, p.n));
        }
    }
    Ok(report)
}
