//! Spectral analysis of the incidence matrix of φ_{2d+1}: characteristic
//! polynomial, the dominant roots Λ and β, eigenvector identities in
//! quotient rings, and numeric eigen-decompositions with error bounds.

pub mod algebraic;
pub mod ball;
pub mod poly;

use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::morphism::make_phi;

pub use algebraic::{certify_inner_zeros, count_real_roots, is_squarefree, zeros_in_disk, AlgebraicNumber, Interval};
pub use ball::{approximate_roots, certified_roots, Ball};
pub use poly::{beta_factor, char_poly, lambda_factor, threshold_poly, PolyInt, QuotientElement};

/// Incidence matrix of φ_{2d+1}.
pub fn phi_matrix(d: usize) -> Result<IntMatrix> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    Ok(make_phi(2 * d + 1)?.incidence_matrix())
}

/// The weight row `(1, …, 1, 2^0, 2^1, …, 2^d)` with `d` leading ones.
pub fn h_weights(d: usize) -> Vec<BigInt> {
    let mut h = vec![BigInt::one(); d];
    h.extend((0..=d).map(|i| BigInt::one() << i));
    h
}

fn check_width(width: &BigRational) -> Result<()> {
    if width <= &BigRational::zero() {
        return Err(Error::InvalidArgument("width must be positive".into()));
    }
    Ok(())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Λ and β with their isolating intervals, and radii `ρ < 1` of disks
/// certified to contain every other root of `f` and `g`.
#[derive(Clone, Debug)]
pub struct PisotRoots {
    pub d: usize,
    pub lambda: AlgebraicNumber,
    pub beta: Option<AlgebraicNumber>,
    pub lambda_conjugate_radius: BigRational,
    pub beta_conjugate_radius: Option<BigRational>,
}

pub fn pisot_roots(d: usize, width: &BigRational) -> Result<PisotRoots> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    check_width(width)?;
    let f = lambda_factor(d);
    let mut lambda = AlgebraicNumber::isolate_ints(&f, 2, 3)?;
    lambda.refine_to(width);
    let lambda_conjugate_radius = certify_inner_zeros(&f, 1, 16)?;
    let (beta, beta_conjugate_radius) = if d >= 2 {
        let g = beta_factor(d);
        let mut beta = AlgebraicNumber::isolate_ints(&g, 1, 2)?;
        beta.refine_to(width);
        (Some(beta), Some(certify_inner_zeros(&g, 1, 16)?))
    } else {
        (None, None)
    };
    Ok(PisotRoots {
        d,
        lambda,
        beta,
        lambda_conjugate_radius,
        beta_conjugate_radius,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CeReport {
    #[serde(rename = "D")]
    pub big_d: usize,
    pub lambda: Interval,
    pub estar: Interval,
    /// Correct decimal digits guaranteed by the width of `estar`.
    pub digits: u32,
}

fn estar_of(lambda: &Interval) -> Result<Interval> {
    let three = rat(3, 1);
    let one = rat(1, 1);
    let lo = &one + (&three - lambda.lo()).recip();
    let hi = &one + (&three - lambda.hi()).recip();
    Interval::new(lo, hi)
}

fn certified_digits(width: &BigRational) -> u32 {
    if width.is_zero() {
        return u32::MAX;
    }
    let mut digits = 0;
    let mut scaled = width.clone();
    let ten = rat(10, 1);
    while &scaled * &ten <= BigRational::one() {
        scaled *= &ten;
        digits += 1;
    }
    digits
}

/// Certified `1 + 1/(3 − Λ_D)` for the root Λ_D of `t^{D−1}(t−2)² − 1` in
/// `(2, 3)`, with width at most `width`.
pub fn asymptotic_ce(big_d: usize, width: &BigRational) -> Result<Interval> {
    Ok(asymptotic_ce_report(big_d, width)?.estar)
}

pub fn asymptotic_ce_report(big_d: usize, width: &BigRational) -> Result<CeReport> {
    if big_d < 3 {
        return Err(Error::InvalidArgument(format!(
            "alphabet size must be at least 3, got {big_d}"
        )));
    }
    check_width(width)?;
    let p = threshold_poly(big_d);
    let mut lambda = AlgebraicNumber::isolate_ints(&p, 2, 3)?;
    while lambda.hi() >= &rat(3, 1) {
        lambda.bisect();
    }
    let mut estar = estar_of(lambda.interval())?;
    while &estar.width() > width {
        lambda.bisect();
        estar = estar_of(lambda.interval())?;
    }
    if big_d % 2 == 1 {
        let d = (big_d - 1) / 2;
        let t_minus_one = PolyInt::from_i64s(&[-1, 1]);
        let product = &(&t_minus_one * &lambda_factor(d)) * &beta_factor(d);
        if product != p {
            return Err(Error::InvariantBreach(format!("(t−1)fg differs from {p}")));
        }
        let mut root = AlgebraicNumber::isolate_ints(&lambda_factor(d), 2, 3)?;
        root.refine_to(&lambda.width());
        if root.hi() < lambda.lo() || root.lo() > lambda.hi() {
            return Err(Error::InvariantBreach(format!(
                "root of f at {root} disagrees with {lambda}"
            )));
        }
    }
    let digits = certified_digits(&estar.width());
    Ok(CeReport {
        big_d,
        lambda: lambda.interval().clone(),
        estar,
        digits,
    })
}

/// Which factor of the characteristic polynomial a ring check works modulo.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ring {
    ModF,
    ModG,
}

impl Ring {
    fn modulus(self, d: usize) -> Arc<PolyInt> {
        Arc::new(match self {
            Ring::ModF => lambda_factor(d),
            Ring::ModG => beta_factor(d),
        })
    }
}

fn qe(p: PolyInt, m: &Arc<PolyInt>) -> QuotientElement {
    QuotientElement::new(&p, m).expect("factors are monic")
}

fn t_pow(k: usize) -> PolyInt {
    PolyInt::monomial(1, k)
}

/// Right eigenvector `(t^{2d−1}(t−2), …, t−2, 1)` in the ring.
fn right_eigenvector(d: usize, m: &Arc<PolyInt>) -> Vec<QuotientElement> {
    let t_minus_two = PolyInt::from_i64s(&[-2, 1]);
    let mut v: Vec<QuotientElement> = (0..2 * d)
        .map(|i| qe(&t_pow(2 * d - 1 - i) * &t_minus_two, m))
        .collect();
    v.push(qe(PolyInt::constant(1), m));
    v
}

/// Left eigenvector `u_i = t^i − t^{i−1} − … − 1`, `i = 0..=2d`.
fn left_eigenvector(d: usize, m: &Arc<PolyInt>) -> Vec<QuotientElement> {
    (0..=2 * d)
        .map(|i| {
            let mut p = t_pow(i);
            for j in 0..i {
                p = &p - &t_pow(j);
            }
            qe(p, m)
        })
        .collect()
}

fn dot(a: &[QuotientElement], b: &[BigInt], m: &Arc<PolyInt>) -> QuotientElement {
    let mut acc = qe(PolyInt::zero(), m);
    for (x, c) in a.iter().zip(b) {
        acc = &acc + &x.scale(c);
    }
    acc
}

fn breach(what: &str, ring: Ring, detail: impl std::fmt::Display) -> Error {
    Error::InvariantBreach(format!("{what} fails {ring:?}: {detail}"))
}

/// `M v = t v`, `u M = t u` and the last-entry formula of `u`, exactly in
/// ℤ[t]/(f) and ℤ[t]/(g).
pub fn eigenvector_check(d: usize) -> Result<()> {
    let mat = phi_matrix(d)?;
    let n = 2 * d + 1;
    for ring in [Ring::ModF, Ring::ModG] {
        let m = ring.modulus(d);
        let t = qe(PolyInt::t(), &m);
        let v = right_eigenvector(d, &m);
        let u = left_eigenvector(d, &m);
        for i in 0..n {
            let mv = dot(&v, mat.row(i), &m);
            let diff = &mv - &(&t * &v[i]);
            if !diff.is_zero() {
                return Err(breach("M v = t v", ring, format!("component {i} leaves {diff}")));
            }
            let um = dot(&u, &mat.column(i), &m);
            let diff = &um - &(&t * &u[i]);
            if !diff.is_zero() {
                return Err(breach("u M = t u", ring, format!("component {i} leaves {diff}")));
            }
        }
        let t_minus_one = PolyInt::from_i64s(&[-1, 1]);
        for (i, ui) in u.iter().enumerate() {
            let closed = &(&t_pow(i + 1) - &t_pow(i).scale(&BigInt::from(2))) + &PolyInt::constant(1);
            let diff = &ui.mul_poly(&t_minus_one) - &qe(closed, &m);
            if !diff.is_zero() {
                return Err(breach("(t−1)u_i = t^{i+1} − 2t^i + 1", ring, format!("component {i}")));
            }
        }
        let last = &u[2 * d];
        let ok = match ring {
            Ring::ModF => (last - &qe(t_pow(d), &m)).is_zero(),
            Ring::ModG => {
                let rhs = &PolyInt::constant(1) - &t_pow(d);
                (&last.mul_poly(&t_minus_one) - &qe(rhs, &m)).is_zero()
            }
        };
        if !ok {
            return Err(breach("last entry of u", ring, last));
        }
    }
    Ok(())
}

/// `(u·v)(t − 1) = 2t^{d−1}(d(t − 2) + t)` in ℤ[t]/(f).
pub fn udotv_check(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let m = Ring::ModF.modulus(d);
    let v = right_eigenvector(d, &m);
    let u = left_eigenvector(d, &m);
    let mut uv = qe(PolyInt::zero(), &m);
    for (a, b) in u.iter().zip(&v) {
        uv = &uv + &(a * b);
    }
    let lhs = uv.mul_poly(&PolyInt::from_i64s(&[-1, 1]));
    let inner = PolyInt::from_i64s(&[-2 * d as i64, d as i64 + 1]);
    let rhs = qe(&t_pow(d - 1).scale(&BigInt::from(2)) * &inner, &m);
    let diff = &lhs - &rhs;
    if diff.is_zero() {
        Ok(())
    } else {
        Err(breach("(u·v)(t−1) = 2t^{d−1}(d(t−2)+t)", Ring::ModF, diff))
    }
}

pub fn h_orthogonality(d: usize) -> Result<()> {
    h_orthogonality_with(d, &h_weights(d))
}

/// `h·v ≡ 0 (mod g)`, `(h·v)(t − 1) ≡ 2t^d (mod f)` and `u_{2d} ≡ t^d (mod f)`
/// for an arbitrary weight row `h`.
pub fn h_orthogonality_with(d: usize, h: &[BigInt]) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if h.len() != 2 * d + 1 {
        return Err(Error::Dimension(format!(
            "weight row has length {}, expected {}",
            h.len(),
            2 * d + 1
        )));
    }
    let mg = Ring::ModG.modulus(d);
    let hv = dot(&right_eigenvector(d, &mg), h, &mg);
    if !hv.is_zero() {
        return Err(breach("h·v = 0", Ring::ModG, hv));
    }
    let mf = Ring::ModF.modulus(d);
    let hv = dot(&right_eigenvector(d, &mf), h, &mf).mul_poly(&PolyInt::from_i64s(&[-1, 1]));
    let diff = &hv - &qe(t_pow(d).scale(&BigInt::from(2)), &mf);
    if !diff.is_zero() {
        return Err(breach("(h·v)(t−1) = 2t^d", Ring::ModF, diff));
    }
    let u = left_eigenvector(d, &mf);
    let diff = &u[2 * d] - &qe(t_pow(d), &mf);
    if !diff.is_zero() {
        return Err(breach("u·e_{2d} = t^d", Ring::ModF, diff));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericCheckReport {
    pub checked: usize,
    pub worst_n: usize,
    /// Largest certified relative error observed.
    pub worst_relative_error: f64,
}

fn relative_error(exact: &BigInt, approx: Ball) -> f64 {
    let e = exact.to_f64().unwrap_or(f64::INFINITY);
    let err = (Complex64::new(e, 0.0) - approx.mid).norm() + approx.rad;
    if e == 0.0 {
        err
    } else {
        err / e.abs()
    }
}

/// `h M^n e_{2d} = Σ c_λ λ^n` over the roots λ of `f`, with
/// `c_λ = λ^{d+1} / ((d+1)λ − 2d)`: exact integers on the left, certified
/// complex balls on the right, for all `n ≤ n_max`.
pub fn recurrence_solution_check(d: usize, n_max: usize, tol: &BigRational) -> Result<NumericCheckReport> {
    let mat = phi_matrix(d)?;
    let h = h_weights(d);
    let tol = tol.to_f64().unwrap_or(0.0);
    let roots = certified_roots(&lambda_factor(d))?;
    let coeffs: Vec<Ball> = roots
        .iter()
        .map(|&l| {
            let denom = Ball::real((d + 1) as f64) * l - Ball::real((2 * d) as f64);
            l.powi(d as u32 + 1) / denom
        })
        .collect::<Result<_>>()?;
    let mut x = vec![BigInt::zero(); 2 * d + 1];
    x[2 * d] = BigInt::one();
    let mut report = NumericCheckReport {
        checked: 0,
        worst_n: 0,
        worst_relative_error: 0.0,
    };
    for n in 0..=n_max {
        let exact: BigInt = h.iter().zip(&x).map(|(a, b)| a * b).sum();
        let approx = roots
            .iter()
            .zip(&coeffs)
            .fold(Ball::real(0.0), |acc, (&l, &c)| acc + c * l.powi(n as u32));
        let err = relative_error(&exact, approx);
        if err > report.worst_relative_error {
            report.worst_relative_error = err;
            report.worst_n = n;
        }
        report.checked += 1;
        x = mat.mul_vec(&x);
    }
    if report.worst_relative_error.is_nan() || report.worst_relative_error > tol {
        return Err(Error::InvariantBreach(format!(
            "relative error {:e} exceeds tolerance at n = {}",
            report.worst_relative_error, report.worst_n
        )));
    }
    Ok(report)
}

/// Both algebraic rewritings linking the Type II summand at `n` to the
/// Type I summand, checked per root λ of `f` in ball arithmetic:
/// `((λ−2)/(3−λ) − (λ−2)/(3−Λ)) λ^{n+d+1} = (λ−Λ)/((3−λ)(3−Λ)) λ^{n+1}` and
/// `((λ−2)/(3−λ) − (Λ−2)/(3−Λ)) λ^{n+d+1} = (λ−Λ)/((3−λ)(3−Λ)) λ^{n+d+1}`.
pub fn type_bridge_check(d: usize, n_max: usize, tol: f64) -> Result<NumericCheckReport> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    let roots = certified_roots(&lambda_factor(d))?;
    let big = roots[0];
    let two = Ball::real(2.0);
    let three = Ball::real(3.0);
    let mut report = NumericCheckReport {
        checked: 0,
        worst_n: 0,
        worst_relative_error: 0.0,
    };
    for &l in &roots {
        let a = ((l - two) / (three - l))?;
        let b = ((l - two) / (three - big))?;
        let c = ((big - two) / (three - big))?;
        let k = ((l - big) / ((three - l) * (three - big)))?;
        for n in 0..=n_max {
            let short = l.powi(n as u32 + 1);
            let long = l.powi((n + d) as u32 + 1);
            for (lhs, rhs, scale) in [
                (
                    (a - b) * long,
                    k * short,
                    (a.abs_upper() + b.abs_upper()) * long.abs_upper(),
                ),
                (
                    (a - c) * long,
                    k * long,
                    (a.abs_upper() + c.abs_upper()) * long.abs_upper(),
                ),
            ] {
                let diff = lhs - rhs;
                let err = diff.abs_upper() / scale.max(f64::MIN_POSITIVE);
                if err > report.worst_relative_error {
                    report.worst_relative_error = err;
                    report.worst_n = n;
                }
                report.checked += 1;
            }
        }
    }
    if report.worst_relative_error > tol {
        return Err(Error::InvariantBreach(format!(
            "bridge identity off by {:e} at n = {}",
            report.worst_relative_error, report.worst_n
        )));
    }
    Ok(report)
}

/// One eigenvalue with its coefficient `a_λ = (h·v)(u·g)/(u·v)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralTerm {
    pub eigenvalue: Complex64,
    pub coefficient: Complex64,
}

/// Minimum distance between distinct eigenvalues below which a spectrum is
/// treated as degenerate.
pub const SEPARATION: f64 = 1e-8;

fn to_complex(m: &IntMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect()
        })
        .collect()
}

/// A null vector of a numerically rank-deficient matrix, by Gaussian
/// elimination with complete pivoting and the last pivot taken as free.
fn null_vector(mut a: Vec<Vec<Complex64>>) -> Vec<Complex64> {
    let n = a.len();
    let mut cols: Vec<usize> = (0..n).collect();
    for k in 0..n.saturating_sub(1) {
        let (mut pi, mut pj, mut best) = (k, k, -1.0);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if x.norm() > best {
                    (pi, pj, best) = (i, j, x.norm());
                }
            }
        }
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        cols.swap(k, pj);
        for i in k + 1..n {
            let factor = a[i][k] / a[k][k];
            for j in k..n {
                let sub = factor * a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    x[n - 1] = Complex64::new(1.0, 0.0);
    for k in (0..n - 1).rev() {
        let s: Complex64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = -s / a[k][k];
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, &c) in cols.iter().enumerate() {
        out[c] = x[k];
    }
    let scale = out.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    out.iter().map(|z| z / scale).collect()
}

fn cdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Right and left eigenvectors for every eigenvalue of `m`.
pub fn eigenpairs(m: &IntMatrix) -> Result<Vec<(Complex64, Vec<Complex64>, Vec<Complex64>)>> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::Dimension("eigenpairs need a non-empty square matrix".into()));
    }
    let chi = char_poly(m)?;
    if !is_squarefree(&chi) {
        return Err(Error::DegenerateSpectrum(format!(
            "characteristic polynomial {chi} has a repeated root"
        )));
    }
    let values = approximate_roots(&chi)?;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let gap = (values[i] - values[j]).norm();
            if gap < SEPARATION {
                return Err(Error::DegenerateSpectrum(format!(
                    "eigenvalues {} and {} are {gap:e} apart",
                    values[i], values[j]
                )));
            }
        }
    }
    let a = to_complex(m);
    let n = a.len();
    Ok(values
        .into_iter()
        .map(|l| {
            let shifted = |transpose: bool| -> Vec<Vec<Complex64>> {
                (0..n)
                    .map(|i| (0..n).map(|j| if transpose { a[j][i] } else { a[i][j] } - if i == j { l } else { Complex64::new(0.0, 0.0) }).collect())
                    .collect()
            };
            (l, null_vector(shifted(false)), null_vector(shifted(true)))
        })
        .collect())
}

/// Coefficients `a_λ` with `h M^n g = Σ a_λ λ^n`.
pub fn decomposition_coefficients(m: &IntMatrix, h: &[Complex64], g: &[Complex64]) -> Result<Vec<SpectralTerm>> {
    if h.len() != m.rows() || g.len() != m.rows() {
        return Err(Error::Dimension(format!("vectors must have length {}", m.rows())));
    }
    eigenpairs(m)?
        .into_iter()
        .map(|(l, v, u)| {
            let uv = cdot(&u, &v);
            if uv.norm() < SEPARATION {
                return Err(Error::DegenerateSpectrum(format!("u·v vanishes at {l}")));
            }
            Ok(SpectralTerm {
                eigenvalue: l,
                coefficient: cdot(h, &v) * cdot(&u, g) / uv,
            })
        })
        .collect()
}

/// Checks `h M^n g = Σ a_λ λ^n` against exact integers for `n ≤ n_max`.
pub fn spectral_decompose(
    m: &IntMatrix,
    h: &[BigInt],
    g: &[BigInt],
    n_max: usize,
    tol: f64,
) -> Result<NumericCheckReport> {
    let hc: Vec<Complex64> = h
        .iter()
        .map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    let gc: Vec<Complex64> = g
        .iter()
        .map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    let terms = decomposition_coefficients(m, &hc, &gc)?;
    let mut x = g.to_vec();
    let mut report = NumericCheckReport {
        checked: 0,
        worst_n: 0,
        worst_relative_error: 0.0,
    };
    for n in 0..=n_max {
        let exact: BigInt = h.iter().zip(&x).map(|(a, b)| a * b).sum();
        let approx: Complex64 = terms.iter().map(|t| t.coefficient * t.eigenvalue.powi(n as i32)).sum();
        let e = exact.to_f64().unwrap_or(f64::INFINITY);
        let err = (Complex64::new(e, 0.0) - approx).norm() / e.abs().max(1.0);
        if err.is_nan() || err > report.worst_relative_error {
            report.worst_relative_error = if err.is_nan() { f64::INFINITY } else { err };
            report.worst_n = n;
        }
        report.checked += 1;
        x = m.mul_vec(&x);
    }
    if report.worst_relative_error > tol {
        return Err(Error::InvariantBreach(format!(
            "decomposition off by {:e} at n = {}",
            report.worst_relative_error, report.worst_n
        )));
    }
    Ok(report)
}
