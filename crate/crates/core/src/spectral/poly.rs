//! Integer polynomials and arithmetic modulo a monic integer polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Polynomial with integer coefficients, lowest degree first. The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyInt {
    coeffs: Vec<BigInt>,
}

impl PolyInt {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyInt { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        PolyInt::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        PolyInt { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        PolyInt::new(vec![c.into()])
    }

    /// `c·t^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        PolyInt::new(coeffs)
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        PolyInt::monomial(1, 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PolyInt::constant(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        PolyInt::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        PolyInt::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Coefficients reversed: `t^deg · p(1/t)`.
    pub fn reversed(&self) -> Self {
        PolyInt::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Sign of `p(x)` for rational `x`, evaluated without denominators.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        // q^deg · p(p/q) = Σ c_k p^k q^(deg-k); q > 0 keeps the sign.
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * z + c.to_f64().unwrap_or(f64::NAN)
        })
    }

    /// Division by a monic polynomial: `self = q·m + r`, `deg r < deg m`.
    pub fn div_rem_monic(&self, m: &PolyInt) -> (PolyInt, PolyInt) {
        assert!(m.is_monic(), "divisor must be monic");
        let dm = m.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dm {
            return (PolyInt::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dm];
        for k in (dm..r.len()).rev() {
            let c = std::mem::take(&mut r[k]);
            if c.is_zero() {
                continue;
            }
            for (j, mc) in m.coeffs[..dm].iter().enumerate() {
                r[k - dm + j] -= &c * mc;
            }
            q[k - dm] = c;
        }
        r.truncate(dm);
        (PolyInt::new(q), PolyInt::new(r))
    }

    /// Exact quotient over the integers, if `d` divides `self`.
    pub fn div_exact(&self, d: &PolyInt) -> Option<PolyInt> {
        if d.is_zero() {
            return None;
        }
        let dd = d.coeffs.len() - 1;
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.is_empty() {
            return Some(PolyInt::zero());
        }
        if r.len() <= dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let (c, rem) = r[k].div_rem(&lead);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] -= &c * dc;
            }
            q[k - dd] = c;
        }
        r.iter().all(Zero::is_zero).then(|| PolyInt::new(q))
    }

    /// Pseudo-remainder scaled by a positive factor, so that signs agree
    /// with the true remainder over the rationals.
    pub fn signed_prem(&self, d: &PolyInt) -> PolyInt {
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return self.clone();
        }
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        for k in (dd..r.len()).rev() {
            // r ← lead·r − r_k·t^(k−dd)·d  keeps positivity when lead > 0.
            let c = std::mem::take(&mut r[k]);
            for x in r.iter_mut() {
                *x *= lead.abs();
            }
            let c = if lead.is_negative() { -c } else { c };
            for (j, dc) in d.coeffs[..dd].iter().enumerate() {
                r[k - dd + j] -= &c * dc;
            }
        }
        r.truncate(dd);
        let p = PolyInt::new(r);
        let g = p.content();
        if g.is_zero() || g.is_one() {
            p
        } else {
            PolyInt::new(p.coeffs.iter().map(|c| c / &g).collect())
        }
    }
}

impl Add for &PolyInt {
    type Output = PolyInt;

    fn add(self, rhs: &PolyInt) -> PolyInt {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyInt::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolyInt {
    type Output = PolyInt;

    fn sub(self, rhs: &PolyInt) -> PolyInt {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyInt::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PolyInt {
    type Output = PolyInt;

    fn mul(self, rhs: &PolyInt) -> PolyInt {
        if self.is_zero() || rhs.is_zero() {
            return PolyInt::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyInt::new(out)
    }
}

impl Neg for &PolyInt {
    type Output = PolyInt;

    fn neg(self) -> PolyInt {
        PolyInt::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for PolyInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// `f = t^(d+1) − 2t^d − 1`.
pub fn lambda_factor(d: usize) -> PolyInt {
    &(&PolyInt::monomial(1, d + 1) - &PolyInt::monomial(2, d)) - &PolyInt::constant(1)
}

/// `g = t^d − t^(d−1) − … − t − 1`.
pub fn beta_factor(d: usize) -> PolyInt {
    let mut c = vec![BigInt::from(-1); d + 1];
    c[d] = BigInt::one();
    PolyInt::new(c)
}

/// `t^(D−1)(t−2)² − 1`, whose root in (2,3) governs the asymptotic
/// critical exponent of the fixed point of `φ_D`.
pub fn threshold_poly(big_d: usize) -> PolyInt {
    let t2 = PolyInt::from_i64s(&[-2, 1]);
    &(&PolyInt::monomial(1, big_d - 1) * &t2.pow(2)) - &PolyInt::constant(1)
}

/// Characteristic polynomial `det(tI − M)` by the Faddeev–LeVerrier
/// recursion; every division is exact over the integers.
pub fn char_poly(m: &IntMatrix) -> Result<PolyInt> {
    if !m.is_square() {
        return Err(Error::Dimension(
            "characteristic polynomial of a non-square matrix".into(),
        ));
    }
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m * &mk;
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        let am = m * &next;
        let trace: BigInt = (0..n).map(|i| am.get(i, i).clone()).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
        mk = next;
    }
    Ok(PolyInt::new(coeffs))
}

/// Element of `ℤ[t]/(m)` for a monic modulus `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientElement {
    rep: PolyInt,
    modulus: Arc<PolyInt>,
}

impl QuotientElement {
    pub fn new(p: &PolyInt, modulus: &Arc<PolyInt>) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::InvalidArgument(format!("modulus {modulus} is not monic")));
        }
        Ok(QuotientElement {
            rep: p.div_rem_monic(modulus).1,
            modulus: Arc::clone(modulus),
        })
    }

    fn wrap(&self, p: PolyInt) -> Self {
        QuotientElement {
            rep: p.div_rem_monic(&self.modulus).1,
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn from_int(c: impl Into<BigInt>, modulus: &Arc<PolyInt>) -> Result<Self> {
        QuotientElement::new(&PolyInt::constant(c), modulus)
    }

    pub fn rep(&self) -> &PolyInt {
        &self.rep
    }

    pub fn modulus(&self) -> &PolyInt {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.wrap(self.rep.scale(c))
    }

    pub fn mul_poly(&self, p: &PolyInt) -> Self {
        self.wrap(&self.rep * p)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "elements of different quotient rings");
    }
}

impl Add for &QuotientElement {
    type Output = QuotientElement;

    fn add(self, rhs: &QuotientElement) -> QuotientElement {
        self.check(rhs);
        self.wrap(&self.rep + &rhs.rep)
    }
}

impl Sub for &QuotientElement {
    type Output = QuotientElement;

    fn sub(self, rhs: &QuotientElement) -> QuotientElement {
        self.check(rhs);
        self.wrap(&self.rep - &rhs.rep)
    }
}

impl Mul for &QuotientElement {
    type Output = QuotientElement;

    fn mul(self, rhs: &QuotientElement) -> QuotientElement {
        self.check(rhs);
        self.wrap(&self.rep * &rhs.rep)
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.rep, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::make_phi;

    fn p(c: &[i64]) -> PolyInt {
        PolyInt::from_i64s(c)
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[-1, 0, -2, 1]);
        assert_eq!(a.to_string(), "t^3 - 2t^2 - 1");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!((&p(&[1, 1]) * &p(&[-1, 1])), p(&[-1, 0, 1]));
        assert_eq!(p(&[1, 2, 3]).derivative(), p(&[2, 6]));
        assert_eq!(p(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn division() {
        let (q, r) = p(&[-1, 0, 0, 1]).div_rem_monic(&p(&[-1, 1]));
        assert_eq!((q, r), (p(&[1, 1, 1]), p(&[])));
        let (q, r) = p(&[1, 0, 1]).div_rem_monic(&p(&[1, 1]));
        assert_eq!((q, r), (p(&[-1, 1]), p(&[2])));
        assert_eq!(p(&[-2, 0, 2]).div_exact(&p(&[-1, 1])), Some(p(&[2, 2])));
        assert_eq!(p(&[1, 0, 2]).div_exact(&p(&[-1, 1])), None);
    }

    #[test]
    fn exact_sign() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(f.sign_at(&BigRational::new(3.into(), 2.into())), 1);
        assert_eq!(f.sign_at(&BigRational::new(7.into(), 5.into())), -1);
        assert_eq!(p(&[-1, 2]).sign_at(&BigRational::new(1.into(), 2.into())), 0);
    }

    #[test]
    fn char_poly_examples() {
        let m = make_phi(3).unwrap().incidence_matrix();
        let chi = char_poly(&m).unwrap();
        assert_eq!(chi, &p(&[-1, -2, 1]) * &p(&[-1, 1]));
        assert_eq!(char_poly(&IntMatrix::identity(2)).unwrap(), p(&[1, -2, 1]));
        let chi7 = char_poly(&make_phi(7).unwrap().incidence_matrix()).unwrap();
        assert_eq!(chi7, &lambda_factor(3) * &beta_factor(3));
        assert_eq!(lambda_factor(3), p(&[-1, 0, 0, -2, 1]));
        assert_eq!(beta_factor(3), p(&[-1, -1, -1, 1]));
    }

    #[test]
    fn threshold_factorization_for_five_letters() {
        // t⁴(t−2)² − 1 = (t³ − 2t² − 1)(t³ − 2t² + 1)
        assert_eq!(threshold_poly(5), &p(&[-1, 0, -2, 1]) * &p(&[1, 0, -2, 1]));
    }

    #[test]
    fn quotient_ring() {
        let m = Arc::new(p(&[-2, 0, 1]));
        let t = QuotientElement::new(&PolyInt::t(), &m).unwrap();
        let t2 = &t * &t;
        assert_eq!(t2.rep(), &p(&[2]));
        assert!((&t2 - &QuotientElement::from_int(2, &m).unwrap()).is_zero());
        assert!(QuotientElement::new(&t2.rep().clone(), &Arc::new(p(&[1, 2]))).is_err());
    }

    #[test]
    fn signed_prem_sign() {
        // remainder of t² by (−t + 1) over ℚ is 1 > 0
        assert_eq!(p(&[0, 0, 1]).signed_prem(&p(&[1, -1])), p(&[1]));
    }
}
