//! Complex ball arithmetic over `f64` and certified enclosures of all
//! complex roots of an integer polynomial.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::spectral::poly::PolyInt;

const EPS: f64 = f64::EPSILON;

/// Closed disk `{z : |z − mid| ≤ rad}`. Every operation widens the radius
/// by a bound on its own floating-point rounding error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub mid: Complex64,
    pub rad: f64,
}

fn up(x: f64) -> f64 {
    x * (1.0 + 4.0 * EPS) + f64::MIN_POSITIVE
}

impl Ball {
    pub fn new(mid: Complex64, rad: f64) -> Self {
        Ball { mid, rad: rad.max(0.0) }
    }

    pub fn exact(mid: Complex64) -> Self {
        Ball { mid, rad: 0.0 }
    }

    pub fn real(x: f64) -> Self {
        Ball::exact(Complex64::new(x, 0.0))
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let f = x.to_f64().unwrap_or(f64::INFINITY);
        Ball::new(Complex64::new(f, 0.0), up(f.abs() * EPS))
    }

    pub fn abs_upper(&self) -> f64 {
        up(self.mid.norm() + self.rad)
    }

    pub fn abs_lower(&self) -> f64 {
        ((self.mid.norm() - self.rad) * (1.0 - 4.0 * EPS)).max(0.0)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.mid).norm() <= self.rad
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower() == 0.0
    }

    pub fn recip(&self) -> Result<Ball> {
        let m = self.mid.norm();
        if m <= self.rad {
            return Err(Error::InvalidArgument("reciprocal of a ball containing 0".into()));
        }
        let mid = self.mid.inv();
        let rad = self.rad / (m * (m - self.rad)) + 4.0 * EPS / m;
        Ok(Ball::new(mid, up(rad)))
    }

    pub fn powi(&self, n: u32) -> Ball {
        let mut acc = Ball::real(1.0);
        let mut base = *self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }
}

impl Add for Ball {
    type Output = Ball;

    fn add(self, rhs: Ball) -> Ball {
        let mid = self.mid + rhs.mid;
        Ball::new(mid, up(self.rad + rhs.rad + EPS * mid.norm()))
    }
}

impl Sub for Ball {
    type Output = Ball;

    fn sub(self, rhs: Ball) -> Ball {
        let mid = self.mid - rhs.mid;
        Ball::new(mid, up(self.rad + rhs.rad + EPS * mid.norm()))
    }
}

impl Neg for Ball {
    type Output = Ball;

    fn neg(self) -> Ball {
        Ball::new(-self.mid, self.rad)
    }
}

impl Mul for Ball {
    type Output = Ball;

    fn mul(self, rhs: Ball) -> Ball {
        let (a, b) = (self.mid.norm(), rhs.mid.norm());
        let mid = self.mid * rhs.mid;
        let rad = a * rhs.rad + b * self.rad + self.rad * rhs.rad + 2.0 * EPS * a * b;
        Ball::new(mid, up(rad))
    }
}

impl Div for Ball {
    type Output = Result<Ball>;

    fn div(self, rhs: Ball) -> Result<Ball> {
        Ok(self * rhs.recip()?)
    }
}

fn eval_ball(p: &PolyInt, z: Ball) -> Ball {
    p.coeffs()
        .iter()
        .rev()
        .fold(Ball::real(0.0), |acc, c| acc * z + Ball::from_bigint(c))
}

/// Approximate roots by the Aberth–Ehrlich iteration, then Newton polish.
pub fn approximate_roots(p: &PolyInt) -> Result<Vec<Complex64>> {
    let n = p
        .degree()
        .ok_or_else(|| Error::RootIsolation("zero polynomial".into()))?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = p.leading().to_f64().unwrap_or(f64::NAN);
    let a: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN) / lead)
        .collect();
    let dp = p.derivative();
    let cauchy = 1.0 + a[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let r0 = a[0].abs().powf(1.0 / n as f64).clamp(0.5, cauchy);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let pv = p.eval_complex(z[k]);
            let dv = dp.eval_complex(z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let dv = dp.eval_complex(*zk);
            if dv.norm() == 0.0 {
                break;
            }
            let step = p.eval_complex(*zk) / dv;
            if step.is_finite() {
                *zk -= step;
            }
        }
        if zk.im.abs() < 1e-300 {
            zk.im = 0.0;
        }
    }
    Ok(z)
}

/// Disjoint balls, one around each complex root of `p` (which must have
/// simple roots). Radii come from Smith's bound
/// `n·|p(z_i)| / |a_n ∏_{j≠i}(z_i − z_j)|`, evaluated in ball arithmetic;
/// disjoint disks each contain exactly one root.
pub fn certified_roots(p: &PolyInt) -> Result<Vec<Ball>> {
    let z = approximate_roots(p)?;
    let n = z.len();
    let lead = Ball::from_bigint(&p.leading());
    let mut balls = Vec::with_capacity(n);
    for i in 0..n {
        let zi = Ball::exact(z[i]);
        let value = eval_ball(p, zi);
        let mut denom = lead;
        for j in (0..n).filter(|&j| j != i) {
            denom = denom * (zi - Ball::exact(z[j]));
        }
        let lower = denom.abs_lower();
        if lower == 0.0 {
            return Err(Error::DegenerateSpectrum(format!(
                "roots {i} and another coincide numerically"
            )));
        }
        let rad = up(n as f64 * value.abs_upper() / lower);
        balls.push(Ball::new(z[i], rad));
    }
    for i in 0..n {
        for j in i + 1..n {
            if (balls[i].mid - balls[j].mid).norm() <= up(balls[i].rad + balls[j].rad) {
                return Err(Error::RootIsolation(format!("root disks {i} and {j} of {p} overlap")));
            }
        }
    }
    balls.sort_by(|a, b| {
        b.mid
            .norm()
            .partial_cmp(&a.mid.norm())
            .unwrap()
            .then(b.mid.im.partial_cmp(&a.mid.im).unwrap())
    });
    Ok(balls)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> PolyInt {
        PolyInt::from_i64s(c)
    }

    #[test]
    fn ball_operations_enclose() {
        let a = Ball::new(Complex64::new(1.0, 1.0), 1e-10);
        let b = Ball::new(Complex64::new(-2.0, 0.5), 1e-12);
        let prod = a * b;
        assert!(prod.contains(Complex64::new(1.0, 1.0) * Complex64::new(-2.0, 0.5)));
        let q = (a / b).unwrap();
        assert!(q.contains(Complex64::new(1.0, 1.0) / Complex64::new(-2.0, 0.5)));
        assert!(Ball::new(Complex64::new(0.1, 0.0), 0.2).recip().is_err());
        assert!((a.powi(5).mid - Complex64::new(1.0, 1.0).powi(5)).norm() < 1e-12);
    }

    #[test]
    fn roots_of_unity() {
        let roots = certified_roots(&p(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(roots.len(), 4);
        for target in [
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::i(),
            -Complex64::i(),
        ] {
            assert!(roots.iter().any(|b| b.contains(target)), "{target}");
        }
        assert!(roots.iter().all(|b| b.rad < 1e-12));
    }

    #[test]
    fn silver_ratio() {
        let roots = certified_roots(&p(&[-1, -2, 1])).unwrap();
        assert!(
            roots[0].contains(Complex64::new(1.0 + 2f64.sqrt(), 0.0))
                || (roots[0].mid.re - 1.0 - 2f64.sqrt()).abs() < 1e-14
        );
        assert!((roots[1].mid.re - (1.0 - 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn repeated_root_is_rejected() {
        assert!(certified_roots(&p(&[1, -2, 1])).is_err());
    }
}
