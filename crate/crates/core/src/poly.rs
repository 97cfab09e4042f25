//! Dense complex polynomials in ascending coefficient order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Leading coefficients below this fraction of the largest one are dropped.
const TRIM_REL: f64 = 1e-14;

/// A polynomial `a_0 + a_1 z + ... + a_n z^n`.
///
/// The leading coefficient is nonzero after construction, except for the
/// zero polynomial which is stored as the single coefficient `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let reference = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        Self::trimmed_against(coeffs, reference)
    }

    /// Builds a polynomial, trimming leading coefficients that are
    /// negligible against `reference` rather than against the vector's own
    /// largest entry. Used where cancellation leaves rounding noise on top.
    pub(crate) fn trimmed_against(mut coeffs: Vec<Complex64>, reference: f64) -> Self {
        let cutoff = TRIM_REL * reference;
        while coeffs.len() > 1 {
            let lead = coeffs[coeffs.len() - 1];
            if lead.norm() < cutoff || lead == Complex64::new(0.0, 0.0) {
                coeffs.pop();
            } else {
                break;
            }
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        if coeffs.len() == 1 && coeffs[0].norm() < cutoff {
            coeffs[0] = Complex64::new(0.0, 0.0);
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![Complex64::new(0.0, 0.0)] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn identity() -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), 1)
    }

    /// `c z^n`.
    pub fn monomial(c: Complex64, n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// `lead * prod (z - r)` over the given roots.
    pub fn from_roots(roots: &[Complex64], lead: Complex64) -> Self {
        let mut coeffs = vec![lead];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    /// `max(1, max |a_i|)`; relative tolerances are taken against this.
    pub fn scale(&self) -> f64 {
        self.max_abs().max(1.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value together with `sum |a_i| |z|^i`, the magnitude against which
    /// the rounding error of the Horner sum is measured.
    pub fn eval_with_bound(&self, z: Complex64) -> (Complex64, f64) {
        let r = z.norm();
        let mut value = Complex64::new(0.0, 0.0);
        let mut bound = 0.0;
        for &c in self.coeffs.iter().rev() {
            value = value * z + c;
            bound = bound * r + c.norm();
        }
        (value, bound)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    /// `self(inner(z))`, refusing results above `cap` in degree.
    pub fn compose(&self, inner: &Polynomial, cap: usize) -> Result<Self> {
        let degree = self.degree() * inner.degree();
        if degree > cap {
            return Err(Error::CapExceeded { degree, cap });
        }
        let mut acc = Polynomial::constant(self.leading());
        for &c in self.coeffs.iter().rev().skip(1) {
            acc = &(&acc * inner) + &Polynomial::constant(c);
        }
        Ok(acc)
    }

    /// Coefficients of `self(center + t)` in powers of `t`, i.e. the Taylor
    /// coefficients `p^(j)(center) / j!` for `j = 0..=n`.
    pub fn taylor_at(&self, center: Complex64) -> Vec<Complex64> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for j in 0..n {
            for i in (j..n - 1).rev() {
                let hi = c[i + 1];
                c[i] += center * hi;
            }
        }
        c
    }

    /// Taylor coefficients at `center` paired with the magnitude each would
    /// have with every term in phase, `sum_i |a_i| C(i, j) |center|^(i-j)`.
    pub fn taylor_with_bounds(&self, center: Complex64) -> (Vec<Complex64>, Vec<f64>) {
        let taylor = self.taylor_at(center);
        let abs = Polynomial {
            coeffs: self.coeffs.iter().map(|c| Complex64::new(c.norm(), 0.0)).collect(),
        };
        let bounds = abs
            .taylor_at(Complex64::new(center.norm(), 0.0))
            .into_iter()
            .map(|c| c.re)
            .collect();
        (taylor, bounds)
    }

    pub fn scaled(&self, k: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// Divides out `z^k` where the low `k` coefficients are exactly zero.
    pub(crate) fn strip_zero_roots(&self) -> (usize, Polynomial) {
        let k = self
            .coeffs
            .iter()
            .take_while(|c| **c == Complex64::new(0.0, 0.0))
            .count();
        if k == 0 || self.is_zero() {
            return (0, self.clone());
        }
        (k, Polynomial { coeffs: self.coeffs[k..].to_vec() })
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let reference = self.max_abs().max(rhs.max_abs());
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or_default()
                    + rhs.coeffs.get(i).copied().unwrap_or_default()
            })
            .collect();
        Polynomial::trimmed_against(coeffs, reference)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|&c| -c).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == Complex64::new(0.0, 0.0) && !(first && i == 0) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn construction_trims_leading_noise() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(1e-17, 0.0)]);
        assert_eq!(p.degree(), 1);
        let z = Polynomial::new(vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
    }

    #[test]
    fn eval_examples() {
        let p = Polynomial::from_real(&[0.25, 0.0, 1.0]);
        assert_eq!(p.eval(c(0.5, 0.0)), c(0.5, 0.0));
        let q = Polynomial::from_real(&[7.0, 3.0, -2.0]);
        assert_eq!(q.eval(c(0.0, 0.0)), c(7.0, 0.0));
        let r = Polynomial::from_real(&[0.0, 0.0, -2.0, 0.0, 1.0]);
        assert_eq!(r.eval(c(-1.0, 0.0)), c(-1.0, 0.0));
    }

    #[test]
    fn derivative_examples() {
        let p = Polynomial::new(vec![c(0.3, 0.7), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(p.derivative(), Polynomial::from_real(&[0.0, 2.0]));
        let q = Polynomial::from_real(&[0.0, 0.0, -2.0, 0.0, 1.0]);
        let dq = q.derivative();
        assert_eq!(dq, Polynomial::from_real(&[0.0, -4.0, 0.0, 4.0]));
        assert_eq!(dq.eval(c(0.0, 0.0)), c(0.0, 0.0));
        assert_eq!(dq.eval(c(-1.0, 0.0)), c(0.0, 0.0));
        assert!(Polynomial::from_real(&[5.0]).derivative().is_zero());
    }

    #[test]
    fn compose_examples() {
        let sq = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        assert_eq!(sq.compose(&sq, 4096).unwrap(), Polynomial::from_real(&[0.0, 0.0, 0.0, 0.0, 1.0]));
        let p = Polynomial::from_real(&[-1.0, 0.0, 1.0]);
        assert_eq!(
            p.compose(&p, 4096).unwrap(),
            Polynomial::from_real(&[0.0, 0.0, -2.0, 0.0, 1.0])
        );
        let q = Polynomial::new(vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0)]);
        assert_eq!(Polynomial::identity().compose(&q, 4096).unwrap(), q);
    }

    #[test]
    fn compose_cap() {
        let p = Polynomial::monomial(c(1.0, 0.0), 65);
        let err = p.compose(&p, 4096).unwrap_err();
        assert_eq!(err, Error::CapExceeded { degree: 65 * 65, cap: 4096 });
    }

    #[test]
    fn taylor_coefficients() {
        // (z - 1/2)^2 = z^2 - z + 1/4 around 1/2 is t^2.
        let p = Polynomial::from_real(&[0.25, -1.0, 1.0]);
        let t = p.taylor_at(c(0.5, 0.0));
        assert!(t[0].norm() < 1e-15 && t[1].norm() < 1e-15);
        assert_eq!(t[2], c(1.0, 0.0));
        let (_, b) = p.taylor_with_bounds(c(0.5, 0.0));
        assert!((b[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn from_roots_and_strip() {
        let p = Polynomial::from_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)], c(3.0, 0.0));
        assert_eq!(p, Polynomial::from_real(&[0.0, 0.0, -6.0, 3.0]));
        let (k, q) = p.strip_zero_roots();
        assert_eq!(k, 2);
        assert_eq!(q, Polynomial::from_real(&[-6.0, 3.0]));
    }
}
