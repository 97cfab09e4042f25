//! Rational maps `P/Q` on the Riemann sphere.

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::mobius::ExtendedComplex;
use crate::poly::Polynomial;
use crate::roots::find_roots;

/// A rational map with numerically coprime numerator and denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalMap {
    /// Validates the denominator and numerical coprimality.
    ///
    /// A root of the numerator within `tau_root * max(1, |r|)` of a root of
    /// the denominator is treated as a shared factor and rejected; nothing
    /// is cancelled silently.
    pub fn new(numerator: Polynomial, denominator: Polynomial, tol: &Tolerances) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvariantViolation("denominator is the zero polynomial".into()));
        }
        if numerator.degree() >= 1 && denominator.degree() >= 1 {
            let num_roots = find_roots(&numerator, tol)?;
            let den_roots = find_roots(&denominator, tol)?;
            for r in &num_roots {
                for s in &den_roots {
                    let gap = (r.center - s.center).norm();
                    if gap <= tol.tau_root * r.center.norm().max(1.0) {
                        return Err(Error::InvariantViolation(format!(
                            "numerator and denominator share the root {}",
                            r.center
                        )));
                    }
                }
            }
        }
        Ok(Self { numerator, denominator })
    }

    /// A polynomial viewed as a rational map with denominator 1.
    pub fn polynomial(p: Polynomial) -> Self {
        Self { numerator: p, denominator: Polynomial::constant(Complex64::new(1.0, 0.0)) }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// `max(deg P, deg Q)`.
    pub fn degree(&self) -> usize {
        self.numerator.degree().max(self.denominator.degree())
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree() == 0
    }

    /// `P / q_0` when the denominator is a constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        self.is_polynomial()
            .then(|| self.numerator.scaled(self.denominator.coeffs()[0].inv()))
    }

    pub fn scale(&self) -> f64 {
        self.numerator.scale().max(self.denominator.scale())
    }

    /// Value at a finite point; `None` at a pole.
    pub fn eval(&self, z: Complex64) -> Option<Complex64> {
        let q = self.denominator.eval(z);
        if q == Complex64::new(0.0, 0.0) {
            None
        } else {
            Some(self.numerator.eval(z) / q)
        }
    }

    /// Value on the sphere.
    pub fn eval_extended(&self, z: ExtendedComplex) -> ExtendedComplex {
        match z {
            ExtendedComplex::Finite(w) => match self.eval(w) {
                Some(v) => ExtendedComplex::Finite(v),
                None => ExtendedComplex::Infinity,
            },
            ExtendedComplex::Infinity => {
                let (dp, dq) = (self.numerator.degree(), self.denominator.degree());
                if dp > dq {
                    ExtendedComplex::Infinity
                } else if dp < dq {
                    ExtendedComplex::Finite(Complex64::new(0.0, 0.0))
                } else {
                    ExtendedComplex::Finite(self.numerator.leading() / self.denominator.leading())
                }
            }
        }
    }

    /// `R'(z)` by the quotient rule on exact derivative polynomials.
    pub fn derivative_at(&self, z: Complex64) -> Complex64 {
        let p = self.numerator.eval(z);
        let q = self.denominator.eval(z);
        let dp = self.numerator.derivative().eval(z);
        let dq = self.denominator.derivative().eval(z);
        (dp * q - p * dq) / (q * q)
    }

    /// `P(z) - z Q(z)`, whose roots are the finite fixed points.
    pub fn fixed_point_polynomial(&self) -> Result<Polynomial> {
        let z_q = &Polynomial::identity() * &self.denominator;
        let raw: Vec<Complex64> = {
            let n = self.numerator.coeffs().len().max(z_q.coeffs().len());
            (0..n)
                .map(|i| {
                    self.numerator.coeffs().get(i).copied().unwrap_or_default()
                        - z_q.coeffs().get(i).copied().unwrap_or_default()
                })
                .collect()
        };
        let f = Polynomial::trimmed_against(raw, self.numerator.max_abs().max(z_q.max_abs()));
        if f.is_zero() {
            return Err(Error::IdentityMap);
        }
        Ok(f)
    }

    /// Whether `R(z) = z` identically.
    pub fn is_identity(&self) -> bool {
        matches!(self.fixed_point_polynomial(), Err(Error::IdentityMap))
    }
}
