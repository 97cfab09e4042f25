//! Points of the Riemann sphere, Möbius maps, and conjugation.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::RationalMap;

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtendedComplex::Finite(z) => Some(z),
            ExtendedComplex::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }

    /// Lexicographic on `(re, im)`, infinity last.
    pub fn sort_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => Ordering::Equal,
            (ExtendedComplex::Infinity, _) => Ordering::Greater,
            (_, ExtendedComplex::Infinity) => Ordering::Less,
            (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b)) => {
                a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
            }
        }
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        ExtendedComplex::Finite(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedComplex::Finite(z) => write!(f, "{z}"),
            ExtendedComplex::Infinity => write!(f, "inf"),
        }
    }
}

/// `z -> (az + b) / (cz + d)` with `ad - bc != 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64, tol: &Tolerances) -> Result<Self> {
        let size = [a, b, c, d].iter().map(|x| x.norm()).fold(0.0, f64::max);
        let det = a * d - b * c;
        if !(det.norm() > tol.tau_det * size * size) {
            return Err(Error::InvariantViolation(format!("singular Möbius map, ad - bc = {det}")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self { a: one, b: zero, c: zero, d: one }
    }

    /// `z -> a z + b`.
    pub fn affine(a: Complex64, b: Complex64) -> Result<Self> {
        if a == Complex64::new(0.0, 0.0) {
            return Err(Error::InvariantViolation("affine map with zero slope".into()));
        }
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Ok(Self { a, b, c: zero, d: one })
    }

    /// `z -> 1/z`, the chart change at infinity.
    pub fn inversion() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self { a: zero, b: one, c: one, d: zero }
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Applies the map, with `m(inf) = a/c` (infinity when `c = 0`) and
    /// `m(-d/c) = inf`.
    pub fn apply(&self, z: ExtendedComplex) -> ExtendedComplex {
        let zero = Complex64::new(0.0, 0.0);
        match z {
            ExtendedComplex::Infinity => {
                if self.c == zero {
                    ExtendedComplex::Infinity
                } else {
                    ExtendedComplex::Finite(self.a / self.c)
                }
            }
            ExtendedComplex::Finite(w) => {
                let den = self.c * w + self.d;
                if den == zero {
                    ExtendedComplex::Infinity
                } else {
                    ExtendedComplex::Finite((self.a * w + self.b) / den)
                }
            }
        }
    }
}

/// `sum_i p_i u^i v^(n-i)`.
fn homogenize(p: &Polynomial, n: usize, u_pows: &[Polynomial], v_pows: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (i, &c) in p.coeffs().iter().enumerate() {
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let term = (&u_pows[i] * &v_pows[n - i]).scaled(c);
        acc = &acc + &term;
    }
    acc
}

fn powers(base: &Polynomial, n: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::constant(Complex64::new(1.0, 0.0))];
    for i in 1..=n {
        out.push(&out[i - 1] * base);
    }
    out
}

fn abs_poly(p: &Polynomial) -> Polynomial {
    Polynomial::new(p.coeffs().iter().map(|c| Complex64::new(c.norm(), 0.0)).collect())
}

/// Drops top coefficients that are indistinguishable from rounding noise
/// given the magnitude polynomial `bound` of the same expansion.
fn trim_noise(p: &Polynomial, bound: &Polynomial) -> Polynomial {
    let mut coeffs = p.coeffs().to_vec();
    while coeffs.len() > 1 {
        let i = coeffs.len() - 1;
        let b = bound.coeffs().get(i).map(|c| c.re).unwrap_or(0.0);
        if coeffs[i].norm() <= 64.0 * f64::EPSILON * b {
            coeffs.pop();
        } else {
            break;
        }
    }
    Polynomial::new(coeffs)
}

/// `S = g ∘ R ∘ g^-1`.
///
/// With `g^-1(w) = u(w)/v(w)`, `u = dw - b`, `v = -cw + a`, the map
/// `R ∘ g^-1` is the ratio of the homogenized numerator and denominator,
/// and applying `g` gives `(a P~ + b Q~) / (c P~ + d Q~)`. No common
/// factor appears in exact arithmetic, so any mismatch in degree or
/// coprimality after trimming is reported as `DegenerateMap`.
pub fn conjugate_map(r: &RationalMap, g: &MobiusMap, tol: &Tolerances) -> Result<RationalMap> {
    let n = r.degree();
    let [a, b, c, d] = g.coefficients();
    let u = Polynomial::new(vec![-b, d]);
    let v = Polynomial::new(vec![a, -c]);
    let (u_pows, v_pows) = (powers(&u, n), powers(&v, n));
    let p_h = homogenize(r.numerator(), n, &u_pows, &v_pows);
    let q_h = homogenize(r.denominator(), n, &u_pows, &v_pows);

    let (ua, va) = (abs_poly(&u), abs_poly(&v));
    let (ua_pows, va_pows) = (powers(&ua, n), powers(&va, n));
    let p_b = homogenize(&abs_poly(r.numerator()), n, &ua_pows, &va_pows);
    let q_b = homogenize(&abs_poly(r.denominator()), n, &ua_pows, &va_pows);

    let num = &p_h.scaled(a) + &q_h.scaled(b);
    let den = &p_h.scaled(c) + &q_h.scaled(d);
    let num_bound = &p_b.scaled(Complex64::new(a.norm(), 0.0)) + &q_b.scaled(Complex64::new(b.norm(), 0.0));
    let den_bound = &p_b.scaled(Complex64::new(c.norm(), 0.0)) + &q_b.scaled(Complex64::new(d.norm(), 0.0));
    let mut num = trim_noise(&num, &num_bound);
    let mut den = trim_noise(&den, &den_bound);

    if den.is_zero() {
        return Err(Error::DegenerateMap("conjugate has zero denominator".into()));
    }
    if den.degree() == 0 {
        let k = den.coeffs()[0].inv();
        num = num.scaled(k);
        den = Polynomial::constant(Complex64::new(1.0, 0.0));
    }
    let s = RationalMap::new(num, den, tol).map_err(|e| match e {
        Error::InvariantViolation(msg) => Error::DegenerateMap(msg),
        other => other,
    })?;
    if s.degree() != n {
        return Err(Error::DegenerateMap(format!(
            "conjugate has degree {} instead of {n}",
            s.degree()
        )));
    }
    Ok(s)
}
