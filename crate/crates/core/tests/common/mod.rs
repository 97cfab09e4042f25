#![allow(dead_code)]

use fixdyn::{fixed_points, Complex64, ExtendedComplex, Polynomial, RationalMap, Tolerances};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn unit_square(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Coefficients in the unit square, leading coefficient of modulus at
/// least 0.5.
pub fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Polynomial {
    let mut coeffs: Vec<Complex64> = (0..degree).map(|_| unit_square(rng)).collect();
    let lead = Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU));
    coeffs.push(lead);
    Polynomial::new(coeffs)
}

pub fn random_rational(rng: &mut ChaCha8Rng, degree: usize, tol: &Tolerances) -> RationalMap {
    loop {
        let (dp, dq) = match rng.gen_range(0..3) {
            0 => (degree, rng.gen_range(1..degree)),
            1 => (rng.gen_range(0..degree), degree),
            _ => (degree, degree),
        };
        if let Ok(r) = RationalMap::new(random_poly(rng, dp), random_poly(rng, dq), tol) {
            return r;
        }
    }
}

/// Chordal distance on the sphere.
pub fn chordal(a: ExtendedComplex, b: ExtendedComplex) -> f64 {
    match (a, b) {
        (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => 0.0,
        (ExtendedComplex::Finite(z), ExtendedComplex::Infinity)
        | (ExtendedComplex::Infinity, ExtendedComplex::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
        (ExtendedComplex::Finite(z), ExtendedComplex::Finite(w)) => {
            2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
        }
    }
}

/// Smallest distance between fixed points (chordal when one of them is
/// infinity), or `None` if some fixed point is multiple.
pub fn fixed_point_separation(r: &RationalMap, tol: &Tolerances) -> Option<f64> {
    let fps = fixed_points(r, tol).ok()?;
    if fps.iter().any(|f| f.multiplicity > 1) {
        return None;
    }
    let mut best = f64::INFINITY;
    for (i, a) in fps.iter().enumerate() {
        for b in &fps[i + 1..] {
            let d = match (a.point.finite(), b.point.finite()) {
                (Some(z), Some(w)) => (z - w).norm(),
                _ => chordal(a.point, b.point),
            };
            best = best.min(d);
        }
    }
    Some(best)
}

/// A random map of the given degree whose fixed points are simple and
/// pairwise further apart than `sep`.
pub fn separated_map(rng: &mut ChaCha8Rng, degree: usize, polynomial: bool, sep: f64, tol: &Tolerances) -> RationalMap {
    loop {
        let r = if polynomial {
            RationalMap::polynomial(random_poly(rng, degree))
        } else {
            random_rational(rng, degree, tol)
        };
        if fixed_point_separation(&r, tol).is_some_and(|s| s > sep) {
            return r;
        }
    }
}
