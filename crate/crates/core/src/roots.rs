//! Simultaneous root finding and the fixed-point set of a rational map.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::mobius::{conjugate_map, ExtendedComplex, MobiusMap};
use crate::poly::Polynomial;
use crate::rational::RationalMap;

/// Largest multiplicity the cluster search looks for. Beyond this the
/// cluster radius `root_tol^(1/m)` is too coarse to mean anything in
/// double precision; exact zero roots are handled separately.
const MAX_CLUSTER: usize = 16;

/// A root with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
    /// `|p(center)| / scale(p)`.
    pub residual: f64,
}

/// A fixed point on the sphere with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointLocation {
    pub point: ExtendedComplex,
    pub multiplicity: usize,
}

/// All roots of `p`, grouped into clusters with multiplicities that sum
/// to `deg p`. Sorted by `(re, im)`.
pub fn find_roots(p: &Polynomial, tol: &Tolerances) -> Result<Vec<RootCluster>> {
    if p.degree() == 0 {
        return Err(Error::PreconditionUnmet("root finding needs degree at least 1".into()));
    }
    let (zero_mult, q) = p.strip_zero_roots();
    let mut clusters = Vec::new();
    if zero_mult > 0 {
        clusters.push((Complex64::new(0.0, 0.0), zero_mult));
    }
    match q.degree() {
        0 => {}
        1 => clusters.push((-q.coeffs()[0] / q.coeffs()[1], 1)),
        _ => {
            let approx = aberth(&q, tol)?;
            clusters.extend(group_clusters(&q, &approx, tol));
        }
    }
    let scale = p.scale();
    let mut out: Vec<RootCluster> = clusters
        .into_iter()
        .map(|(center, multiplicity)| RootCluster {
            center,
            multiplicity,
            residual: p.eval(center).norm() / scale,
        })
        .collect();
    out.sort_by(|a, b| a.center.re.total_cmp(&b.center.re).then(a.center.im.total_cmp(&b.center.im)));
    Ok(out)
}

/// Aberth–Ehrlich iteration in Gauss–Seidel order. An approximation is
/// frozen once `|q(z)|` drops to the rounding level of the Horner sum, or
/// its correction stops changing it.
fn aberth(q: &Polynomial, tol: &Tolerances) -> Result<Vec<Complex64>> {
    let n = q.degree();
    let dq = q.derivative();
    let lead = q.leading();
    let radius = 1.0
        + q.coeffs()[..n]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(tol.root_seed);
    let offset = rng.gen::<f64>() * TAU / n as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, offset + TAU * k as f64 / n as f64))
        .collect();
    let mut frozen = vec![false; n];
    let gamma = 4.0 * (n as f64 + 1.0) * f64::EPSILON;

    for _ in 0..tol.root_max_iter {
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let (value, bound) = q.eval_with_bound(z[i]);
            if value.norm() <= gamma * bound {
                frozen[i] = true;
                continue;
            }
            let ratio = value / dq.eval(z[i]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                // Landed on a critical point or on top of another iterate.
                let bump = Complex64::new(1e-3, 1e-3) * z[i].norm().max(1.0);
                z[i] += bump;
                continue;
            }
            z[i] -= step;
            if step.norm() <= f64::EPSILON * z[i].norm() {
                frozen[i] = true;
            }
        }
        if frozen.iter().all(|&f| f) {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        iterations: tol.root_max_iter,
        unconverged: frozen.iter().filter(|&&f| !f).count(),
    })
}

/// The least `j >= 1` at which the Taylor coefficient of `p` at `c` is not
/// negligible against its in-phase magnitude, capped at `max_order`.
pub(crate) fn vanishing_order(p: &Polynomial, c: Complex64, tau: f64, max_order: usize) -> usize {
    let (taylor, bounds) = p.taylor_with_bounds(c);
    (1..=max_order.min(p.degree()))
        .find(|&j| taylor[j].norm() > tau * bounds[j])
        .unwrap_or(max_order.min(p.degree()))
}

/// Groups Aberth approximations into clusters. Multiplicities are tried
/// from the largest down: `m` approximations within `root_tol^(1/m)` of
/// their centroid form a cluster when the Taylor coefficients of orders
/// below `m` vanish at the centroid and order `m` does not.
fn group_clusters(q: &Polynomial, approx: &[Complex64], tol: &Tolerances) -> Vec<(Complex64, usize)> {
    let n = approx.len();
    let mut taken = vec![false; n];
    let mut out = Vec::new();
    for m in (2..=n.min(MAX_CLUSTER)).rev() {
        for i in 0..n {
            if taken[i] {
                continue;
            }
            let mut near: Vec<usize> = (0..n).filter(|&j| !taken[j]).collect();
            if near.len() < m {
                break;
            }
            near.sort_by(|&a, &b| {
                (approx[a] - approx[i]).norm().total_cmp(&(approx[b] - approx[i]).norm())
            });
            near.truncate(m);
            let centroid = near.iter().map(|&j| approx[j]).sum::<Complex64>() / m as f64;
            let radius = tol.root_tol.powf(1.0 / m as f64) * centroid.norm().max(1.0);
            if near.iter().any(|&j| (approx[j] - centroid).norm() > radius) {
                continue;
            }
            let center = polish_cluster(q, centroid, m, radius);
            if vanishing_order(q, center, tol.tau_mult, m) == m {
                for &j in &near {
                    taken[j] = true;
                }
                out.push((center, m));
            }
        }
    }
    for i in 0..n {
        if !taken[i] {
            out.push((polish(q, approx[i]), 1));
        }
    }
    out
}

/// Newton on `q^(m-1)`, which has a simple root at an `m`-fold root of
/// `q`. Steps that leave the cluster disc are discarded.
fn polish_cluster(q: &Polynomial, centroid: Complex64, m: usize, radius: f64) -> Complex64 {
    let mut d = q.clone();
    for _ in 1..m {
        d = d.derivative();
    }
    let refined = polish(&d, centroid);
    if (refined - centroid).norm() <= radius {
        refined
    } else {
        centroid
    }
}

/// A few Newton steps, kept only while they reduce the residual.
fn polish(q: &Polynomial, mut z: Complex64) -> Complex64 {
    let dq = q.derivative();
    let mut best = q.eval(z).norm();
    for _ in 0..3 {
        let next = z - q.eval(z) / dq.eval(z);
        let r = q.eval(next).norm();
        if r.is_finite() && r < best {
            z = next;
            best = r;
        } else {
            break;
        }
    }
    z
}

/// Every fixed point of `r` on the sphere, counted with multiplicity.
///
/// Finite fixed points are the root clusters of `P - zQ`; infinity is
/// fixed exactly when `deg P > deg Q` and absorbs the remaining
/// multiplicity so that the total is `d + 1`.
pub fn fixed_points(r: &RationalMap, tol: &Tolerances) -> Result<Vec<FixedPointLocation>> {
    if r.degree() == 0 {
        return Err(Error::PreconditionUnmet("constant map".into()));
    }
    let f = r.fixed_point_polynomial()?;
    let mut out: Vec<FixedPointLocation> = if f.degree() >= 1 {
        find_roots(&f, tol)?
            .into_iter()
            .map(|c| FixedPointLocation { point: c.center.into(), multiplicity: c.multiplicity })
            .collect()
    } else {
        Vec::new()
    };
    if r.numerator().degree() > r.denominator().degree() {
        out.push(FixedPointLocation {
            point: ExtendedComplex::Infinity,
            multiplicity: r.degree() + 1 - f.degree(),
        });
    }
    out.sort_by(|a, b| a.point.sort_cmp(&b.point));
    Ok(out)
}

/// Order of `z0` as a zero of `R(z) - z`.
///
/// Order one is decided by `|R'(z0) - 1| > tau_mult`, so that the count
/// agrees with the multiplier test; higher orders come from the Taylor
/// coefficients of `P - zQ`. At infinity the chart `h(w) = 1/R(1/w)` is
/// used.
pub fn multiplicity_of_fixed_point(r: &RationalMap, z0: ExtendedComplex, tol: &Tolerances) -> Result<usize> {
    match z0 {
        ExtendedComplex::Infinity => {
            let h = conjugate_map(r, &MobiusMap::inversion(), tol)?;
            multiplicity_of_fixed_point(&h, Complex64::new(0.0, 0.0).into(), tol)
                .map_err(|_| Error::NotAFixedPoint("inf".into()))
        }
        ExtendedComplex::Finite(z) => {
            check_fixed(r, z, tol)?;
            if (r.derivative_at(z) - 1.0).norm() > tol.tau_mult {
                return Ok(1);
            }
            let f = r.fixed_point_polynomial()?;
            Ok(vanishing_order(&f, z, tol.tau_mult, f.degree()).max(2))
        }
    }
}

pub(crate) fn check_fixed(r: &RationalMap, z: Complex64, tol: &Tolerances) -> Result<()> {
    match r.eval(z) {
        Some(w) if (w - z).norm() <= tol.tau_fix * z.norm().max(1.0) => Ok(()),
        _ => Err(Error::NotAFixedPoint(z.to_string())),
    }
}
