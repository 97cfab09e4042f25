//! Polynomials with prescribed fixed points, and the geometry of their
//! multipliers.
//!
//! A polynomial of degree `n` whose finite fixed points `α_1..α_n` are all
//! simple can be written `z + k ∏ (z - α_j)`, and then
//! `λ_i = 1 + k ∏_{j≠i} (α_i - α_j)`. Both the real-part-one families and
//! the equidistance checks below rest on that identity.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::poly::Polynomial;
use crate::rational::RationalMap;
use crate::roots::fixed_points;

/// Vertices `center + radius · e^{i(phase + 2πk/n)}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NGonSpec {
    pub center: Complex64,
    pub radius: f64,
    pub phase: f64,
    pub n: usize,
}

impl NGonSpec {
    pub fn new(center: Complex64, radius: f64, phase: f64, n: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidConfig(format!("n-gon radius must be positive, got {radius}")));
        }
        if !(phase > 0.0 && phase <= TAU) {
            return Err(Error::InvalidConfig(format!("n-gon phase must lie in (0, 2π], got {phase}")));
        }
        if n < 3 {
            return Err(Error::InvalidConfig(format!("n-gon needs n >= 3, got {n}")));
        }
        Ok(Self { center, radius, phase, n })
    }

    pub fn vertices(&self) -> Vec<Complex64> {
        (0..self.n)
            .map(|k| {
                self.center
                    + Complex64::from_polar(self.radius, self.phase + TAU * k as f64 / self.n as f64)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Collinear,
    EquilateralTriangle,
    Rectangle,
    RegularNGon(usize),
    None,
}

impl Shape {
    pub fn label(self) -> String {
        match self {
            Shape::Collinear => "collinear".into(),
            Shape::EquilateralTriangle => "equilateral-triangle".into(),
            Shape::Rectangle => "rectangle".into(),
            Shape::RegularNGon(n) => format!("regular-{n}-gon"),
            Shape::None => "none".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeometryVerdict {
    pub equidistant: bool,
    /// Mean of `|λ_i - 1|` when `equidistant`.
    pub common_distance: Option<f64>,
    /// Shape of the finite fixed points.
    pub shape: Shape,
    pub all_real_part_one: bool,
    /// For degrees 2 and 3: whether the raw real-part test agrees with the
    /// closed-form characterization for that degree.
    pub theorem_consistent: Option<bool>,
    pub reason: Option<String>,
}

impl GeometryVerdict {
    fn empty() -> Self {
        Self {
            equidistant: false,
            common_distance: None,
            shape: Shape::None,
            all_real_part_one: false,
            theorem_consistent: None,
            reason: None,
        }
    }
}

fn check_distinct(alphas: &[Complex64], tol: &Tolerances) -> Result<()> {
    let scale = alphas.iter().map(|a| a.norm()).fold(1.0, f64::max);
    for (i, a) in alphas.iter().enumerate() {
        for b in &alphas[i + 1..] {
            if (a - b).norm() <= tol.tau_fix * scale {
                return Err(Error::DuplicateFixedPoint(a.to_string(), b.to_string()));
            }
        }
    }
    Ok(())
}

/// `z + k ∏ (z - α_i)`.
pub fn construct_from_fixed_points(alphas: &[Complex64], k: Complex64, tol: &Tolerances) -> Result<Polynomial> {
    if k == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroK);
    }
    if alphas.is_empty() {
        return Err(Error::PreconditionUnmet("at least one fixed point is required".into()));
    }
    check_distinct(alphas, tol)?;
    Ok(&Polynomial::identity() + &Polynomial::from_roots(alphas, k))
}

/// `λ_i = 1 + k ∏_{j≠i} (α_i - α_j)`, in input order.
pub fn multipliers_via_products(alphas: &[Complex64], k: Complex64, tol: &Tolerances) -> Result<Vec<Complex64>> {
    if k == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroK);
    }
    check_distinct(alphas, tol)?;
    Ok(alphas
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let product: Complex64 = alphas
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &b)| a - b)
                .product();
            1.0 + k * product
        })
        .collect())
}

/// `z + M((z - a)^n - (r e^{iθ})^n)`: fixed points exactly the n-gon
/// vertices, multipliers `1 + M n (r e^{iθ})^{n-1} e^{-2πik/n}`.
pub fn construct_ngon(spec: &NGonSpec, m: Complex64) -> Result<Polynomial> {
    if m == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroM);
    }
    let shifted = Polynomial::from_roots(&vec![spec.center; spec.n], m);
    let vertex_pow = Complex64::from_polar(spec.radius, spec.phase).powu(spec.n as u32);
    let constant = Polynomial::constant(-m * vertex_pow);
    Ok(&(&Polynomial::identity() + &shifted) + &constant)
}

/// `z + ik ∏ (z - a_i) ∏ (z - b_j)^{p_j}` with real `a_i`, `b_j`, `k`.
///
/// Every multiplier has real part 1: at a simple `a_i` the derivative is
/// `1 + ik·(real product)`, and each `b_j` with `p_j >= 2` has multiplier
/// exactly 1. The construction re-checks this numerically.
pub fn construct_real_part_one_family(
    simple: &[f64],
    multiple: &[(f64, u32)],
    k: f64,
    tol: &Tolerances,
) -> Result<Polynomial> {
    let all: Vec<f64> = simple.iter().copied().chain(multiple.iter().map(|m| m.0)).collect();
    if let Some(bad) = all.iter().chain(std::iter::once(&k)).find(|x| !x.is_finite()) {
        return Err(Error::NonRealInput(bad.to_string()));
    }
    if k == 0.0 {
        return Err(Error::ZeroK);
    }
    if all.is_empty() {
        return Err(Error::PreconditionUnmet("no base points given".into()));
    }
    if let Some((b, p)) = multiple.iter().find(|(_, p)| *p < 2) {
        return Err(Error::PreconditionUnmet(format!("power {p} at {b} must be at least 2")));
    }
    let scale = all.iter().map(|x| x.abs()).fold(1.0, f64::max);
    for (i, a) in all.iter().enumerate() {
        if all[i + 1..].iter().any(|b| (a - b).abs() <= tol.tau_fix * scale) {
            return Err(Error::DuplicatePoint(a.to_string()));
        }
    }

    let mut roots: Vec<Complex64> = simple.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    for &(b, p) in multiple {
        roots.extend(std::iter::repeat(Complex64::new(b, 0.0)).take(p as usize));
    }
    let poly = &Polynomial::identity() + &Polynomial::from_roots(&roots, Complex64::new(0.0, k));

    let dp = poly.derivative();
    for &a in simple {
        let lam = dp.eval(Complex64::new(a, 0.0));
        if (lam.re - 1.0).abs() > tol.tau_mult {
            return Err(Error::InternalInconsistency(format!("multiplier {lam} at {a} has real part != 1")));
        }
    }
    for &(b, _) in multiple {
        let lam = dp.eval(Complex64::new(b, 0.0));
        if (lam - 1.0).norm() > tol.tau_mult {
            return Err(Error::InternalInconsistency(format!("multiplier {lam} at multiple point {b} != 1")));
        }
    }
    Ok(poly)
}

/// `k z^3 - (k + kα) z^2 + (kα + 1) z` for purely imaginary `k` and real
/// `α` outside `{0, 1}`: simple fixed points `0, 1, α`, all multipliers
/// with real part 1.
pub fn construct_remark5(k: Complex64, alpha: f64, tol: &Tolerances) -> Result<Polynomial> {
    if k == Complex64::new(0.0, 0.0) || !k.im.is_finite() || k.re.abs() > 1e-12 * k.norm() {
        return Err(Error::InvalidK(k.to_string()));
    }
    if !alpha.is_finite() || alpha.abs() <= tol.tau_fix || (alpha - 1.0).abs() <= tol.tau_fix {
        return Err(Error::InvalidAlpha(alpha.to_string()));
    }
    Ok(Polynomial::new(vec![
        Complex64::new(0.0, 0.0),
        k * alpha + 1.0,
        -(k + k * alpha),
        k,
    ]))
}

/// Affine `g` and `c` with `g ∘ P ∘ g^-1 = z^2 + c`. For
/// `P = az^2 + bz + d`, `g(z) = az + b/2` and `c = ad + b/2 - b^2/4`.
pub fn normalize_quadratic(p: &Polynomial) -> Result<(Complex64, MobiusMap)> {
    if p.degree() != 2 {
        return Err(Error::PreconditionUnmet(format!("expected a quadratic, got degree {}", p.degree())));
    }
    let [d, b, a] = [p.coeffs()[0], p.coeffs()[1], p.coeffs()[2]];
    let c = a * d + b / 2.0 - b * b / 4.0;
    Ok((c, MobiusMap::affine(a, b / 2.0)?))
}

struct FixedData {
    points: Vec<Complex64>,
    multipliers: Vec<Complex64>,
    multiplicities: Vec<usize>,
}

fn finite_fixed_data(p: &Polynomial, tol: &Tolerances) -> Result<FixedData> {
    let dp = p.derivative();
    let mut data = FixedData { points: Vec::new(), multipliers: Vec::new(), multiplicities: Vec::new() };
    for f in fixed_points(&RationalMap::polynomial(p.clone()), tol)? {
        if let Some(z) = f.point.finite() {
            data.points.push(z);
            data.multipliers.push(dp.eval(z));
            data.multiplicities.push(f.multiplicity);
        }
    }
    Ok(data)
}

fn shape_of(points: &[Complex64], tol: &Tolerances) -> Shape {
    if points.len() < 2 {
        Shape::None
    } else {
        shape_detect(points, tol).unwrap_or(Shape::None)
    }
}

/// Whether every finite multiplier has real part 1.
///
/// For quadratics the answer is cross-checked against the normal form
/// `z^2 + c` (true exactly when `c` is real and `c >= 1/4`). For cubics
/// with three distinct fixed points it is cross-checked against
/// "collinear fixed points and one multiplier with real part 1". Higher
/// degrees get the raw test only.
pub fn real_part_one_check(p: &Polynomial, tol: &Tolerances) -> Result<GeometryVerdict> {
    let data = finite_fixed_data(p, tol)?;
    let tau = tol.tau_mult;
    let all_one = data.multipliers.iter().all(|l| (l.re - 1.0).abs() <= tau);
    let mut verdict = GeometryVerdict { all_real_part_one: all_one, ..GeometryVerdict::empty() };
    match p.degree() {
        2 => {
            let (c, _) = normalize_quadratic(p)?;
            let expected = c.im.abs() <= tau && c.re >= 0.25 - tau;
            verdict.theorem_consistent = Some(expected == all_one);
            verdict.shape = shape_of(&data.points, tol);
        }
        3 => {
            verdict.shape = shape_of(&data.points, tol);
            if data.points.len() == 3 {
                let one = data.multipliers.iter().any(|l| (l.re - 1.0).abs() <= tau);
                let expected = verdict.shape == Shape::Collinear && one;
                verdict.theorem_consistent = Some(expected == all_one);
            }
        }
        _ => {}
    }
    Ok(verdict)
}

/// Whether all finite multipliers lie at one distance from 1.
///
/// Only meaningful when every finite fixed point is simple. If all are
/// multiple, every multiplier is 1 and the answer is trivially yes; a mix
/// of simple and multiple points is never equidistant.
pub fn equidistance_check(p: &Polynomial, tol: &Tolerances) -> Result<GeometryVerdict> {
    let data = finite_fixed_data(p, tol)?;
    let mut verdict = GeometryVerdict { shape: shape_of(&data.points, tol), ..GeometryVerdict::empty() };
    verdict.all_real_part_one = data.multipliers.iter().all(|l| (l.re - 1.0).abs() <= tol.tau_mult);

    let multiple = data.multiplicities.iter().filter(|&&m| m >= 2).count();
    if multiple == data.points.len() && multiple > 0 {
        verdict.equidistant = true;
        verdict.common_distance = Some(0.0);
        verdict.reason = Some("all fixed points are multiple".into());
        return Ok(verdict);
    }
    if multiple > 0 {
        verdict.reason = Some("mixed simple and multiple fixed points".into());
        return Ok(verdict);
    }
    let dists: Vec<f64> = data.multipliers.iter().map(|l| (l - 1.0).norm()).collect();
    let hi = dists.iter().copied().fold(0.0, f64::max);
    let lo = dists.iter().copied().fold(f64::INFINITY, f64::min);
    if hi - lo <= tol.tau_geo * hi {
        verdict.equidistant = true;
        verdict.common_distance = Some(dists.iter().sum::<f64>() / dists.len() as f64);
    }
    Ok(verdict)
}

fn centroid(points: &[Complex64]) -> Complex64 {
    points.iter().sum::<Complex64>() / points.len() as f64
}

fn sorted_by_angle(points: &[Complex64], center: Complex64) -> Vec<Complex64> {
    let mut v = points.to_vec();
    v.sort_by(|a, b| (a - center).arg().total_cmp(&(b - center).arg()));
    v
}

/// Classifies a point configuration. Priority: collinear, regular n-gon,
/// equilateral triangle or rectangle, none. All tolerances are
/// `tau_geo` times the diameter of the set.
pub fn shape_detect(points: &[Complex64], tol: &Tolerances) -> Result<Shape> {
    let n = points.len();
    if n < 2 {
        return Err(Error::PreconditionUnmet("shape detection needs at least two points".into()));
    }
    let mut diameter: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            diameter = diameter.max((a - b).norm());
        }
    }
    let eps = tol.tau_geo * diameter;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if (a - b).norm() <= eps {
                return Err(Error::DuplicatePoints(a.to_string(), b.to_string()));
            }
        }
    }

    let base = points[0];
    let far = points
        .iter()
        .copied()
        .max_by(|a, b| (a - base).norm().total_cmp(&(b - base).norm()))
        .unwrap();
    let axis = (far - base) / (far - base).norm();
    if points.iter().all(|p| ((p - base) * axis.conj()).im.abs() <= eps) {
        return Ok(Shape::Collinear);
    }

    let center = centroid(points);
    let ring = sorted_by_angle(points, center);
    let radii: Vec<f64> = ring.iter().map(|p| (p - center).norm()).collect();
    let mean_radius = radii.iter().sum::<f64>() / n as f64;
    if radii.iter().all(|r| (r - mean_radius).abs() <= eps) {
        let step = TAU / n as f64;
        let regular = (0..n).all(|i| {
            let a = (ring[i] - center).arg();
            let b = (ring[(i + 1) % n] - center).arg();
            let mut gap = b - a;
            if gap <= 0.0 {
                gap += TAU;
            }
            (gap - step).abs() * mean_radius <= eps
        });
        if regular {
            return Ok(Shape::RegularNGon(n));
        }
    }

    let close = |x: f64, y: f64| (x - y).abs() <= eps;
    if n == 3 {
        let d = [
            (points[0] - points[1]).norm(),
            (points[1] - points[2]).norm(),
            (points[2] - points[0]).norm(),
        ];
        if close(d[0], d[1]) && close(d[1], d[2]) {
            return Ok(Shape::EquilateralTriangle);
        }
    }
    if n == 4 {
        let side = |i: usize, j: usize| (ring[i] - ring[j]).norm();
        if close(side(0, 1), side(2, 3)) && close(side(1, 2), side(3, 0)) && close(side(0, 2), side(1, 3)) {
            return Ok(Shape::Rectangle);
        }
    }
    Ok(Shape::None)
}
