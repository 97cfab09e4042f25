//! Multipliers, residue fixed-point indices, classification and witness
//! search.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::mobius::{conjugate_map, ExtendedComplex, MobiusMap};
use crate::poly::Polynomial;
use crate::rational::RationalMap;
use crate::roots::{check_fixed, find_roots, fixed_points};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedPointClass {
    Superattracting,
    Attracting,
    RationallyIndifferent,
    IrrationallyIndifferent,
    Repelling,
}

impl FixedPointClass {
    pub fn as_str(self) -> &'static str {
        match self {
            FixedPointClass::Superattracting => "superattracting",
            FixedPointClass::Attracting => "attracting",
            FixedPointClass::RationallyIndifferent => "rationally-indifferent",
            FixedPointClass::IrrationallyIndifferent => "irrationally-indifferent",
            FixedPointClass::Repelling => "repelling",
        }
    }

    pub fn is_indifferent(self) -> bool {
        matches!(
            self,
            FixedPointClass::RationallyIndifferent | FixedPointClass::IrrationallyIndifferent
        )
    }

    pub fn is_attracting(self) -> bool {
        matches!(self, FixedPointClass::Superattracting | FixedPointClass::Attracting)
    }
}

/// Everything known about one fixed point.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointRecord {
    pub location: ExtendedComplex,
    pub multiplier: Complex64,
    pub multiplicity: usize,
    pub index: Complex64,
    pub class: FixedPointClass,
    /// `|λ| >= 1` or `λ = 1`.
    pub weakly_repelling: bool,
}

/// Trapezoidal-rule settings for the index contour integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourConfig {
    pub nodes: usize,
    /// Circle radius as a fraction of the distance to the nearest other
    /// singularity.
    pub radius_fraction: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self { nodes: 512, radius_fraction: 0.5 }
    }
}

impl ContourConfig {
    pub fn new(nodes: usize, radius_fraction: f64) -> Result<Self> {
        if nodes < 16 {
            return Err(Error::InvalidConfig(format!("contour needs at least 16 nodes, got {nodes}")));
        }
        if !(radius_fraction > 0.0 && radius_fraction <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "radius fraction must lie in (0, 1], got {radius_fraction}"
            )));
        }
        Ok(Self { nodes, radius_fraction })
    }
}

/// Per-map result bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub degree: usize,
    pub is_polynomial: bool,
    /// Sorted by location, infinity last.
    pub records: Vec<FixedPointRecord>,
    pub rfpt_sum: Complex64,
    /// `|rfpt_sum - 1|`.
    pub rfpt_residual: f64,
    /// Index sum over finite fixed points; polynomials only.
    pub finite_sum: Option<Complex64>,
    pub rnfp_witness: Option<ExtendedComplex>,
    pub weakly_repelling_witness: Option<ExtendedComplex>,
}

fn infinity_chart(r: &RationalMap, tol: &Tolerances) -> Result<RationalMap> {
    conjugate_map(r, &MobiusMap::inversion(), tol)
}

/// `R'(z0)` at a finite fixed point, `h'(0)` with `h(w) = 1/R(1/w)` at
/// infinity.
pub fn multiplier(r: &RationalMap, z0: ExtendedComplex, tol: &Tolerances) -> Result<Complex64> {
    match z0 {
        ExtendedComplex::Finite(z) => {
            check_fixed(r, z, tol)?;
            Ok(r.derivative_at(z))
        }
        ExtendedComplex::Infinity => {
            let h = infinity_chart(r, tol)?;
            let zero = Complex64::new(0.0, 0.0);
            check_fixed(&h, zero, tol).map_err(|_| Error::NotAFixedPoint("inf".into()))?;
            Ok(h.derivative_at(zero))
        }
    }
}

/// Classifies by `|λ|`. Indifferent multipliers are rational when some
/// `λ^q`, `q <= rational_order_cap`, is within `tau_mult` of 1. A multiple
/// point always has multiplier 1 and is rationally indifferent.
pub fn classify(lambda: Complex64, multiplicity: usize, tol: &Tolerances) -> FixedPointClass {
    let tau = tol.tau_mult;
    let modulus = lambda.norm();
    if multiplicity >= 2 {
        return FixedPointClass::RationallyIndifferent;
    }
    if modulus <= tau {
        FixedPointClass::Superattracting
    } else if modulus < 1.0 - tau {
        FixedPointClass::Attracting
    } else if modulus > 1.0 + tau {
        FixedPointClass::Repelling
    } else if (1..=tol.rational_order_cap).any(|q| (lambda.powu(q) - 1.0).norm() <= tau) {
        FixedPointClass::RationallyIndifferent
    } else {
        FixedPointClass::IrrationallyIndifferent
    }
}

/// `1 / (1 - λ)`, defined away from `λ = 1`.
pub fn residue_index_closed(lambda: Complex64, tol: &Tolerances) -> Result<Complex64> {
    let gap = Complex64::new(1.0, 0.0) - lambda;
    if gap.norm() <= tol.tau_mult {
        return Err(Error::MultiplierOne(lambda.to_string()));
    }
    Ok(gap.inv())
}

/// Residue of `1/(z - R(z))` at the finite fixed point `z0` by the
/// trapezoidal rule on a circle.
///
/// The radius is `radius_fraction` times the distance from `z0` to the
/// nearest other finite fixed point or pole of `R` (1 when there is none).
/// The integrand `-Q/(P - zQ)` is analytic on and around the circle, so
/// the rule converges geometrically in the node count.
pub fn residue_index_contour(
    r: &RationalMap,
    z0: Complex64,
    cfg: &ContourConfig,
    tol: &Tolerances,
) -> Result<Complex64> {
    check_fixed(r, z0, tol)?;
    let mut finite: Vec<Complex64> = fixed_points(r, tol)?
        .into_iter()
        .filter_map(|f| f.point.finite())
        .collect();
    let nearest = finite
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - z0).norm().total_cmp(&(b.1 - z0).norm()))
        .map(|(i, _)| i);
    if let Some(i) = nearest {
        finite.swap_remove(i);
    }
    let poles: Vec<Complex64> = if r.denominator().degree() >= 1 {
        find_roots(r.denominator(), tol)?.into_iter().map(|c| c.center).collect()
    } else {
        Vec::new()
    };
    let obstacles: Vec<f64> = finite.iter().chain(&poles).map(|w| (w - z0).norm()).collect();
    let reach = obstacles.iter().copied().fold(f64::INFINITY, f64::min);
    let reach = if reach.is_finite() { reach } else { 1.0 };
    let radius = cfg.radius_fraction * reach;
    if obstacles.iter().any(|&d| d <= 1.1 * radius) {
        return Err(Error::ContourContaminated { center: z0.to_string(), radius });
    }

    let f = r.fixed_point_polynomial()?;
    let q = r.denominator();
    let n = cfg.nodes;
    let sum: Complex64 = (0..n)
        .map(|k| {
            let offset = Complex64::from_polar(radius, TAU * k as f64 / n as f64);
            let z = z0 + offset;
            -offset * q.eval(z) / f.eval(z)
        })
        .sum();
    Ok(sum / n as f64)
}

/// A multiple fixed point is exactly one with multiplier 1.
fn is_multiplier_one(lambda: Complex64, tol: &Tolerances) -> bool {
    (lambda - 1.0).norm() <= tol.tau_mult
}

fn weakly_repelling(lambda: Complex64, tol: &Tolerances) -> bool {
    let m = lambda.norm();
    (m > 1.0 - tol.tau_mult && m >= 1.0) || is_multiplier_one(lambda, tol)
}

fn build_record(
    map: &RationalMap,
    point: Complex64,
    location: ExtendedComplex,
    multiplicity: usize,
    cfg: &ContourConfig,
    tol: &Tolerances,
) -> Result<FixedPointRecord> {
    let lambda = map.derivative_at(point);
    let index = if multiplicity == 1 && !is_multiplier_one(lambda, tol) {
        residue_index_closed(lambda, tol)?
    } else {
        residue_index_contour(map, point, cfg, tol)?
    };
    Ok(FixedPointRecord {
        location,
        multiplier: lambda,
        multiplicity,
        index,
        class: classify(lambda, multiplicity, tol),
        weakly_repelling: weakly_repelling(lambda, tol),
    })
}

/// Full fixed-point analysis of a non-identity map of degree at least 1.
pub fn analyze(r: &RationalMap, tol: &Tolerances, cfg: &ContourConfig) -> Result<AnalysisReport> {
    if r.degree() == 0 {
        return Err(Error::PreconditionUnmet("constant map".into()));
    }
    let locations = fixed_points(r, tol)?;
    let chart = if locations.iter().any(|l| l.point.is_infinite()) {
        Some(infinity_chart(r, tol)?)
    } else {
        None
    };
    let zero = Complex64::new(0.0, 0.0);
    let records = locations
        .par_iter()
        .map(|loc| match (loc.point, &chart) {
            (ExtendedComplex::Finite(z), _) => build_record(r, z, loc.point, loc.multiplicity, cfg, tol),
            (ExtendedComplex::Infinity, Some(h)) => {
                build_record(h, zero, loc.point, loc.multiplicity, cfg, tol)
            }
            (ExtendedComplex::Infinity, None) => unreachable!("chart built whenever infinity is fixed"),
        })
        .collect::<Result<Vec<_>>>()?;

    let rfpt_sum: Complex64 = records.iter().map(|r| r.index).sum();
    let finite_sum = r.is_polynomial().then(|| {
        records
            .iter()
            .filter(|r| !r.location.is_infinite())
            .map(|r| r.index)
            .sum()
    });
    let mut report = AnalysisReport {
        degree: r.degree(),
        is_polynomial: r.is_polynomial(),
        records,
        rfpt_sum,
        rfpt_residual: (rfpt_sum - 1.0).norm(),
        finite_sum,
        rnfp_witness: None,
        weakly_repelling_witness: None,
    };
    report.rnfp_witness = rnfp_witness(&report, tol);
    report.weakly_repelling_witness = if report.degree >= 2 {
        Some(weakly_repelling_witness(&report, tol)?)
    } else {
        find_weakly_repelling(&report.records, tol)
    };
    Ok(report)
}

fn is_rnfp(rec: &FixedPointRecord, tol: &Tolerances) -> bool {
    rec.multiplicity >= 2 || rec.multiplier.re >= 1.0 - tol.tau_mult
}

/// A fixed point whose multiplier has real part at least 1 (or is a
/// multiple point), choosing the largest real part; ties keep the first
/// in location order. `None` is a legitimate answer for rational maps
/// without a superattracting fixed point.
pub fn rnfp_witness(report: &AnalysisReport, tol: &Tolerances) -> Option<ExtendedComplex> {
    report
        .records
        .iter()
        .filter(|r| is_rnfp(r, tol))
        .fold(None::<&FixedPointRecord>, |best, r| match best {
            Some(b) if b.multiplier.re >= r.multiplier.re => Some(b),
            _ => Some(r),
        })
        .map(|r| r.location)
}

fn find_weakly_repelling(records: &[FixedPointRecord], tol: &Tolerances) -> Option<ExtendedComplex> {
    records
        .iter()
        .find(|r| {
            r.multiplicity >= 2 || r.multiplier.norm() > 1.0 + tol.tau_mult || is_multiplier_one(r.multiplier, tol)
        })
        .map(|r| r.location)
}

/// A repelling fixed point or one with multiplier 1. Every map of degree
/// at least 2 has one, so failing to find it means an upstream numerical
/// error.
pub fn weakly_repelling_witness(report: &AnalysisReport, tol: &Tolerances) -> Result<ExtendedComplex> {
    if report.degree < 2 {
        return Err(Error::PreconditionUnmet("weakly repelling witness needs degree at least 2".into()));
    }
    find_weakly_repelling(&report.records, tol).ok_or_else(|| {
        Error::InternalInconsistency("no repelling fixed point and none with multiplier 1".into())
    })
}

/// `(finite point with Re λ <= 1, point with λ = 1 or Im λ >= 0)`.
///
/// The first slot applies to polynomials of degree at least 2, the second
/// to maps with a superattracting fixed point. A slot whose hypothesis
/// fails is `None`; if neither applies the call fails.
pub fn secondary_witnesses(
    report: &AnalysisReport,
    tol: &Tolerances,
) -> Result<(Option<ExtendedComplex>, Option<ExtendedComplex>)> {
    let tau = tol.tau_mult;
    let first_applies = report.is_polynomial && report.degree >= 2;
    let second_applies = report
        .records
        .iter()
        .any(|r| r.class == FixedPointClass::Superattracting);
    if !first_applies && !second_applies {
        return Err(Error::PreconditionUnmet(
            "neither a polynomial of degree >= 2 nor a map with a superattracting fixed point".into(),
        ));
    }
    let first = first_applies
        .then(|| {
            report
                .records
                .iter()
                .find(|r| !r.location.is_infinite() && r.multiplier.re <= 1.0 + tau)
                .map(|r| r.location)
        })
        .flatten();
    let second = second_applies
        .then(|| {
            report
                .records
                .iter()
                .find(|r| r.multiplicity >= 2 || r.multiplier.im >= -tau)
                .map(|r| r.location)
        })
        .flatten();
    Ok((first, second))
}

/// One cycle of genuine period-`p` points.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicCycle {
    /// `z, P(z), ..., P^(p-1)(z)`.
    pub points: Vec<Complex64>,
    pub multiplier: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicReport {
    pub period: usize,
    /// Points of exact period `p`; multipliers are cycle multipliers.
    pub records: Vec<FixedPointRecord>,
    pub cycles: Vec<PeriodicCycle>,
    /// A genuine periodic point whose cycle multiplier has real part at
    /// least 1, if any.
    pub rnfp_witness: Option<Complex64>,
}

fn orbit_multiplier(derivative: &Polynomial, p: &Polynomial, z: Complex64, steps: usize) -> Complex64 {
    let mut w = z;
    let mut product = Complex64::new(1.0, 0.0);
    for _ in 0..steps {
        product *= derivative.eval(w);
        w = p.eval(w);
    }
    product
}

fn iterate(p: &Polynomial, z: Complex64, steps: usize) -> Complex64 {
    (0..steps).fold(z, |w, _| p.eval(w))
}

/// Points of exact period `period` of the polynomial `p`.
///
/// Roots of `P^p(z) - z` that are also fixed by `P^q` for a proper
/// divisor `q` are dropped. Each multiplier is the chain-rule product of
/// `P'` along the orbit. This reports evidence only.
pub fn periodic_points(
    p: &Polynomial,
    period: usize,
    tol: &Tolerances,
    cfg: &ContourConfig,
) -> Result<PeriodicReport> {
    if p.degree() < 2 {
        return Err(Error::PreconditionUnmet("periodic points need degree at least 2".into()));
    }
    if period == 0 {
        return Err(Error::PreconditionUnmet("period must be positive".into()));
    }
    let degree = u32::try_from(period)
        .ok()
        .and_then(|e| p.degree().checked_pow(e))
        .unwrap_or(usize::MAX);
    if degree > tol.composition_cap {
        return Err(Error::CapExceeded { degree, cap: tol.composition_cap });
    }
    let mut iterated = p.clone();
    for _ in 1..period {
        iterated = p.compose(&iterated, tol.composition_cap)?;
    }
    let map = RationalMap::polynomial(iterated);
    let dp = p.derivative();
    let divisors: Vec<usize> = (1..period).filter(|q| period % q == 0).collect();

    let mut records = Vec::new();
    'points: for loc in fixed_points(&map, tol)? {
        let ExtendedComplex::Finite(z) = loc.point else { continue };
        let lambda = orbit_multiplier(&dp, p, z, period);
        for &q in &divisors {
            if (iterate(p, z, q) - z).norm() <= tol.tau_fix * z.norm().max(1.0) {
                let lower = orbit_multiplier(&dp, p, z, q).powu((period / q) as u32);
                if (lower - lambda).norm() <= tol.tau_mult * lambda.norm().max(1.0) {
                    continue 'points;
                }
                return Err(Error::ClusterAmbiguity(z.to_string()));
            }
        }
        let index = if loc.multiplicity == 1 && !is_multiplier_one(lambda, tol) {
            residue_index_closed(lambda, tol)?
        } else {
            residue_index_contour(&map, z, cfg, tol)?
        };
        records.push(FixedPointRecord {
            location: loc.point,
            multiplier: lambda,
            multiplicity: loc.multiplicity,
            index,
            class: classify(lambda, loc.multiplicity, tol),
            weakly_repelling: weakly_repelling(lambda, tol),
        });
    }

    let points: Vec<Complex64> = records.iter().filter_map(|r| r.location.finite()).collect();
    let mut assigned = vec![false; points.len()];
    let mut cycles = Vec::new();
    for start in 0..points.len() {
        if assigned[start] {
            continue;
        }
        let mut orbit = Vec::with_capacity(period);
        let mut w = points[start];
        for _ in 0..period {
            let hit = points
                .iter()
                .enumerate()
                .filter(|(j, _)| !assigned[*j])
                .min_by(|a, b| (a.1 - w).norm().total_cmp(&(b.1 - w).norm()))
                .filter(|(_, q)| (*q - w).norm() <= 1e-6 * w.norm().max(1.0));
            match hit {
                Some((j, &q)) => {
                    assigned[j] = true;
                    orbit.push(q);
                }
                None => orbit.push(w),
            }
            w = p.eval(w);
        }
        cycles.push(PeriodicCycle { points: orbit, multiplier: records[start].multiplier });
    }

    let rnfp_witness = records
        .iter()
        .filter(|r| is_rnfp(r, tol))
        .fold(None::<&FixedPointRecord>, |best, r| match best {
            Some(b) if b.multiplier.re >= r.multiplier.re => Some(b),
            _ => Some(r),
        })
        .and_then(|r| r.location.finite());
    Ok(PeriodicReport { period, records, cycles, rnfp_witness })
}
