//! Numerical tolerances shared by every module.

use crate::error::{Error, Result};

/// Tolerances and iteration limits. Every threshold that decides a
/// discrete property (multiplicity, class, shape) lives here.
#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances {
    /// Residual target handed to the root finder; also sets cluster radii.
    pub root_tol: f64,
    /// `|R(z) - z|` allowed at a point declared fixed, relative to `max(1, |z|)`.
    pub tau_fix: f64,
    /// Distance from 1 under which a multiplier counts as exactly 1.
    pub tau_mult: f64,
    /// Common-root distance that makes a numerator/denominator pair non-coprime.
    pub tau_root: f64,
    /// Relative tolerance for shape and equidistance decisions.
    pub tau_geo: f64,
    /// Smallest admissible `|ad - bc|` relative to the squared coefficient size.
    pub tau_det: f64,
    pub root_max_iter: usize,
    /// Largest root-of-unity order tried when classifying indifferent points.
    pub rational_order_cap: u32,
    pub composition_cap: usize,
    /// Seed for the angular offset of the root finder's starting circle.
    pub root_seed: u64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root_tol: 1e-12,
            tau_fix: 1e-8,
            tau_mult: 1e-6,
            tau_root: 1e-8,
            tau_geo: 1e-7,
            tau_det: 1e-12,
            root_max_iter: 500,
            rational_order_cap: 64,
            composition_cap: 4096,
            root_seed: 0x5eed_f1c5,
        }
    }
}

impl Tolerances {
    /// Sets one field by name, as used by `--config key=value`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn real(key: &str, v: &str) -> Result<f64> {
            let x: f64 = v
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("{key}: not a number: {v}")))?;
            if !(x.is_finite() && x > 0.0) {
                return Err(Error::InvalidConfig(format!("{key}: must be positive: {v}")));
            }
            Ok(x)
        }
        fn count(key: &str, v: &str) -> Result<u64> {
            match v.parse::<u64>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(Error::InvalidConfig(format!("{key}: not a positive integer: {v}"))),
            }
        }
        match key {
            "root_tol" => self.root_tol = real(key, value)?,
            "tau_fix" => self.tau_fix = real(key, value)?,
            "tau_mult" => self.tau_mult = real(key, value)?,
            "tau_root" => self.tau_root = real(key, value)?,
            "tau_geo" => self.tau_geo = real(key, value)?,
            "tau_det" => self.tau_det = real(key, value)?,
            "root_max_iter" => self.root_max_iter = count(key, value)? as usize,
            "rational_order_cap" => self.rational_order_cap = count(key, value)? as u32,
            "composition_cap" => self.composition_cap = count(key, value)? as usize,
            "root_seed" => {
                self.root_seed = value
                    .parse()
                    .map_err(|_| Error::InvalidConfig(format!("{key}: not an integer: {value}")))?
            }
            _ => return Err(Error::InvalidConfig(format!("unknown key {key}"))),
        }
        Ok(())
    }
}
