//! Escape-time pictures of filled Julia sets.

use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderConfig {
    pub center: Complex64,
    pub half_width: f64,
    pub width: usize,
    pub height: usize,
    pub max_iter: u32,
    pub escape_radius_override: Option<f64>,
}

impl RenderConfig {
    pub fn new(center: Complex64, half_width: f64, width: usize, height: usize, max_iter: u32) -> Result<Self> {
        let cfg = Self { center, half_width, width, height, max_iter, escape_radius_override: None };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_escape_radius(mut self, radius: f64) -> Result<Self> {
        self.escape_radius_override = Some(radius);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.width < 16 || self.height < 16 {
            return Err(Error::InvalidConfig(format!(
                "resolution {}x{} is below 16x16",
                self.width, self.height
            )));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::InvalidConfig(format!("half-width {} must be positive", self.half_width)));
        }
        if !(self.center.re.is_finite() && self.center.im.is_finite()) {
            return Err(Error::InvalidConfig("window center must be finite".into()));
        }
        if let Some(r) = self.escape_radius_override {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::InvalidConfig(format!("escape radius {r} must be positive")));
            }
        }
        Ok(())
    }

    /// Vertical half-extent, keeping pixels square.
    pub fn half_height(&self) -> f64 {
        self.half_width * self.height as f64 / self.width as f64
    }

    /// Center of pixel `(col, row)`; row 0 is the top edge.
    pub fn pixel_center(&self, col: usize, row: usize) -> Complex64 {
        let hh = self.half_height();
        let x = self.center.re - self.half_width + (col as f64 + 0.5) * 2.0 * self.half_width / self.width as f64;
        let y = self.center.im + hh - (row as f64 + 0.5) * 2.0 * hh / self.height as f64;
        Complex64::new(x, y)
    }
}

impl Default for RenderConfig {
    /// The window used for the built-in cubic figures.
    fn default() -> Self {
        Self {
            center: Complex64::new(0.5, 0.0),
            half_width: 1.5,
            width: 800,
            height: 800,
            max_iter: 400,
            escape_radius_override: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapeGrid {
    pub width: usize,
    pub height: usize,
    pub max_iter: u32,
    /// Row-major, row 0 on top. `max_iter` marks a point that did not escape.
    pub cells: Vec<u32>,
}

impl EscapeGrid {
    pub fn get(&self, col: usize, row: usize) -> u32 {
        self.cells[row * self.width + col]
    }
}

/// `max(1, (2 + Σ_{i<n} |a_i|) / |a_n|)`.
///
/// For `|z| >= R >= 1`,
/// `|P(z)| >= |z|^{n-1} (|a_n| |z| - Σ_{i<n} |a_i|) >= 2 |z|^{n-1} >= 2 |z|`,
/// so once an orbit leaves the disc of radius `R` it goes to infinity.
pub fn escape_radius(p: &Polynomial) -> f64 {
    let n = p.degree();
    let lower: f64 = p.coeffs()[..n].iter().map(|c| c.norm()).sum();
    ((2.0 + lower) / p.leading().norm()).max(1.0)
}

fn effective_radius(p: &Polynomial, cfg: &RenderConfig) -> f64 {
    cfg.escape_radius_override.unwrap_or_else(|| escape_radius(p))
}

/// First `n` in `1..=max_iter` with `|P^n(z0)| > R`, or `max_iter`.
///
/// Orbits that come back to within `1e-12 · max(1, |z|)` of an earlier
/// point are declared periodic and stop early. Without this, repelling
/// fixed points would "escape" by amplified rounding error.
pub fn escape_time(p: &Polynomial, z0: Complex64, cfg: &RenderConfig) -> u32 {
    escape_time_with(p, z0, effective_radius(p, cfg), cfg.max_iter)
}

fn escape_time_with(p: &Polynomial, z0: Complex64, radius: f64, max_iter: u32) -> u32 {
    let mut z = z0;
    let mut saved = z0;
    let mut next_save = 1u32;
    for n in 1..=max_iter {
        z = p.eval(z);
        if !(z.norm() <= radius) {
            return n.min(max_iter);
        }
        if (z - saved).norm() <= 1e-12 * z.norm().max(1.0) {
            return max_iter;
        }
        if n == next_save {
            saved = z;
            next_save = next_save.saturating_mul(2);
        }
    }
    max_iter
}

pub fn render(p: &Polynomial, cfg: &RenderConfig) -> Result<EscapeGrid> {
    cfg.validate()?;
    if p.degree() < 2 {
        return Err(Error::PreconditionUnmet(format!("rendering needs degree >= 2, got {}", p.degree())));
    }
    let radius = effective_radius(p, cfg);
    let cells: Vec<u32> = (0..cfg.height)
        .into_par_iter()
        .flat_map_iter(|row| {
            (0..cfg.width).map(move |col| escape_time_with(p, cfg.pixel_center(col, row), radius, cfg.max_iter))
        })
        .collect();
    Ok(EscapeGrid { width: cfg.width, height: cfg.height, max_iter: cfg.max_iter, cells })
}

/// Binary PPM: black for non-escaping cells, gray `round(255 (1 - n/max))`
/// otherwise.
pub fn encode_ppm(grid: &EscapeGrid) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", grid.width, grid.height).into_bytes();
    out.reserve(grid.cells.len() * 3);
    for &n in &grid.cells {
        let g = if n >= grid.max_iter {
            0
        } else {
            (255.0 * (1.0 - n as f64 / grid.max_iter as f64)).round() as u8
        };
        out.extend_from_slice(&[g, g, g]);
    }
    out
}

pub fn write_image(grid: &EscapeGrid, path: &Path) -> Result<()> {
    if grid.cells.len() != grid.width * grid.height {
        return Err(Error::InvariantViolation("grid size does not match its dimensions".into()));
    }
    std::fs::write(path, encode_ppm(grid))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn radius_examples() {
        assert_eq!(escape_radius(&Polynomial::from_real(&[0.0, 0.0, 1.0])), 2.0);
        let p = Polynomial::new(vec![c(0.6, 0.8), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!((escape_radius(&p) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn escape_examples() {
        let sq = Polynomial::from_real(&[0.0, 0.0, 1.0]);
        let cfg = RenderConfig::new(c(0.0, 0.0), 2.0, 16, 16, 50).unwrap();
        assert_eq!(escape_time(&sq, c(0.0, 0.0), &cfg), 50);
        assert_eq!(escape_time(&sq, c(3.0, 0.0), &cfg), 1);
        assert_eq!(escape_time(&sq, c(1.5, 0.0), &cfg), 1);
        assert_eq!(escape_time(&sq, c(1.2, 0.0), &cfg), 2);
    }

    #[test]
    fn config_rejects_small_grids() {
        assert!(RenderConfig::new(c(0.0, 0.0), 1.0, 0, 0, 10).is_err());
        assert!(RenderConfig::new(c(0.0, 0.0), 1.0, 15, 16, 10).is_err());
        assert!(RenderConfig::new(c(0.0, 0.0), 1.0, 16, 16, 0).is_err());
        assert!(RenderConfig::new(c(0.0, 0.0), 1.0, 16, 16, 1).is_ok());
    }

    #[test]
    fn pixel_centers() {
        let cfg = RenderConfig::new(c(0.0, 0.0), 2.0, 16, 16, 10).unwrap();
        assert_eq!(cfg.pixel_center(0, 0), c(-2.0 + 0.125, 2.0 - 0.125));
        assert_eq!(cfg.pixel_center(15, 15), c(2.0 - 0.125, -2.0 + 0.125));
    }

    #[test]
    fn ppm_header_and_payload() {
        let grid = EscapeGrid { width: 16, height: 16, max_iter: 7, cells: vec![7; 256] };
        let bytes = encode_ppm(&grid);
        assert_eq!(&bytes[..13], b"P6\n16 16\n255\n");
        assert_eq!(bytes.len(), 13 + 16 * 16 * 3);
        assert!(bytes[13..].iter().all(|&b| b == 0));

        let grid = EscapeGrid { width: 16, height: 16, max_iter: 4, cells: vec![1; 256] };
        let bytes = encode_ppm(&grid);
        assert_eq!(bytes[13], 191);
    }
}
