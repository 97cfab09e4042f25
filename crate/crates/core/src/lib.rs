//! Fixed-point analysis for complex polynomials and rational maps.
//!
//! The crate locates every fixed point of a rational map on the Riemann
//! sphere, measures multipliers, multiplicities and residue fixed-point
//! indices, classifies each point, and checks the global index identities
//! that tie them together. It also builds a few polynomial families with
//! prescribed fixed-point geometry and renders escape-time pictures of
//! filled Julia sets.
//!
//! ```
//! use fixdyn::{analyze, ContourConfig, Polynomial, RationalMap, Tolerances};
//! use num_complex::Complex64;
//!
//! let tol = Tolerances::default();
//! let square = RationalMap::polynomial(Polynomial::from_real(&[0.0, 0.0, 1.0]));
//! let report = analyze(&square, &tol, &ContourConfig::default()).unwrap();
//! assert!((report.rfpt_sum - Complex64::new(1.0, 0.0)).norm() < 1e-12);
//! ```

pub mod analysis;
pub mod config;
pub mod error;
pub mod geometry;
pub mod julia;
pub mod mobius;
pub mod poly;
pub mod rational;
pub mod roots;

pub use analysis::{
    analyze, classify, multiplier, periodic_points, rnfp_witness, residue_index_closed,
    residue_index_contour, secondary_witnesses, weakly_repelling_witness, AnalysisReport,
    ContourConfig, FixedPointClass, FixedPointRecord, PeriodicCycle, PeriodicReport,
};
pub use config::Tolerances;
pub use error::{Error, Result};
pub use geometry::{
    construct_from_fixed_points, construct_ngon, construct_real_part_one_family,
    construct_remark5, equidistance_check, multipliers_via_products, normalize_quadratic,
    real_part_one_check, shape_detect, GeometryVerdict, NGonSpec, Shape,
};
pub use julia::{escape_radius, escape_time, render, write_image, EscapeGrid, RenderConfig};
pub use mobius::{conjugate_map, ExtendedComplex, MobiusMap};
pub use poly::Polynomial;
pub use rational::RationalMap;
pub use roots::{
    find_roots, fixed_points, multiplicity_of_fixed_point, FixedPointLocation, RootCluster,
};

pub use num_complex::Complex64;
