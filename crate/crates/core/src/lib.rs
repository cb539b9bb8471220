//! Distance-based depth functions for directional data.
//!
//! The crate computes global and local (spherical-cap conditioned) depths of
//! points on the unit hypersphere under the arc, cosine and chord distances,
//! assembles them into GLD-plots for eyeballing unimodality, and ships a
//! von Mises-Fisher simulator for generating test data.
//!
//! ```
//! use gldepth::{build_gld, sample_vmf, DepthConfig, DistanceKind, UnitVector, VmfParams};
//!
//! let mu = UnitVector::basis(5, 0).unwrap();
//! let sample = sample_vmf(&VmfParams::new(mu, 20.0).unwrap(), 250, 42).unwrap();
//! let config = DepthConfig::local(DistanceKind::Cosine, 1.0).unwrap();
//! let gld = build_gld(&sample, &config).unwrap();
//! assert!(gld.spearman_rho > 0.9);
//! ```

pub mod bessel;
pub mod depth;
pub mod error;
pub mod geometry;
pub mod gld;
pub mod io;
pub mod rng;
pub mod scenarios;
pub mod vmf;

pub use depth::{
    circle_grid, depth_curve, depth_profile, depths_at, expectation_gap, global_depth, local_depth, DepthConfig,
    DepthProfile, DirectionalSample,
};
pub use error::{Error, Result};
pub use geometry::{
    apply_rotation, cap_angle_from_radius, cap_radius_from_angle, distance, from_angle, from_latlon, normalize,
    random_rotation, sup_distance, DistanceKind, RotationMatrix, UnitVector,
};
pub use gld::{
    build_gld, normalize_depths, quadrant_summary, render_svg, GldData, Normalized, Quadrants, RenderOptions,
};
pub use vmf::{
    bessel_ratio, mean_resultant_length, mixture_density, sample_mixture, sample_uniform, sample_vmf, uniform_density,
    vmf_density, MixtureParams, VmfParams,
};
