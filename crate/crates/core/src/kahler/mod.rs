//! Finite-difference verification of Kähler potentials on ℂ²: the metric
//! `g_{ij̄} = ∂_i∂_{j̄}Φ`, its scalar curvature, the linearization of the
//! scalar curvature in the potential, ALE decay rates and discrete weighted
//! sup norms.
//!
//! Scalar curvature uses the convention `S = -2 g^{j̄i} ∂_i∂_{j̄} log det g`,
//! the Riemannian scalar curvature of `g_{ij̄} dz^i dz̄^j + c.c.`. With that
//! convention the linearized operator on the flat background is
//! `-2 (Σ ∂_i∂_{ī})² f = -Δ²f / 8` for the Euclidean Laplacian `Δ` of ℝ⁴.

mod curvature;
mod potential;
mod report;
mod stencil;

use thiserror::Error;

pub use curvature::{
    hermitian_hessian, linearized_l, linearized_l_two_scale, scalar_curvature, LinearizedEstimate,
    Metric,
};
pub use potential::{
    norm, norm_sq, point_from_complex, point_to_complex, GeneralFn, Perturbed, Point, Potential,
    PotentialSpec, RadialFn,
};
pub use report::{
    decay_order, deviation_samples, geometric_radii, round_sig, shell_directions, verify_metric,
    weighted_sup_norm, CurvatureReport, CurvatureSample, DecayEstimate, SamplePlan, WeightedNorm,
    DEFAULT_H0, NO_SIGNAL_FLOOR, SCALAR_FLAT_TOLERANCE,
};
pub use stencil::{complex_hessian, real_hessian, StencilOrder};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KahlerError {
    #[error("metric degenerates at {point:?}: {detail}")]
    DegenerateMetric { point: Point, detail: String },
    #[error("sample point {point:?} is within 10 h = {limit} of the origin")]
    TooCloseToOrigin { point: Point, limit: f64 },
    #[error("radii span a factor {span:.3}, need at least 10")]
    InsufficientDecade { span: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
