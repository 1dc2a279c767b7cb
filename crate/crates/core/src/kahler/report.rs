use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curvature::{hermitian_hessian, scalar_curvature};
use super::potential::{norm, Point, Potential, PotentialSpec};
use super::stencil::StencilOrder;
use super::KahlerError;

pub const DEFAULT_H0: f64 = 1e-2;
/// Absolute bound on `|S|` for a scalar-flat verdict at `h0 = 1e-2`, order 4.
pub const SCALAR_FLAT_TOLERANCE: f64 = 1e-4;
/// Metric deviations below this are rounding, not decay.
pub const NO_SIGNAL_FLOOR: f64 = 1e-12;
/// Multiple of `ε |Φ| / h²` treated as stencil rounding noise.
const ROUNDING_FACTOR: f64 = 16.0;

/// Sample points with the relative step rule `h(z) = h0 (1 + |z|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    pub points: Vec<Point>,
    pub h0: f64,
    pub order: StencilOrder,
}

impl SamplePlan {
    pub fn new(points: Vec<Point>, h0: f64, order: StencilOrder) -> Result<Self, KahlerError> {
        let plan = Self { points, h0, order };
        plan.validate()?;
        Ok(plan)
    }

    /// `samples` points with geometrically spaced radii in `[rmin, rmax]`
    /// and directions from [`shell_directions`].
    pub fn shells(
        rmin: f64,
        rmax: f64,
        samples: usize,
        h0: f64,
        order: StencilOrder,
    ) -> Result<Self, KahlerError> {
        if samples == 0 {
            return Err(KahlerError::InvalidParameter("need at least one sample".into()));
        }
        if !(rmin > 0.0 && rmax >= rmin) {
            return Err(KahlerError::InvalidParameter(format!(
                "need 0 < rmin <= rmax, got [{rmin}, {rmax}]"
            )));
        }
        let radii = if samples == 1 {
            vec![rmin]
        } else {
            geometric_radii(rmin, rmax, samples)
        };
        let points = radii
            .iter()
            .zip(shell_directions(samples))
            .map(|(&r, d)| d.map(|c| c * r))
            .collect();
        Self::new(points, h0, order)
    }

    pub fn step(&self, x: &Point) -> f64 {
        self.h0 * (1.0 + norm(x))
    }

    pub fn validate(&self) -> Result<(), KahlerError> {
        if !(self.h0 > 0.0 && self.h0 <= 0.1) {
            return Err(KahlerError::InvalidParameter(format!(
                "h0 must lie in (0, 0.1], got {}",
                self.h0
            )));
        }
        for x in &self.points {
            let limit = 10.0 * self.step(x);
            if norm(x) < limit {
                return Err(KahlerError::TooCloseToOrigin { point: *x, limit });
            }
        }
        Ok(())
    }
}

/// `n` geometrically spaced values from `r0` to `r1` inclusive.
pub fn geometric_radii(r0: f64, r1: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![r0; n];
    }
    let ratio = (r1 / r0).ln() / (n - 1) as f64;
    (0..n).map(|i| r0 * (ratio * i as f64).exp()).collect()
}

/// Deterministic, well-spread unit vectors on S³ ⊂ ℂ² in Hopf coordinates
/// `(cos θ e^{iφ₁}, sin θ e^{iφ₂})`, driven by irrational rotations.
pub fn shell_directions(n: usize) -> Vec<Point> {
    let frac = |v: f64| v - v.floor();
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let tau = std::f64::consts::TAU;
    (0..n)
        .map(|i| {
            let i = i as f64 + 0.5;
            let c = frac(i * golden).sqrt();
            let s = (1.0 - c * c).sqrt();
            let p1 = tau * frac(i * 2f64.sqrt());
            let p2 = tau * frac(i * 3f64.sqrt());
            [c * p1.cos(), c * p1.sin(), s * p2.cos(), s * p2.sin()]
        })
        .collect()
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureSample {
    pub index: usize,
    pub point: Point,
    pub radius: f64,
    pub scalar_curvature: f64,
    pub min_eigenvalue: f64,
    pub hermitian_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedNorm {
    pub delta: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayEstimate {
    /// Estimated order `μ`; `None` when the deviation never leaves rounding.
    pub order: Option<f64>,
    /// RMS residual of the log-log fit.
    pub residual: Option<f64>,
    pub radii: Vec<f64>,
    pub deviations: Vec<f64>,
}

impl DecayEstimate {
    pub fn has_signal(&self) -> bool {
        self.order.is_some()
    }

    pub fn rounded(&self, digits: usize) -> Self {
        let r = |v: f64| round_sig(v, digits);
        Self {
            order: self.order.map(r),
            residual: self.residual.map(r),
            radii: self.radii.iter().copied().map(r).collect(),
            deviations: self.deviations.iter().copied().map(r).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub potential: String,
    pub order: StencilOrder,
    pub h0: f64,
    pub tolerance: f64,
    pub samples: Vec<CurvatureSample>,
    pub max_abs_s: f64,
    pub metric_positive: bool,
    pub passed: bool,
    pub decay: Option<DecayEstimate>,
    pub weighted_norms: Vec<WeightedNorm>,
}

impl CurvatureReport {
    /// Copy with every float rounded to `digits` significant digits.
    pub fn rounded(&self, digits: usize) -> Self {
        let r = |v: f64| round_sig(v, digits);
        Self {
            potential: self.potential.clone(),
            order: self.order,
            h0: r(self.h0),
            tolerance: r(self.tolerance),
            samples: self
                .samples
                .iter()
                .map(|s| CurvatureSample {
                    index: s.index,
                    point: s.point.map(r),
                    radius: r(s.radius),
                    scalar_curvature: r(s.scalar_curvature),
                    min_eigenvalue: r(s.min_eigenvalue),
                    hermitian_defect: r(s.hermitian_defect),
                })
                .collect(),
            max_abs_s: r(self.max_abs_s),
            metric_positive: self.metric_positive,
            passed: self.passed,
            decay: self.decay.as_ref().map(|d| d.rounded(digits)),
            weighted_norms: self
                .weighted_norms
                .iter()
                .map(|w| WeightedNorm {
                    delta: r(w.delta),
                    value: r(w.value),
                })
                .collect(),
        }
    }

    /// Weighted sup norms of the metric deviation `|g - I|` over the report's
    /// own sample points.
    pub fn attach_weighted_norms(
        &mut self,
        spec: &PotentialSpec,
        plan: &SamplePlan,
        deltas: &[f64],
    ) -> Result<(), KahlerError> {
        let field = deviation_samples(spec, plan)?;
        self.weighted_norms = deltas
            .iter()
            .map(|&delta| WeightedNorm {
                delta,
                value: weighted_sup_norm(&field, delta),
            })
            .collect();
        Ok(())
    }
}

/// Evaluates the metric and scalar curvature at every planned point.
/// Points are processed in parallel; results keep the plan's order.
pub fn verify_metric(
    spec: &PotentialSpec,
    plan: &SamplePlan,
    tolerance: f64,
) -> Result<CurvatureReport, KahlerError> {
    plan.validate()?;
    let samples = plan
        .points
        .par_iter()
        .enumerate()
        .map(|(index, x)| {
            let h = plan.step(x);
            let g = hermitian_hessian(spec as &dyn Potential, x, h, plan.order)?;
            let s = scalar_curvature(spec as &dyn Potential, x, h, plan.order)?;
            Ok(CurvatureSample {
                index,
                point: *x,
                radius: norm(x),
                scalar_curvature: s,
                min_eigenvalue: g.eigenvalues()[0],
                hermitian_defect: g.hermitian_defect(),
            })
        })
        .collect::<Result<Vec<_>, KahlerError>>()?;
    let max_abs_s = samples
        .iter()
        .map(|s| s.scalar_curvature.abs())
        .fold(0.0, f64::max);
    let metric_positive = samples.iter().all(|s| s.min_eigenvalue > 0.0);
    Ok(CurvatureReport {
        potential: spec.name(),
        order: plan.order,
        h0: plan.h0,
        tolerance,
        samples,
        max_abs_s,
        metric_positive,
        passed: metric_positive && max_abs_s <= tolerance,
        decay: None,
        weighted_norms: Vec::new(),
    })
}

/// `(point, max |g_{ij̄}(z) - δ_ij|)` at every planned point.
pub fn deviation_samples(
    spec: &PotentialSpec,
    plan: &SamplePlan,
) -> Result<Vec<(Point, f64)>, KahlerError> {
    plan.points
        .par_iter()
        .map(|x| {
            let g = hermitian_hessian(spec as &dyn Potential, x, plan.step(x), plan.order)?;
            Ok((*x, g.deviation_from_identity()))
        })
        .collect()
}

/// `sup |φ| (1 + r)^{-δ}` over the samples, `r` the distance to the origin.
pub fn weighted_sup_norm(samples: &[(Point, f64)], delta: f64) -> f64 {
    samples
        .iter()
        .map(|(x, v)| v.abs() * (1.0 + norm(x)).powf(-delta))
        .fold(0.0, f64::max)
}

const DECAY_DIRECTIONS: usize = 4;

/// Least-squares slope of `log max|g - I|` against `log r`, negated.
///
/// At each radius the deviation is the maximum over a fixed set of
/// directions. Needs at least six increasing radii spanning a decade.
pub fn decay_order(
    spec: &PotentialSpec,
    radii: &[f64],
    h0: f64,
    order: StencilOrder,
) -> Result<DecayEstimate, KahlerError> {
    if radii.len() < 6 {
        return Err(KahlerError::InvalidParameter(format!(
            "need at least 6 radii, got {}",
            radii.len()
        )));
    }
    if radii.windows(2).any(|w| !(w[1] > w[0])) || !(radii[0] > 0.0) {
        return Err(KahlerError::InvalidParameter("radii must be positive and increasing".into()));
    }
    let span = radii[radii.len() - 1] / radii[0];
    if span < 10.0 {
        return Err(KahlerError::InsufficientDecade { span });
    }
    let dirs = shell_directions(DECAY_DIRECTIONS);
    let points: Vec<Point> = radii
        .iter()
        .flat_map(|&r| dirs.iter().map(move |d| d.map(|c| c * r)))
        .collect();
    let plan = SamplePlan::new(points, h0, order)?;
    let field = deviation_samples(spec, &plan)?;
    let deviations: Vec<f64> = field
        .chunks(DECAY_DIRECTIONS)
        .map(|chunk| chunk.iter().map(|(_, v)| *v).fold(0.0, f64::max))
        .collect();

    // Stencil rounding grows like ε |Φ| / h², which exceeds the absolute floor
    // for large |Φ| at small h0.
    let noise: Vec<f64> = plan
        .points
        .chunks(DECAY_DIRECTIONS)
        .map(|chunk| {
            chunk
                .iter()
                .map(|x| {
                    let h = plan.step(x);
                    ROUNDING_FACTOR * f64::EPSILON * spec.value(x).abs() / (h * h)
                })
                .fold(NO_SIGNAL_FLOOR, f64::max)
        })
        .collect();
    if deviations.iter().zip(&noise).all(|(d, n)| d < n) {
        return Ok(DecayEstimate {
            order: None,
            residual: None,
            radii: radii.to_vec(),
            deviations,
        });
    }
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = deviations.iter().map(|d| d.max(f64::MIN_POSITIVE).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(DecayEstimate {
        order: Some(-slope),
        residual: Some((rss / n).sqrt()),
        radii: radii.to_vec(),
        deviations,
    })
}
