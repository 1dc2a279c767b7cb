use num_complex::Complex64;

use super::potential::{Perturbed, Point, Potential};
use super::stencil::{complex_hessian, StencilOrder};
use super::KahlerError;

/// `g_{ij̄}` as a 2×2 complex matrix, row `i`, column `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric(pub [[Complex64; 2]; 2]);

impl Metric {
    pub fn identity() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Metric([[one, zero], [zero, one]])
    }

    pub fn det(&self) -> Complex64 {
        let g = &self.0;
        g[0][0] * g[1][1] - g[0][1] * g[1][0]
    }

    pub fn inverse(&self) -> [[Complex64; 2]; 2] {
        let g = &self.0;
        let det = self.det();
        [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]]
    }

    /// `max |g_{ij̄} - conj(g_{jī})|`.
    pub fn hermitian_defect(&self) -> f64 {
        let g = &self.0;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((g[i][j] - g[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let g = &self.0;
        let a = g[0][0].re;
        let d = g[1][1].re;
        let b = (g[0][1] + g[1][0].conj()) * 0.5;
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean - radius, mean + radius]
    }

    /// `max |g_{ij̄} - δ_ij|`.
    pub fn deviation_from_identity(&self) -> f64 {
        let id = Metric::identity();
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - id.0[i][j]).norm());
            }
        }
        worst
    }
}

fn degenerate(x: &Point, detail: String) -> KahlerError {
    KahlerError::DegenerateMetric { point: *x, detail }
}

fn unchecked_metric<P: Potential + ?Sized>(
    phi: &P,
    x: &Point,
    h: f64,
    order: StencilOrder,
) -> Metric {
    let mut f = |y: &Point| Ok::<_, std::convert::Infallible>(phi.value(y));
    match complex_hessian(&mut f, x, h, order) {
        Ok(g) => Metric(g),
        Err(never) => match never {},
    }
}

fn check_positive(g: &Metric, x: &Point) -> Result<(), KahlerError> {
    let det = g.det().re;
    let [low, _] = g.eigenvalues();
    if !(det > 0.0) || !(low > 0.0) {
        return Err(degenerate(
            x,
            format!("det = {det:e}, smallest eigenvalue = {low:e}"),
        ));
    }
    Ok(())
}

/// `g_{ij̄} = ∂_i ∂_{j̄} Φ` by central differences in the four real
/// coordinates; rejects a metric that is not positive definite.
pub fn hermitian_hessian<P: Potential + ?Sized>(
    phi: &P,
    x: &Point,
    h: f64,
    order: StencilOrder,
) -> Result<Metric, KahlerError> {
    let g = unchecked_metric(phi, x, h, order);
    check_positive(&g, x)?;
    Ok(g)
}

/// `S = -2 g^{j̄i} ∂_i ∂_{j̄} log det g`, with the outer derivatives taken by
/// the same stencil applied to `log det g` on the inner stencil.
pub fn scalar_curvature<P: Potential + ?Sized>(
    phi: &P,
    x: &Point,
    h: f64,
    order: StencilOrder,
) -> Result<f64, KahlerError> {
    let g = hermitian_hessian(phi, x, h, order)?;
    let mut log_det = |y: &Point| -> Result<f64, KahlerError> {
        let det = unchecked_metric(phi, y, h, order).det().re;
        if det > 0.0 {
            Ok(det.ln())
        } else {
            Err(degenerate(y, format!("det = {det:e} on the stencil")))
        }
    };
    let ricci_form = complex_hessian(&mut log_det, x, h, order)?;
    let inv = g.inverse();
    let mut trace = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            trace += inv[j][i] * ricci_form[i][j];
        }
    }
    Ok(-2.0 * trace.re)
}

/// Symmetric difference quotient `[S(Φ + t f) - S(Φ - t f)] / 2t`, which
/// tends to the linearized scalar-curvature operator applied to `f`.
pub fn linearized_l<P, F>(
    phi: &P,
    f: &F,
    x: &Point,
    h: f64,
    order: StencilOrder,
    t: f64,
) -> Result<f64, KahlerError>
where
    P: Potential + ?Sized,
    F: Potential + ?Sized,
{
    if !(t > 0.0) {
        return Err(KahlerError::InvalidParameter(format!(
            "perturbation scale must be positive, got {t}"
        )));
    }
    let plus = Perturbed { base: phi, direction: f, scale: t };
    let minus = Perturbed { base: phi, direction: f, scale: -t };
    let s_plus = scalar_curvature(&plus, x, h, order)?;
    let s_minus = scalar_curvature(&minus, x, h, order)?;
    Ok((s_plus - s_minus) / (2.0 * t))
}

/// Two-scale estimate: the quotient at `t` and `t/2`, and their Richardson
/// combination `(4 q(t/2) - q(t)) / 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearizedEstimate {
    pub coarse: f64,
    pub fine: f64,
    pub extrapolated: f64,
}

pub fn linearized_l_two_scale<P, F>(
    phi: &P,
    f: &F,
    x: &Point,
    h: f64,
    order: StencilOrder,
    t: f64,
) -> Result<LinearizedEstimate, KahlerError>
where
    P: Potential + ?Sized,
    F: Potential + ?Sized,
{
    let coarse = linearized_l(phi, f, x, h, order, t)?;
    let fine = linearized_l(phi, f, x, h, order, 0.5 * t)?;
    Ok(LinearizedEstimate {
        coarse,
        fine,
        extrapolated: (4.0 * fine - coarse) / 3.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kahler::potential::{point_from_complex, PotentialSpec};

    const H: f64 = 0.02;

    #[test]
    fn flat_metric_is_identity_and_flat() {
        let x = [0.6, -0.2, 0.9, 0.4];
        let g = hermitian_hessian(&PotentialSpec::Flat, &x, H, StencilOrder::Fourth).unwrap();
        assert!(g.deviation_from_identity() < 1e-9);
        let s = scalar_curvature(&PotentialSpec::Flat, &x, H, StencilOrder::Fourth).unwrap();
        assert!(s.abs() < 1e-8, "{s}");
    }

    #[test]
    fn burns_metric_is_positive() {
        let x = point_from_complex(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        let g = hermitian_hessian(&PotentialSpec::Burns { m: 1.0 }, &x, H, StencilOrder::Fourth).unwrap();
        let [low, high] = g.eigenvalues();
        assert!(low > 0.0 && high > 0.0);
        // radial direction is Euclidean, the sphere directions are scaled by 1 + m/u
        assert!((low - 1.0).abs() < 1e-6 && (high - 2.0).abs() < 1e-6);
    }

    #[test]
    fn eguchi_hanson_hessian_is_hermitian() {
        let x = [0.5, 0.5, 0.5, 0.5];
        let g = hermitian_hessian(&PotentialSpec::EguchiHanson { a: 1.0 }, &x, H, StencilOrder::Fourth)
            .unwrap();
        assert!(g.hermitian_defect() < 1e-10);
    }

    #[test]
    fn negative_potential_is_degenerate() {
        let neg = PotentialSpec::radial(|u| -u);
        let err = hermitian_hessian(&neg, &[1.0, 0.0, 0.0, 0.0], H, StencilOrder::Second).unwrap_err();
        assert!(matches!(err, KahlerError::DegenerateMetric { .. }));
    }

    #[test]
    fn constant_perturbation_is_in_kernel() {
        let one = |_: &Point| 1.0;
        let x = [1.0, 0.5, -0.3, 0.8];
        let l = linearized_l(&PotentialSpec::Flat, &one, &x, 0.05, StencilOrder::Fourth, 1e-3).unwrap();
        assert!(l.abs() < 1e-6, "{l}");
        assert!(linearized_l(&PotentialSpec::Flat, &one, &x, 0.05, StencilOrder::Fourth, 0.0).is_err());
    }

    #[test]
    fn fubini_study_like_curvature_sign() {
        // log(1 + u) has positive constant scalar curvature.
        let fs = PotentialSpec::radial(|u| (1.0 + u).ln());
        let s = scalar_curvature(&fs, &[0.3, 0.1, -0.2, 0.4], 0.01, StencilOrder::Fourth).unwrap();
        // g = FS metric with holomorphic sectional curvature 2; Riemannian scalar curvature 12.
        assert!((s - 12.0).abs() < 1e-4, "{s}");
    }
}
