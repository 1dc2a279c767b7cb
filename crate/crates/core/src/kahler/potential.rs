use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

/// A point of ℂ² in real coordinates `(x1, y1, x2, y2)`, `z_j = x_j + i y_j`.
pub type Point = [f64; 4];

pub fn point_from_complex(z1: Complex64, z2: Complex64) -> Point {
    [z1.re, z1.im, z2.re, z2.im]
}

pub fn point_to_complex(x: &Point) -> [Complex64; 2] {
    [Complex64::new(x[0], x[1]), Complex64::new(x[2], x[3])]
}

/// `|z|²`.
pub fn norm_sq(x: &Point) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn norm(x: &Point) -> f64 {
    norm_sq(x).sqrt()
}

/// A real-valued Kähler potential on (a chart of) ℂ².
pub trait Potential: Sync {
    fn value(&self, x: &Point) -> f64;
}

impl<F> Potential for F
where
    F: Fn(&Point) -> f64 + Sync,
{
    fn value(&self, x: &Point) -> f64 {
        self(x)
    }
}

pub type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type GeneralFn = Arc<dyn Fn(&Point) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum PotentialSpec {
    /// `|z|²`.
    Flat,
    /// `√(a⁴+u²) + a² log u - a² log(a² + √(a⁴+u²))`, `u = |z|²`.
    EguchiHanson { a: f64 },
    /// `u + m log u`.
    Burns { m: f64 },
    /// `Φ(u)` with `u = |z|²`.
    CustomRadial(RadialFn),
    CustomGeneral(GeneralFn),
}

impl PotentialSpec {
    pub fn radial(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        PotentialSpec::CustomRadial(Arc::new(f))
    }

    pub fn general(f: impl Fn(&Point) -> f64 + Send + Sync + 'static) -> Self {
        PotentialSpec::CustomGeneral(Arc::new(f))
    }

    pub fn is_radial(&self) -> bool {
        !matches!(self, PotentialSpec::CustomGeneral(_))
    }

    pub fn name(&self) -> String {
        match self {
            PotentialSpec::Flat => "flat".to_string(),
            PotentialSpec::EguchiHanson { a } => format!("eguchi-hanson(a={a})"),
            PotentialSpec::Burns { m } => format!("burns(m={m})"),
            PotentialSpec::CustomRadial(_) => "custom-radial".to_string(),
            PotentialSpec::CustomGeneral(_) => "custom-general".to_string(),
        }
    }
}

impl fmt::Debug for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Potential for PotentialSpec {
    fn value(&self, x: &Point) -> f64 {
        let u = norm_sq(x);
        match self {
            PotentialSpec::Flat => u,
            PotentialSpec::EguchiHanson { a } => {
                let a2 = a * a;
                let w = (a2 * a2 + u * u).sqrt();
                w + a2 * u.ln() - a2 * (a2 + w).ln()
            }
            PotentialSpec::Burns { m } => u + m * u.ln(),
            PotentialSpec::CustomRadial(f) => f(u),
            PotentialSpec::CustomGeneral(f) => f(x),
        }
    }
}

/// `Φ + t f`.
pub struct Perturbed<'a, P: ?Sized, F: ?Sized> {
    pub base: &'a P,
    pub direction: &'a F,
    pub scale: f64,
}

impl<P: Potential + ?Sized, F: Potential + ?Sized> Potential for Perturbed<'_, P, F> {
    fn value(&self, x: &Point) -> f64 {
        self.base.value(x) + self.scale * self.direction.value(x)
    }
}
