use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::potential::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum StencilOrder {
    Second,
    Fourth,
}

impl StencilOrder {
    /// Offsets and weights (times `h`) of the central first derivative.
    fn first(self) -> &'static [(f64, f64)] {
        match self {
            StencilOrder::Second => &[(-1.0, -0.5), (1.0, 0.5)],
            StencilOrder::Fourth => &[
                (-2.0, 1.0 / 12.0),
                (-1.0, -8.0 / 12.0),
                (1.0, 8.0 / 12.0),
                (2.0, -1.0 / 12.0),
            ],
        }
    }

    /// Offsets and weights (times `h²`) of the central second derivative.
    fn second(self) -> &'static [(f64, f64)] {
        match self {
            StencilOrder::Second => &[(-1.0, 1.0), (0.0, -2.0), (1.0, 1.0)],
            StencilOrder::Fourth => &[
                (-2.0, -1.0 / 12.0),
                (-1.0, 16.0 / 12.0),
                (0.0, -30.0 / 12.0),
                (1.0, 16.0 / 12.0),
                (2.0, -1.0 / 12.0),
            ],
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            StencilOrder::Second => 2,
            StencilOrder::Fourth => 4,
        }
    }
}

impl TryFrom<u8> for StencilOrder {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            2 => Ok(StencilOrder::Second),
            4 => Ok(StencilOrder::Fourth),
            _ => Err(format!("stencil order must be 2 or 4, got {v}")),
        }
    }
}

impl From<StencilOrder> for u8 {
    fn from(o: StencilOrder) -> Self {
        o.as_u8()
    }
}

fn shifted(x: &Point, axis: usize, by: f64) -> Point {
    let mut y = *x;
    y[axis] += by;
    y
}

/// Real Hessian `∂²f/∂x_a∂x_b` in the four real coordinates. Mixed entries
/// are evaluated separately for `(a, b)` and `(b, a)`.
pub fn real_hessian<E>(
    f: &mut impl FnMut(&Point) -> Result<f64, E>,
    x: &Point,
    h: f64,
    order: StencilOrder,
) -> Result<[[f64; 4]; 4], E> {
    let mut out = [[0.0; 4]; 4];
    let center = f(x)?;
    for (a, row) in out.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            if a == b {
                for &(off, w) in order.second() {
                    let v = if off == 0.0 { center } else { f(&shifted(x, a, off * h))? };
                    acc += w * v;
                }
            } else {
                for &(oa, wa) in order.first() {
                    let xa = shifted(x, a, oa * h);
                    for &(ob, wb) in order.first() {
                        acc += wa * wb * f(&shifted(&xa, b, ob * h))?;
                    }
                }
            }
            *cell = acc / (h * h);
        }
    }
    Ok(out)
}

/// `∂_i ∂_{j̄} f = ¼ (∂_{x_i} - i∂_{y_i})(∂_{x_j} + i∂_{y_j}) f`.
pub fn complex_hessian_from_real(r: &[[f64; 4]; 4]) -> [[Complex64; 2]; 2] {
    let mut g = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
            let re = r[xi][xj] + r[yi][yj];
            let im = r[xi][yj] - r[yi][xj];
            *cell = Complex64::new(re, im) * 0.25;
        }
    }
    g
}

pub fn complex_hessian<E>(
    f: &mut impl FnMut(&Point) -> Result<f64, E>,
    x: &Point,
    h: f64,
    order: StencilOrder,
) -> Result<[[Complex64; 2]; 2], E> {
    Ok(complex_hessian_from_real(&real_hessian(f, x, h, order)?))
}
