//! Exact arithmetic for cyclic quotient singularities `1/p(1,q)`.
//!
//! Everything here is integer or rational arithmetic: Hirzebruch–Jung
//! continued fractions and their duals, the chain of lattice points
//! `c_0 = (0,1), c_1 = (1,q)/p, …, c_{m+1} = (1,0)` whose convex hull
//! gives the minimal resolution, the Hilbert basis of invariant monomials,
//! and the toric chart atlas `(ξ_i, η_i)` with its transition matrices.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HjError {
    #[error("invalid pair (p, q) = ({p}, {q}): need 1 <= q < p and gcd(p, q) = 1")]
    InvalidPair { p: u64, q: u64 },
    #[error("continued fraction is empty")]
    EmptyFraction,
    #[error("coefficient {value} at position {index} is below 2")]
    CoefficientBelowTwo { index: usize, value: u64 },
    #[error("integer overflow while evaluating a continued fraction")]
    Overflow,
}

/// A failed exact identity, carrying a human-readable description of the
/// first link at which it broke.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{identity} violated: {detail}")]
pub struct IdentityViolation {
    pub identity: &'static str,
    pub detail: String,
}

impl IdentityViolation {
    fn new(identity: &'static str, detail: impl Into<String>) -> Self {
        Self {
            identity,
            detail: detail.into(),
        }
    }
}

/// Checks `1 <= q < p` and `gcd(p, q) = 1`.
pub fn check_pair(p: u64, q: u64) -> Result<(), HjError> {
    if q >= 1 && q < p && p.gcd(&q) == 1 {
        Ok(())
    } else {
        Err(HjError::InvalidPair { p, q })
    }
}

/// Hirzebruch–Jung data of `p/q` together with the dual expansion of `p/(p-q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HjExpansion {
    pub p: u64,
    pub q: u64,
    pub coeffs: Vec<u64>,
    pub dual_coeffs: Vec<u64>,
}

impl HjExpansion {
    /// Number of exceptional curves.
    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn dual_len(&self) -> usize {
        self.dual_coeffs.len()
    }

    /// `e = 3 + Σ (e_i - 2)`, the minimal number of generators of the
    /// invariant ring.
    pub fn embedding_dimension(&self) -> i64 {
        3 + self.coeffs.iter().map(|&e| e as i64 - 2).sum::<i64>()
    }

    /// `Σ (e_i - 1)`.
    pub fn excess(&self) -> u64 {
        self.coeffs.iter().map(|&e| e - 1).sum()
    }

    pub fn dual_excess(&self) -> u64 {
        self.dual_coeffs.iter().map(|&e| e - 1).sum()
    }
}

/// Expands `p/q` as `e_1 - 1/(e_2 - 1/(… - 1/e_k))` with every `e_i >= 2`.
///
/// Caller guarantees `p > q >= 1`, coprime.
fn minus_continued_fraction(mut p: u64, mut q: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while q != 0 {
        let e = p.div_ceil(q);
        out.push(e);
        let r = e * q - p;
        p = q;
        q = r;
    }
    out
}

pub fn hj_expand(p: u64, q: u64) -> Result<HjExpansion, HjError> {
    check_pair(p, q)?;
    Ok(HjExpansion {
        p,
        q,
        coeffs: minus_continued_fraction(p, q),
        dual_coeffs: minus_continued_fraction(p, p - q),
    })
}

/// Folds `[e_1, …, e_k]` from the right into the exact rational
/// `e_1 - 1/(e_2 - …)`.
///
/// Every suffix of an all-`>= 2` list evaluates to a rational `> 1`, so the
/// fold never divides by zero. The result is already in lowest terms: each
/// step maps `n/d` to `(e·n - d)/n` and `gcd(e·n - d, n) = gcd(d, n) = 1`.
pub fn evaluate_fraction(coeffs: &[u64]) -> Result<Rational64, HjError> {
    if coeffs.is_empty() {
        return Err(HjError::EmptyFraction);
    }
    if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, &e)| e < 2) {
        return Err(HjError::CoefficientBelowTwo { index, value });
    }
    let (mut num, mut den): (i64, i64) = (1, 0);
    for &e in coeffs.iter().rev() {
        let e = i64::try_from(e).map_err(|_| HjError::Overflow)?;
        let next = e
            .checked_mul(num)
            .and_then(|v| v.checked_sub(den))
            .ok_or(HjError::Overflow)?;
        den = num;
        num = next;
    }
    Ok(Rational64::new(num, den))
}

/// A rational lattice point `(s, t)` with denominator dividing `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticePoint {
    pub s: Rational64,
    pub t: Rational64,
}

impl LatticePoint {
    pub fn new(s: Rational64, t: Rational64) -> Self {
        Self { s, t }
    }

    /// `c(u) = s·α + t·β` for the monomial `x^α y^β`.
    pub fn pair(&self, m: Monomial) -> Rational64 {
        self.s * Rational64::from_integer(m.x) + self.t * Rational64::from_integer(m.y)
    }

    fn scaled_sub(&self, k: i64, prev: &Self) -> Self {
        let k = Rational64::from_integer(k);
        Self::new(k * self.s - prev.s, k * self.t - prev.t)
    }
}

/// Exact `"num/den"` rendering of a rational over a fixed denominator `p`.
pub fn fraction_over(value: Rational64, p: u64) -> String {
    let scaled = value * Rational64::from_integer(p as i64);
    if scaled.is_integer() {
        format!("{}/{}", scaled.to_integer(), p)
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `"a/b"` or a bare integer.
pub fn parse_fraction(text: &str) -> Option<Rational64> {
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational64::new(n, d))
        }
        None => text.trim().parse::<i64>().ok().map(Rational64::from_integer),
    }
}

/// The chain of lattice points `c_0, …, c_{m+1}` running from `(0,1)` to
/// `(1,0)` through `(1,q)/p`, with `c_{i+1} = κ_i c_i - c_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeChain {
    pub p: u64,
    pub q: u64,
    pub points: Vec<LatticePoint>,
    /// `κ_1, …, κ_m`; `chain_coeffs[i - 1]` drives the step out of `c_i`.
    pub chain_coeffs: Vec<i64>,
}

impl LatticeChain {
    /// Number of interior points, `m`.
    pub fn interior_len(&self) -> usize {
        self.chain_coeffs.len()
    }

    fn p_rational(&self) -> Rational64 {
        Rational64::new(1, self.p as i64)
    }

    /// `t_i s_{i+1} - t_{i+1} s_i` for every consecutive pair.
    pub fn determinants(&self) -> Vec<Rational64> {
        self.points
            .windows(2)
            .map(|w| w[0].t * w[1].s - w[1].t * w[0].s)
            .collect()
    }

    pub fn check_endpoints(&self) -> Result<(), IdentityViolation> {
        let p = self.p as i64;
        let expected_first = [
            LatticePoint::new(Rational64::zero(), Rational64::one()),
            LatticePoint::new(Rational64::new(1, p), Rational64::new(self.q as i64, p)),
        ];
        if self.points.len() < 3 || self.points[..2] != expected_first {
            return Err(IdentityViolation::new(
                "chain endpoints",
                "chain must start (0,1), (1,q)/p",
            ));
        }
        let last = self.points[self.points.len() - 1];
        if last != LatticePoint::new(Rational64::one(), Rational64::zero()) {
            return Err(IdentityViolation::new(
                "chain endpoints",
                format!("last point is ({}, {}), expected (1, 0)", last.s, last.t),
            ));
        }
        Ok(())
    }

    pub fn check_recursion(&self) -> Result<(), IdentityViolation> {
        if self.points.len() != self.chain_coeffs.len() + 2 {
            return Err(IdentityViolation::new(
                "chain recursion",
                "need exactly m + 2 points for m coefficients",
            ));
        }
        for (i, &kappa) in self.chain_coeffs.iter().enumerate() {
            let want = self.points[i + 1].scaled_sub(kappa, &self.points[i]);
            if self.points[i + 2] != want {
                return Err(IdentityViolation::new(
                    "chain recursion",
                    format!("c_{} != κ_{} c_{} - c_{}", i + 2, i + 1, i + 1, i),
                ));
            }
        }
        Ok(())
    }

    pub fn check_determinants(&self) -> Result<(), IdentityViolation> {
        let want = self.p_rational();
        for (i, d) in self.determinants().into_iter().enumerate() {
            if d != want {
                return Err(IdentityViolation::new(
                    "determinant identity",
                    format!("t_{i} s_{} - t_{} s_{i} = {d}, expected {want}", i + 1, i + 1),
                ));
            }
        }
        Ok(())
    }

    pub fn verify(&self) -> Result<(), IdentityViolation> {
        self.check_endpoints()?;
        self.check_recursion()?;
        self.check_determinants()
    }
}

/// Builds the lattice chain of `1/p(1,q)`.
///
/// The recursion coefficients are the Hirzebruch–Jung coefficients of `p/q`
/// (so `m = k`, one interior point per exceptional curve).
pub fn lattice_chain(p: u64, q: u64) -> Result<LatticeChain, HjError> {
    check_pair(p, q)?;
    let coeffs: Vec<i64> = minus_continued_fraction(p, q)
        .into_iter()
        .map(|e| e as i64)
        .collect();
    let pi = p as i64;
    let mut points = vec![
        LatticePoint::new(Rational64::zero(), Rational64::one()),
        LatticePoint::new(Rational64::new(1, pi), Rational64::new(q as i64, pi)),
    ];
    for (i, &kappa) in coeffs.iter().enumerate() {
        let next = points[i + 1].scaled_sub(kappa, &points[i]);
        points.push(next);
    }
    Ok(LatticeChain {
        p,
        q,
        points,
        chain_coeffs: coeffs,
    })
}

/// Exponent pair of the Laurent monomial `x^x y^y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub x: i64,
    pub y: i64,
}

impl Monomial {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn mul(self, other: Self) -> Self {
        Self::new(self.x + other.x, self.y + other.y)
    }

    pub fn pow(self, k: i64) -> Self {
        Self::new(self.x * k, self.y * k)
    }

    pub fn inv(self) -> Self {
        Self::new(-self.x, -self.y)
    }

    /// Invariance under `(x, y) ↦ (ζ x, ζ^q y)`, `ζ = e^{2πi/p}`.
    pub fn is_invariant(self, p: u64, q: u64) -> bool {
        (self.x + q as i64 * self.y).rem_euclid(p as i64) == 0
    }
}

impl fmt::Display for Monomial {
    /// `x^3 y`, `y^5`, `x^-1 y^2`, `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |var: &str, e: i64| match e {
            0 => None,
            1 => Some(var.to_string()),
            _ => Some(format!("{var}^{e}")),
        };
        let parts: Vec<String> = [factor("x", self.x), factor("y", self.y)]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Hilbert basis of the invariant monomials of `1/p(1,q)`, ordered from
/// `y^p` to `x^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialChain {
    pub p: u64,
    pub q: u64,
    pub exponents: Vec<Monomial>,
    /// `u_{i-1} u_{i+1} = u_i^{relation_coeffs[i-1]}` in this ordering; these
    /// are the dual coefficients of `p/(p-q)` read backwards.
    pub relation_coeffs: Vec<i64>,
}

impl MonomialChain {
    /// The ordering `u_0 = x^p, u_1 = x^{p-q} y, …, y^p`.
    pub fn starting_at_x(&self) -> Vec<Monomial> {
        self.exponents.iter().rev().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn verify(&self) -> Result<(), IdentityViolation> {
        let p = self.p as i64;
        let n = self.exponents.len();
        if n < 3 || self.relation_coeffs.len() + 2 != n {
            return Err(IdentityViolation::new(
                "monomial chain",
                "need relation coefficients for every interior monomial",
            ));
        }
        if self.exponents[0] != Monomial::new(0, p) || self.exponents[n - 1] != Monomial::new(p, 0)
        {
            return Err(IdentityViolation::new(
                "monomial chain",
                "chain must run from y^p to x^p",
            ));
        }
        for (i, &u) in self.exponents.iter().enumerate() {
            if !u.is_invariant(self.p, self.q) {
                return Err(IdentityViolation::new(
                    "monomial invariance",
                    format!("u_{i} = {u} is not invariant"),
                ));
            }
        }
        for (i, &a) in self.relation_coeffs.iter().enumerate() {
            let lhs = self.exponents[i].mul(self.exponents[i + 2]);
            let rhs = self.exponents[i + 1].pow(a);
            if lhs != rhs {
                return Err(IdentityViolation::new(
                    "monomial relation",
                    format!("u_{i} u_{} = {lhs} but u_{}^{a} = {rhs}", i + 2, i + 1),
                ));
            }
        }
        Ok(())
    }
}

/// Invariant monomials of the chain's group action.
///
/// Built by `u_0 = x^p`, `u_1 = x^{p-q} y`, `u_{i+1} = u_i^{a_i} / u_{i-1}`
/// with `a_i` the dual coefficients, then stored in ascending `y`-degree
/// reading order reversed (from `y^p` to `x^p`).
pub fn invariant_monomials(chain: &LatticeChain) -> MonomialChain {
    let (p, q) = (chain.p, chain.q);
    let dual: Vec<i64> = minus_continued_fraction(p, p - q)
        .into_iter()
        .map(|a| a as i64)
        .collect();
    let pi = p as i64;
    let mut from_x = vec![Monomial::new(pi, 0), Monomial::new(pi - q as i64, 1)];
    for (i, &a) in dual.iter().enumerate() {
        let next = from_x[i + 1].pow(a).mul(from_x[i].inv());
        from_x.push(next);
    }
    from_x.reverse();
    MonomialChain {
        p,
        q,
        exponents: from_x,
        relation_coeffs: dual.into_iter().rev().collect(),
    }
}

pub type IntMatrix = [[i64; 2]; 2];

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = [[0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Coordinates on chart `Y_i`: `ξ_i = x^{p t_i} y^{-p s_i}`,
/// `η_i = x^{-p t_{i+1}} y^{p s_{i+1}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub xi: Monomial,
    pub eta: Monomial,
}

impl Chart {
    /// Rows are the exponent vectors of `ξ` and `η`.
    pub fn basis(&self) -> IntMatrix {
        [[self.xi.x, self.xi.y], [self.eta.x, self.eta.y]]
    }
}

/// Euler vector fields on chart `Y_i` expressed through `x∂_x, y∂_y` and back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerFields {
    /// Rows: `ξ∂_ξ`, `η∂_η` as combinations of `(x∂_x, y∂_y)`.
    pub chart_in_xy: [[Rational64; 2]; 2],
    /// Rows: `x∂_x`, `y∂_y` as combinations of `(ξ∂_ξ, η∂_η)`.
    pub xy_in_chart: [[Rational64; 2]; 2],
}

impl EulerFields {
    pub fn is_inverse_pair(&self) -> bool {
        let (a, b) = (&self.chart_in_xy, &self.xy_in_chart);
        (0..2).all(|i| {
            (0..2).all(|j| {
                let v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                v == if i == j { Rational64::one() } else { Rational64::zero() }
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartAtlas {
    pub p: u64,
    pub charts: Vec<Chart>,
    points: Vec<LatticePoint>,
    chain_coeffs: Vec<i64>,
}

impl ChartAtlas {
    /// Matrix `T` with `(ξ_{i+1}, η_{i+1})ᵀ = T (ξ_i, η_i)ᵀ` on exponent vectors:
    /// `ξ_{i+1} = η_i^{-1}` and `η_{i+1} = η_i^{κ_{i+1}} ξ_i`.
    pub fn transition(&self, i: usize) -> IntMatrix {
        [[0, -1], [1, self.chain_coeffs[i]]]
    }

    pub fn transitions(&self) -> Vec<IntMatrix> {
        (0..self.charts.len() - 1).map(|i| self.transition(i)).collect()
    }

    /// Product of every transition, chart `0` to chart `m`.
    pub fn composite(&self) -> IntMatrix {
        self.transitions()
            .iter()
            .fold([[1, 0], [0, 1]], |acc, t| mat_mul(t, &acc))
    }

    /// `M` with `basis(m) = M · basis(0)`, solved directly over ℚ; `None` if
    /// it is not integral.
    pub fn direct_basis_change(&self) -> Option<IntMatrix> {
        let b0 = self.charts.first()?.basis();
        let bm = self.charts.last()?.basis();
        let det = b0[0][0] * b0[1][1] - b0[0][1] * b0[1][0];
        if det == 0 {
            return None;
        }
        let adj = [[b0[1][1], -b0[0][1]], [-b0[1][0], b0[0][0]]];
        let prod = mat_mul(&bm, &adj);
        let mut out = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                if prod[i][j] % det != 0 {
                    return None;
                }
                out[i][j] = prod[i][j] / det;
            }
        }
        Some(out)
    }

    pub fn euler_fields(&self, i: usize) -> EulerFields {
        let (c, d) = (self.points[i], self.points[i + 1]);
        let p = Rational64::from_integer(self.p as i64);
        EulerFields {
            chart_in_xy: [[d.s, d.t], [c.s, c.t]],
            xy_in_chart: [[p * c.t, -p * d.t], [-p * c.s, p * d.s]],
        }
    }

    pub fn check_dual_basis(&self) -> Result<(), IdentityViolation> {
        let (zero, one) = (Rational64::zero(), Rational64::one());
        for (i, chart) in self.charts.iter().enumerate() {
            let (c, d) = (self.points[i], self.points[i + 1]);
            let got = [c.pair(chart.eta), c.pair(chart.xi), d.pair(chart.eta), d.pair(chart.xi)];
            if got != [one, zero, zero, one] {
                return Err(IdentityViolation::new(
                    "dual basis",
                    format!("chart {i}: pairings {:?}", got.map(|r| r.to_string())),
                ));
            }
        }
        Ok(())
    }

    pub fn check_transitions(&self) -> Result<(), IdentityViolation> {
        for i in 0..self.charts.len() - 1 {
            let (cur, next) = (self.charts[i], self.charts[i + 1]);
            if cur.eta != next.xi.inv() {
                return Err(IdentityViolation::new(
                    "chart transition",
                    format!("η_{i} != ξ_{}^-1", i + 1),
                ));
            }
            if next.eta != cur.eta.pow(self.chain_coeffs[i]).mul(cur.xi) {
                return Err(IdentityViolation::new(
                    "chart transition",
                    format!("η_{} != η_{i}^κ ξ_{i}", i + 1),
                ));
            }
        }
        Ok(())
    }

    pub fn check_cocycle(&self) -> Result<(), IdentityViolation> {
        let composite = self.composite();
        match self.direct_basis_change() {
            Some(direct) if direct == composite => Ok(()),
            other => Err(IdentityViolation::new(
                "chart cocycle",
                format!("composite {composite:?} vs direct {other:?}"),
            )),
        }
    }

    pub fn verify(&self) -> Result<(), IdentityViolation> {
        self.check_dual_basis()?;
        self.check_transitions()?;
        self.check_cocycle()?;
        for i in 0..self.charts.len() {
            if !self.euler_fields(i).is_inverse_pair() {
                return Err(IdentityViolation::new(
                    "euler fields",
                    format!("chart {i}: derivation formulas do not invert"),
                ));
            }
        }
        Ok(())
    }
}

/// Charts `Y_0, …, Y_m` of the minimal resolution, one per consecutive pair
/// `(c_i, c_{i+1})`.
pub fn chart_atlas(chain: &LatticeChain) -> ChartAtlas {
    let p = Rational64::from_integer(chain.p as i64);
    let int = |r: Rational64| -> i64 {
        let v = r * p;
        debug_assert!(v.is_integer());
        v.to_integer()
    };
    let charts = chain
        .points
        .windows(2)
        .map(|w| Chart {
            xi: Monomial::new(int(w[0].t), -int(w[0].s)),
            eta: Monomial::new(-int(w[1].t), int(w[1].s)),
        })
        .collect();
    ChartAtlas {
        p: chain.p,
        charts,
        points: chain.points.clone(),
        chain_coeffs: chain.chain_coeffs.clone(),
    }
}

/// Outcome of the three Riemenschneider identities for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiemenschneiderCheck {
    pub excess_matches_dual: bool,
    pub dual_len_is_e_minus_2: bool,
    pub excess_is_e_plus_k_minus_3: bool,
}

impl RiemenschneiderCheck {
    pub fn all(&self) -> bool {
        self.excess_matches_dual && self.dual_len_is_e_minus_2 && self.excess_is_e_plus_k_minus_3
    }
}

/// Evaluates the identities with the dual data recomputed independently as
/// the expansion of `p/(p-q)`.
pub fn riemenschneider(exp: &HjExpansion) -> RiemenschneiderCheck {
    let dual = minus_continued_fraction(exp.p, exp.p - exp.q);
    let dual_excess: u64 = dual.iter().map(|&a| a - 1).sum();
    let e = exp.embedding_dimension();
    RiemenschneiderCheck {
        excess_matches_dual: exp.excess() == dual_excess,
        dual_len_is_e_minus_2: dual.len() as i64 == e - 2,
        excess_is_e_plus_k_minus_3: exp.excess() as i64 == e + exp.k() as i64 - 3,
    }
}

/// Everything the `resolve` command reports for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub expansion: HjExpansion,
    pub chain: LatticeChain,
    pub monomials: MonomialChain,
    pub atlas: ChartAtlas,
}

impl Resolution {
    pub fn new(p: u64, q: u64) -> Result<Self, HjError> {
        let expansion = hj_expand(p, q)?;
        let chain = lattice_chain(p, q)?;
        let monomials = invariant_monomials(&chain);
        let atlas = chart_atlas(&chain);
        Ok(Self {
            expansion,
            chain,
            monomials,
            atlas,
        })
    }

    /// Determinant identity plus recursion and endpoints of the chain.
    pub fn check_chain(&self) -> Result<(), IdentityViolation> {
        self.chain.verify()
    }
}

/// Serialized as a pair of `"num/den"` strings.
impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [
            format!("{}/{}", self.s.numer(), self.s.denom()),
            format!("{}/{}", self.t.numer(), self.t.denom()),
        ]
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [s, t] = <[String; 2]>::deserialize(deserializer)?;
        let parse = |v: &str| {
            parse_fraction(v).ok_or_else(|| serde::de::Error::custom(format!("bad fraction {v:?}")))
        };
        Ok(Self::new(parse(&s)?, parse(&t)?))
    }
}

impl FromStr for Monomial {
    type Err = String;

    /// Inverse of the `Display` form.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut m = Monomial::new(0, 0);
        if text.trim() == "1" {
            return Ok(m);
        }
        for part in text.split_whitespace() {
            let (var, exp) = match part.split_once('^') {
                Some((v, e)) => (v, e.parse::<i64>().map_err(|e| e.to_string())?),
                None => (part, 1),
            };
            match var {
                "x" => m.x += exp,
                "y" => m.y += exp,
                _ => return Err(format!("unknown variable in {part:?}")),
            }
        }
        Ok(m)
    }
}
