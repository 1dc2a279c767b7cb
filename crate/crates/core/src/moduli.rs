//! Exceptional-divisor data and dimensions `j_Γ, k_Γ, d_Γ, m_Γ` of the local
//! moduli space of scalar-flat Kähler ALE metrics on the minimal resolution.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group_catalog::{self, GroupError, GroupSpec, ValidatedGroup};
use crate::hirzebruch_jung::{self, HjError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuliError {
    #[error(transparent)]
    Hj(#[from] HjError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("formula disagreement for {group}: {detail}")]
    FormulaDisagreement { group: String, detail: String },
}

/// The string of exceptional curves, self-intersections `-e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionString {
    pub k: usize,
    pub self_intersections: Vec<i64>,
}

impl ResolutionString {
    pub fn from_self_intersections(self_intersections: Vec<i64>) -> Self {
        debug_assert!(self_intersections.iter().all(|&s| s <= -2));
        Self {
            k: self_intersections.len(),
            self_intersections,
        }
    }

    /// Chain of `k` `(-2)`-curves, the `A_k` resolution.
    pub fn a_k(k: usize) -> Self {
        Self::from_self_intersections(vec![-2; k])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "CyclicQ1_P3")]
    CyclicQ1P3,
    #[serde(rename = "CyclicQ1_PGE4")]
    CyclicQ1Pge4,
    CyclicGeneric,
    #[serde(rename = "CyclicSU2")]
    CyclicSu2,
    #[serde(rename = "NonCyclicSU2")]
    NonCyclicSu2,
    #[serde(rename = "NonCyclicGeneric_Dform")]
    NonCyclicGenericDform,
    #[serde(rename = "NonCyclicGeneric_Table3")]
    NonCyclicGenericTable3,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::CyclicQ1P3 => "CyclicQ1_P3",
            CaseTag::CyclicQ1Pge4 => "CyclicQ1_PGE4",
            CaseTag::CyclicGeneric => "CyclicGeneric",
            CaseTag::CyclicSu2 => "CyclicSU2",
            CaseTag::NonCyclicSu2 => "NonCyclicSU2",
            CaseTag::NonCyclicGenericDform => "NonCyclicGeneric_Dform",
            CaseTag::NonCyclicGenericTable3 => "NonCyclicGeneric_Table3",
        }
    }
}

/// Dimensions for one group. `j` and `d` are only known when the exceptional
/// curves are; for non-cyclic groups outside SU(2) only `m` is determined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliDimensions {
    pub group: String,
    pub j: Option<u64>,
    pub k: Option<u64>,
    pub d: Option<u64>,
    pub m: i64,
    pub case_tag: CaseTag,
    pub formula_note: String,
}

pub fn string_data(p: u64, q: u64) -> Result<ResolutionString, ModuliError> {
    let exp = hirzebruch_jung::hj_expand(p, q)?;
    Ok(ResolutionString::from_self_intersections(
        exp.coeffs.iter().map(|&e| -(e as i64)).collect(),
    ))
}

/// `j_Γ = 2 Σ (e_i - 1)`.
pub fn j_gamma(s: &ResolutionString) -> u64 {
    2 * s
        .self_intersections
        .iter()
        .map(|&v| (-v - 1) as u64)
        .sum::<u64>()
}

/// `d_Γ = j_Γ + k_Γ`.
pub fn d_gamma(s: &ResolutionString) -> u64 {
    j_gamma(s) + s.k as u64
}

pub fn m_cyclic(p: u64, q: u64) -> Result<ModuliDimensions, ModuliError> {
    let exp = hirzebruch_jung::hj_expand(p, q)?;
    let s = string_data(p, q)?;
    let (j, k) = (j_gamma(&s), s.k as u64);
    let d = j + k;
    let group = GroupSpec::Cyclic { p, q }.to_string();
    let (m, case_tag, formula_note) = if q == p - 1 {
        if p == 2 {
            (1, CaseTag::CyclicSu2, "A_1: m = 1".to_string())
        } else {
            let m = 3 * k as i64 - 3;
            (m, CaseTag::CyclicSu2, format!("hyperkahler A_{k}: m = 3k - 3"))
        }
    } else if q == 1 {
        if p == 3 {
            (2, CaseTag::CyclicQ1P3, "1/3(1,1): m = 2".to_string())
        } else {
            let m = 2 * p as i64 - 5;
            (m, CaseTag::CyclicQ1Pge4, "1/p(1,1), p >= 4: m = 2p - 5".to_string())
        }
    } else {
        let via_j = j as i64 + k as i64 - 2;
        let e = exp.embedding_dimension();
        let via_e = 2 * e + 3 * k as i64 - 8;
        if via_j != via_e {
            return Err(ModuliError::FormulaDisagreement {
                group,
                detail: format!("j + k - 2 = {via_j} but 2e + 3k - 8 = {via_e}"),
            });
        }
        (
            via_j,
            CaseTag::CyclicGeneric,
            format!("m = j + k - 2 = 2e + 3k - 8 (e = {e})"),
        )
    };
    Ok(ModuliDimensions {
        group,
        j: Some(j),
        k: Some(k),
        d: Some(d),
        m,
        case_tag,
        formula_note,
    })
}

/// Number of exceptional curves of the ADE resolution for the SU(2) members
/// of the product families.
fn dynkin_curve_count(spec: &GroupSpec) -> Option<u64> {
    match *spec {
        GroupSpec::DihedralProduct { l: 1, n } => Some(n + 2),
        GroupSpec::TetrahedralProduct { l: 1 } => Some(6),
        GroupSpec::OctahedralProduct { l: 1 } => Some(7),
        GroupSpec::IcosahedralProduct { l: 1 } => Some(8),
        _ => None,
    }
}

/// `m = 3k + 2k' + (2/n)(l + q) + 4` with `q ≡ -l (mod n)`, `1 <= q <= n-1`,
/// and `k, k'` the string lengths of `1/n(1,q)`.
pub fn dihedral_moduli(l: u64, n: u64) -> Result<(i64, String), ModuliError> {
    if n < 2 {
        return Err(ModuliError::UnsupportedParameter(format!(
            "n = {n}: no 1 <= q <= n - 1 with q = -l mod n"
        )));
    }
    let q = (n - l % n) % n;
    let exp = hirzebruch_jung::hj_expand(n, q)?;
    let (k, kd) = (exp.k() as i64, exp.dual_len() as i64);
    let twice = 2 * (l + q);
    if !twice.is_multiple_of(n) {
        return Err(ModuliError::FormulaDisagreement {
            group: format!("l={l},n={n}"),
            detail: format!("(2/n)(l + q) = {twice}/{n} is not an integer"),
        });
    }
    let m = 3 * k + 2 * kd + (twice / n) as i64 + 4;
    Ok((
        m,
        format!("m = 3k + 2k' + (2/n)(l+q) + 4 with q = {q}, k = {k}, k' = {kd}"),
    ))
}

/// A congruence row of the closed-form table for `T*, O*, I*`, `l > 1`:
/// `m = (l - residue)/divisor + offset` for `l ≡ residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PolyhedralRow {
    pub family: &'static str,
    pub modulus: u64,
    pub residue: u64,
    pub divisor: u64,
    pub offset: i64,
}

impl PolyhedralRow {
    pub fn matches(&self, family: &str, l: u64) -> bool {
        self.family == family && l % self.modulus == self.residue
    }

    pub fn evaluate(&self, l: u64) -> i64 {
        debug_assert!((l - self.residue) % self.divisor == 0);
        ((l - self.residue) / self.divisor) as i64 + self.offset
    }

    /// Smallest admissible `l > 1` in this row, in increasing order.
    pub fn admissible(&self) -> impl Iterator<Item = u64> + '_ {
        let start = if self.residue > 1 {
            self.residue
        } else {
            self.residue + self.modulus
        };
        (start..).step_by(self.modulus as usize).filter(move |&l| {
            let spec = match self.family {
                "tprod" => GroupSpec::TetrahedralProduct { l },
                "t3" => GroupSpec::TetrahedralIndex3 { l },
                "oprod" => GroupSpec::OctahedralProduct { l },
                _ => GroupSpec::IcosahedralProduct { l },
            };
            group_catalog::validate(spec).is_ok()
        })
    }
}

const fn row(family: &'static str, modulus: u64, residue: u64, divisor: u64, offset: i64) -> PolyhedralRow {
    PolyhedralRow {
        family,
        modulus,
        residue,
        divisor,
        offset,
    }
}

pub const POLYHEDRAL_ROWS: [PolyhedralRow; 15] = [
    row("tprod", 6, 1, 3, 17),
    row("tprod", 6, 5, 3, 15),
    row("t3", 6, 3, 3, 16),
    row("oprod", 12, 1, 6, 20),
    row("oprod", 12, 5, 6, 19),
    row("oprod", 12, 7, 6, 18),
    row("oprod", 12, 11, 6, 17),
    row("iprod", 30, 1, 15, 23),
    row("iprod", 30, 7, 15, 19),
    row("iprod", 30, 11, 15, 22),
    row("iprod", 30, 13, 15, 19),
    row("iprod", 30, 17, 15, 18),
    row("iprod", 30, 19, 15, 20),
    row("iprod", 30, 23, 15, 18),
    row("iprod", 30, 29, 15, 19),
];

fn family_and_l(spec: &GroupSpec) -> Option<(&'static str, u64)> {
    match *spec {
        GroupSpec::TetrahedralProduct { l } => Some(("tprod", l)),
        GroupSpec::TetrahedralIndex3 { l } => Some(("t3", l)),
        GroupSpec::OctahedralProduct { l } => Some(("oprod", l)),
        GroupSpec::IcosahedralProduct { l } => Some(("iprod", l)),
        _ => None,
    }
}

pub fn m_noncyclic(group: &ValidatedGroup) -> Result<ModuliDimensions, ModuliError> {
    let spec = *group.spec();
    let name = spec.to_string();
    let dims = |k: Option<u64>, m: i64, case_tag, formula_note: String| ModuliDimensions {
        group: name.clone(),
        j: None,
        k,
        d: None,
        m,
        case_tag,
        formula_note,
    };

    if let GroupSpec::DihedralProduct { n, .. } = spec {
        if n < 2 {
            return Err(ModuliError::UnsupportedParameter(format!(
                "{name}: D*_4 is cyclic, use cyclic:4,3"
            )));
        }
    }
    if let Some(k) = dynkin_curve_count(&spec) {
        let m = 3 * k as i64 - 3;
        return Ok(dims(
            Some(k),
            m,
            CaseTag::NonCyclicSu2,
            format!("hyperkahler, {k} curves: m = 3k - 3"),
        ));
    }
    match spec {
        GroupSpec::Cyclic { .. } => Err(ModuliError::UnsupportedParameter(format!(
            "{name} is cyclic"
        ))),
        GroupSpec::DihedralProduct { l, n } | GroupSpec::DihedralIndex2 { l, n } => {
            let (m, note) = dihedral_moduli(l, n)?;
            Ok(dims(None, m, CaseTag::NonCyclicGenericDform, note))
        }
        _ => {
            let (family, l) = family_and_l(&spec).expect("polyhedral family");
            let row = POLYHEDRAL_ROWS
                .iter()
                .find(|r| r.matches(family, l))
                .ok_or_else(|| {
                    ModuliError::UnsupportedParameter(format!("{name}: no congruence row"))
                })?;
            Ok(dims(
                None,
                row.evaluate(l),
                CaseTag::NonCyclicGenericTable3,
                format!(
                    "l = {} mod {}: m = (l - {})/{} + {}",
                    row.residue, row.modulus, row.residue, row.divisor, row.offset
                ),
            ))
        }
    }
}

pub fn moduli_report(group: &ValidatedGroup) -> Result<ModuliDimensions, ModuliError> {
    match *group.spec() {
        GroupSpec::Cyclic { p, q } => m_cyclic(p, q),
        _ => m_noncyclic(group),
    }
}

/// One row of the cyclic `q = 1` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub group: String,
    pub p: u64,
    pub d: u64,
    pub m: i64,
}

/// Regenerates the `1/p(1,1)` rows for `3 <= p <= pmax`.
pub fn table1(pmax: u64) -> Result<Vec<Table1Row>, ModuliError> {
    (3..=pmax)
        .map(|p| {
            let dims = m_cyclic(p, 1)?;
            Ok(Table1Row {
                group: format!("1/{p}(1,1)"),
                p,
                d: dims.d.expect("cyclic d"),
                m: dims.m,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table3Row {
    pub group: String,
    pub l: u64,
    pub congruence: String,
    pub m: i64,
}

/// Every admissible `1 < l <= lmax` for the `T*, O*, I*` families.
pub fn table3(lmax: u64) -> Result<Vec<Table3Row>, ModuliError> {
    let mut rows = Vec::new();
    for family in ["tprod", "t3", "oprod", "iprod"] {
        for l in 2..=lmax {
            let spec = match family {
                "tprod" => GroupSpec::TetrahedralProduct { l },
                "t3" => GroupSpec::TetrahedralIndex3 { l },
                "oprod" => GroupSpec::OctahedralProduct { l },
                _ => GroupSpec::IcosahedralProduct { l },
            };
            let Ok(group) = group_catalog::validate(spec) else {
                continue;
            };
            let dims = m_noncyclic(&group)?;
            let row = POLYHEDRAL_ROWS
                .iter()
                .find(|r| r.matches(family, l))
                .expect("validated l has a row");
            rows.push(Table3Row {
                group: spec.to_string(),
                l,
                congruence: format!("l = {} mod {}", row.residue, row.modulus),
                m: dims.m,
            });
        }
    }
    Ok(rows)
}
