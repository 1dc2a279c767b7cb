//! Finite subgroups of U(2) without complex reflections.
//!
//! Cyclic groups `1/p(1,q)` plus the six non-cyclic families built from the
//! binary polyhedral groups `D*_{4n}, T*, O*, I*` and the scalar cyclic
//! group `L(1,2l)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{family}: condition {condition} fails for {field}")]
    ConditionViolation {
        family: &'static str,
        field: &'static str,
        condition: &'static str,
    },
    #[error("cannot parse group spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Cyclic,
    DihedralProduct,
    TetrahedralProduct,
    OctahedralProduct,
    IcosahedralProduct,
    DihedralIndex2,
    TetrahedralIndex3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    /// Generated by `diag(ζ_p, ζ_p^q)`.
    Cyclic { p: u64, q: u64 },
    /// `φ(L(1,2l) × D*_{4n})`.
    DihedralProduct { l: u64, n: u64 },
    /// `φ(L(1,2l) × T*)`.
    TetrahedralProduct { l: u64 },
    /// `φ(L(1,2l) × O*)`.
    OctahedralProduct { l: u64 },
    /// `φ(L(1,2l) × I*)`.
    IcosahedralProduct { l: u64 },
    /// Index-2 diagonal subgroup of `φ(L(1,4l) × D*_{4n})`.
    DihedralIndex2 { l: u64, n: u64 },
    /// Index-3 diagonal subgroup of `φ(L(1,6l) × T*)`.
    TetrahedralIndex3 { l: u64 },
}

impl GroupSpec {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupSpec::Cyclic { .. } => GroupKind::Cyclic,
            GroupSpec::DihedralProduct { .. } => GroupKind::DihedralProduct,
            GroupSpec::TetrahedralProduct { .. } => GroupKind::TetrahedralProduct,
            GroupSpec::OctahedralProduct { .. } => GroupKind::OctahedralProduct,
            GroupSpec::IcosahedralProduct { .. } => GroupKind::IcosahedralProduct,
            GroupSpec::DihedralIndex2 { .. } => GroupKind::DihedralIndex2,
            GroupSpec::TetrahedralIndex3 { .. } => GroupKind::TetrahedralIndex3,
        }
    }

    fn family(&self) -> &'static str {
        match self.kind() {
            GroupKind::Cyclic => "cyclic",
            GroupKind::DihedralProduct => "dprod",
            GroupKind::TetrahedralProduct => "tprod",
            GroupKind::OctahedralProduct => "oprod",
            GroupKind::IcosahedralProduct => "iprod",
            GroupKind::DihedralIndex2 => "d2",
            GroupKind::TetrahedralIndex3 => "t3",
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, GroupSpec::Cyclic { .. })
    }
}

/// A spec that has passed [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ValidatedGroup(GroupSpec);

impl ValidatedGroup {
    pub fn spec(&self) -> &GroupSpec {
        &self.0
    }
}

impl From<ValidatedGroup> for GroupSpec {
    fn from(v: ValidatedGroup) -> Self {
        v.0
    }
}

pub fn validate(spec: GroupSpec) -> Result<ValidatedGroup, GroupError> {
    let family = spec.family();
    let fail = |field, condition| {
        Err(GroupError::ConditionViolation {
            family,
            field,
            condition,
        })
    };
    match spec {
        GroupSpec::Cyclic { p, q } => {
            if !(1 <= q && q < p) {
                return fail("q", "1 <= q < p");
            }
            if p.gcd(&q) != 1 {
                return fail("p,q", "gcd(p,q) = 1");
            }
        }
        GroupSpec::DihedralProduct { l, n } => {
            if l == 0 || n == 0 {
                return fail("l,n", "l >= 1 and n >= 1");
            }
            if l.gcd(&(2 * n)) != 1 {
                return fail("l,n", "gcd(l,2n) = 1");
            }
        }
        GroupSpec::TetrahedralProduct { l } | GroupSpec::OctahedralProduct { l } => {
            if l == 0 {
                return fail("l", "l >= 1");
            }
            if l.gcd(&6) != 1 {
                return fail("l", "gcd(l,6) = 1");
            }
        }
        GroupSpec::IcosahedralProduct { l } => {
            if l == 0 {
                return fail("l", "l >= 1");
            }
            if l.gcd(&30) != 1 {
                return fail("l", "gcd(l,30) = 1");
            }
        }
        GroupSpec::DihedralIndex2 { l, n } => {
            if l == 0 || n == 0 {
                return fail("l,n", "l >= 1 and n >= 1");
            }
            if l % 2 != 0 {
                return fail("l", "gcd(l,2) = 2");
            }
            if l.gcd(&n) != 1 {
                return fail("l,n", "gcd(l,n) = 1");
            }
        }
        GroupSpec::TetrahedralIndex3 { l } => {
            if l.gcd(&6) != 3 {
                return fail("l", "gcd(l,6) = 3");
            }
        }
    }
    Ok(ValidatedGroup(spec))
}

pub fn group_order(group: &ValidatedGroup) -> u64 {
    match *group.spec() {
        GroupSpec::Cyclic { p, .. } => p,
        GroupSpec::DihedralProduct { l, n } | GroupSpec::DihedralIndex2 { l, n } => 4 * l * n,
        GroupSpec::TetrahedralProduct { l } | GroupSpec::TetrahedralIndex3 { l } => 24 * l,
        GroupSpec::OctahedralProduct { l } => 48 * l,
        GroupSpec::IcosahedralProduct { l } => 120 * l,
    }
}

/// Cyclic `1/p(1,p-1)`, or a product family with `l = 1` (the scalar factor
/// is then `{±1}`, already inside the binary polyhedral group).
pub fn is_su2(group: &ValidatedGroup) -> bool {
    match *group.spec() {
        GroupSpec::Cyclic { p, q } => q == p - 1,
        GroupSpec::DihedralProduct { l, .. }
        | GroupSpec::TetrahedralProduct { l }
        | GroupSpec::OctahedralProduct { l }
        | GroupSpec::IcosahedralProduct { l } => l == 1,
        GroupSpec::DihedralIndex2 { .. } | GroupSpec::TetrahedralIndex3 { .. } => false,
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Cyclic { p, q } => write!(f, "cyclic:{p},{q}"),
            GroupSpec::DihedralProduct { l, n } => write!(f, "dprod:l={l},n={n}"),
            GroupSpec::TetrahedralProduct { l } => write!(f, "tprod:l={l}"),
            GroupSpec::OctahedralProduct { l } => write!(f, "oprod:l={l}"),
            GroupSpec::IcosahedralProduct { l } => write!(f, "iprod:l={l}"),
            GroupSpec::DihedralIndex2 { l, n } => write!(f, "d2:l={l},n={n}"),
            GroupSpec::TetrahedralIndex3 { l } => write!(f, "t3:l={l}"),
        }
    }
}

impl fmt::Display for ValidatedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// `cyclic:<p>,<q>` | `dprod:l=<l>,n=<n>` | `tprod:l=<l>` | `oprod:l=<l>`
    /// | `iprod:l=<l>` | `d2:l=<l>,n=<n>` | `t3:l=<l>`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| GroupError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let (family, args) = input
            .trim()
            .split_once(':')
            .ok_or_else(|| err("expected <family>:<args>"))?;
        let number = |s: &str| s.trim().parse::<u64>().map_err(|_| err("expected a positive integer"));

        if family == "cyclic" {
            let (p, q) = args.split_once(',').ok_or_else(|| err("expected cyclic:<p>,<q>"))?;
            return Ok(GroupSpec::Cyclic {
                p: number(p)?,
                q: number(q)?,
            });
        }

        let mut l = None;
        let mut n = None;
        for part in args.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(|| err("expected key=value"))?;
            let slot = match key.trim() {
                "l" => &mut l,
                "n" => &mut n,
                _ => return Err(err("unknown key")),
            };
            if slot.replace(number(value)?).is_some() {
                return Err(err("duplicate key"));
            }
        }
        let l = l.ok_or_else(|| err("missing l"))?;
        let needs_n = matches!(family, "dprod" | "d2");
        if needs_n != n.is_some() {
            return Err(err(if needs_n { "missing n" } else { "unexpected n" }));
        }
        Ok(match family {
            "dprod" => GroupSpec::DihedralProduct { l, n: n.unwrap() },
            "d2" => GroupSpec::DihedralIndex2 { l, n: n.unwrap() },
            "tprod" => GroupSpec::TetrahedralProduct { l },
            "oprod" => GroupSpec::OctahedralProduct { l },
            "iprod" => GroupSpec::IcosahedralProduct { l },
            "t3" => GroupSpec::TetrahedralIndex3 { l },
            _ => return Err(err("unknown family")),
        })
    }
}
