//! Resolution data and moduli-space dimensions for scalar-flat Kähler ALE
//! surfaces over `ℂ²/Γ`, plus a finite-difference verifier for explicit
//! scalar-flat Kähler potentials.
//!
//! - [`group_catalog`]: finite subgroups of U(2) without complex reflections.
//! - [`hirzebruch_jung`]: continued fractions, lattice chains, invariant
//!   monomials and the chart atlas of a cyclic quotient singularity.
//! - [`moduli`]: `j_Γ, k_Γ, d_Γ, m_Γ` for every supported group.
//! - [`kahler`]: metric, scalar curvature, linearized operator, decay order.
//! - [`cli`]: the `ale-moduli` command line.

pub mod cli;
pub mod group_catalog;
pub mod hirzebruch_jung;
pub mod kahler;
pub mod moduli;

pub use group_catalog::{group_order, is_su2, validate, GroupError, GroupKind, GroupSpec, ValidatedGroup};
pub use hirzebruch_jung::{
    chart_atlas, evaluate_fraction, hj_expand, invariant_monomials, lattice_chain, ChartAtlas,
    HjError, HjExpansion, LatticeChain, LatticePoint, Monomial, MonomialChain,
};
pub use moduli::{
    d_gamma, j_gamma, m_cyclic, m_noncyclic, moduli_report, string_data, CaseTag,
    ModuliDimensions, ModuliError, ResolutionString,
};
