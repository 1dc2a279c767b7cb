//! The `ale-moduli` command line.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 a mathematical
//! verification failed (curvature over tolerance, identity violated).

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::group_catalog::{self, GroupSpec};
use crate::hirzebruch_jung::{self, fraction_over, Resolution};
use crate::kahler::{self, KahlerError, PotentialSpec, SamplePlan, StencilOrder};
use crate::moduli::{self, ModuliError};

/// Significant digits for every float written by the CLI.
pub const FLOAT_DIGITS: usize = 12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ale-moduli", version, about = "Resolution data and moduli dimensions of scalar-flat Kahler ALE surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PotentialName {
    Flat,
    EguchiHanson,
    Burns,
}

#[derive(Debug, clap::Args)]
struct PotentialArgs {
    #[arg(long, value_enum)]
    potential: PotentialName,
    /// Eguchi-Hanson scale.
    #[arg(long)]
    a: Option<f64>,
    /// Burns mass parameter.
    #[arg(long)]
    m: Option<f64>,
    #[arg(long, default_value_t = 4, value_parser = parse_order)]
    order: u8,
    #[arg(long, default_value_t = kahler::DEFAULT_H0)]
    h0: f64,
}

fn parse_order(s: &str) -> Result<u8, String> {
    let v: u8 = s.parse().map_err(|_| format!("invalid order {s:?}"))?;
    StencilOrder::try_from(v).map(|o| o.as_u8())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hirzebruch-Jung data, lattice chain, invariant monomials and charts of 1/p(1,q).
    Resolve {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        json: bool,
    },
    /// Moduli dimensions for a group spec such as cyclic:5,2 or dprod:l=3,n=5.
    Moduli {
        #[arg(long)]
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Regenerate the cyclic (1) or polyhedral (3) dimension table.
    Table {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(["1", "3"]))]
        which: String,
        #[arg(long, default_value_t = 50)]
        pmax: u64,
        #[arg(long, default_value_t = 100)]
        lmax: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check scalar-flatness of an explicit potential at sample points.
    VerifyMetric {
        #[command(flatten)]
        potential: PotentialArgs,
        #[arg(long)]
        rmin: f64,
        #[arg(long)]
        rmax: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = kahler::SCALAR_FLAT_TOLERANCE)]
        tolerance: f64,
        /// Weights for the weighted sup norm of |g - I| (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        delta: Vec<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Estimate the ALE decay order from the metric deviation.
    Decay {
        #[command(flatten)]
        potential: PotentialArgs,
        /// R0:R1:steps, geometrically spaced.
        #[arg(long)]
        radii: String,
        /// Fail with exit code 2 unless the order is within 0.1 of this.
        #[arg(long)]
        expect: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Sweep the Riemenschneider identities and the m formula concordance.
    Riemenschneider {
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<ModuliError> for Failure {
    fn from(e: ModuliError) -> Self {
        match e {
            ModuliError::FormulaDisagreement { .. } => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<KahlerError> for Failure {
    fn from(e: KahlerError) -> Self {
        match e {
            KahlerError::DegenerateMetric { .. } => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Parses `argv` (including the program name), writes results to `out` and
/// diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_VERIFICATION
        }
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Failure::Usage(e.to_string()))
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Resolve { p, q, json } => {
            let report = resolve_report(p, q).map_err(|e| Failure::Usage(e.to_string()))?;
            if json {
                emit_json(out, &report)?;
            } else {
                write_resolve_text(out, &report).map_err(io)?;
            }
            Ok(if report.identities.all_pass() { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Moduli { group, json } => {
            let spec: GroupSpec = group.parse().map_err(|e: group_catalog::GroupError| Failure::Usage(e.to_string()))?;
            let group = group_catalog::validate(spec).map_err(|e| Failure::Usage(e.to_string()))?;
            let dims = moduli::moduli_report(&group)?;
            if json {
                emit_json(out, &dims)?;
            } else {
                let show = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
                writeln!(out, "group      {}", dims.group).map_err(io)?;
                writeln!(out, "order      {}", group_catalog::group_order(&group)).map_err(io)?;
                writeln!(out, "su2        {}", group_catalog::is_su2(&group)).map_err(io)?;
                writeln!(out, "j          {}", show(dims.j)).map_err(io)?;
                writeln!(out, "k          {}", show(dims.k)).map_err(io)?;
                writeln!(out, "d          {}", show(dims.d)).map_err(io)?;
                writeln!(out, "m          {}", dims.m).map_err(io)?;
                writeln!(out, "case       {}", dims.case_tag.as_str()).map_err(io)?;
                writeln!(out, "formula    {}", dims.formula_note).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Table { which, pmax, lmax, json } => {
            if which == "1" {
                if pmax < 3 {
                    return Err(Failure::Usage("--pmax must be at least 3".into()));
                }
                let rows = moduli::table1(pmax)?;
                if json {
                    emit_json(out, &TableOutput { table: 1, rows })?;
                } else {
                    writeln!(out, "{:<12} {:>6} {:>6}", "group", "d", "m").map_err(io)?;
                    for r in &rows {
                        writeln!(out, "{:<12} {:>6} {:>6}", r.group, r.d, r.m).map_err(io)?;
                    }
                }
            } else {
                let rows = moduli::table3(lmax)?;
                if json {
                    emit_json(out, &TableOutput { table: 3, rows })?;
                } else {
                    writeln!(out, "{:<14} {:>5} {:<16} {:>5}", "group", "l", "congruence", "m").map_err(io)?;
                    for r in &rows {
                        writeln!(out, "{:<14} {:>5} {:<16} {:>5}", r.group, r.l, r.congruence, r.m)
                            .map_err(io)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::VerifyMetric {
            potential,
            rmin,
            rmax,
            samples,
            tolerance,
            delta,
            json,
        } => {
            let (spec, order) = potential_spec(&potential)?;
            let plan = SamplePlan::shells(rmin, rmax, samples, potential.h0, order)?;
            let mut report = kahler::verify_metric(&spec, &plan, tolerance)?;
            if !delta.is_empty() {
                report.attach_weighted_norms(&spec, &plan, &delta)?;
            }
            let report = report.rounded(FLOAT_DIGITS);
            if json {
                emit_json(out, &report)?;
            } else {
                writeln!(out, "potential       {}", report.potential).map_err(io)?;
                writeln!(out, "stencil order   {}", report.order.as_u8()).map_err(io)?;
                writeln!(out, "h0              {:e}", report.h0).map_err(io)?;
                writeln!(out, "{:>4} {:>12} {:>20} {:>14}", "idx", "|z|", "S", "min eig").map_err(io)?;
                for s in &report.samples {
                    writeln!(
                        out,
                        "{:>4} {:>12.6} {:>20.11e} {:>14.6e}",
                        s.index, s.radius, s.scalar_curvature, s.min_eigenvalue
                    )
                    .map_err(io)?;
                }
                for w in &report.weighted_norms {
                    writeln!(out, "weighted norm   delta={} value={:.11e}", w.delta, w.value).map_err(io)?;
                }
                writeln!(out, "max |S|         {:.11e}", report.max_abs_s).map_err(io)?;
                writeln!(out, "tolerance       {:e}", report.tolerance).map_err(io)?;
                writeln!(out, "verdict         {}", if report.passed { "pass" } else { "fail" }).map_err(io)?;
            }
            Ok(if report.passed { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Decay {
            potential,
            radii,
            expect,
            json,
        } => {
            let (spec, order) = potential_spec(&potential)?;
            let radii = parse_radii(&radii)?;
            let estimate = kahler::decay_order(&spec, &radii, potential.h0, order)?;
            let within = |mu: f64| expect.is_none_or(|want| (mu - want).abs() <= DECAY_TOLERANCE);
            let passed = match estimate.order {
                Some(mu) => within(mu),
                None => expect.is_none(),
            };
            let report = DecayOutput {
                potential: spec.name(),
                expected: expect,
                tolerance: DECAY_TOLERANCE,
                passed,
                estimate: estimate.rounded(FLOAT_DIGITS),
            };
            if json {
                emit_json(out, &report)?;
            } else {
                writeln!(out, "potential   {}", report.potential).map_err(io)?;
                writeln!(out, "{:>12} {:>20}", "r", "max |g - I|").map_err(io)?;
                for (r, d) in report.estimate.radii.iter().zip(&report.estimate.deviations) {
                    writeln!(out, "{r:>12.6} {d:>20.11e}").map_err(io)?;
                }
                match (report.estimate.order, report.estimate.residual) {
                    (Some(mu), Some(res)) => {
                        writeln!(out, "order       {mu:.6}").map_err(io)?;
                        writeln!(out, "residual    {res:.3e}").map_err(io)?;
                    }
                    _ => writeln!(out, "order       no decay signal").map_err(io)?,
                }
                writeln!(out, "verdict     {}", if passed { "pass" } else { "fail" }).map_err(io)?;
            }
            Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Riemenschneider { pmax, json } => {
            let report = riemenschneider_sweep(pmax);
            if json {
                emit_json(out, &report)?;
            } else {
                writeln!(out, "pmax            {}", report.pmax).map_err(io)?;
                writeln!(out, "pairs checked   {}", report.pairs_checked).map_err(io)?;
                writeln!(out, "failures        {}", report.failures).map_err(io)?;
                if let Some(c) = &report.first_counterexample {
                    writeln!(out, "counterexample  1/{}(1,{}): {}", c.p, c.q, c.failed.join(", ")).map_err(io)?;
                }
            }
            Ok(if report.failures == 0 { EXIT_OK } else { EXIT_VERIFICATION })
        }
    }
}

/// Allowed deviation of an estimated decay order from its expected value.
pub const DECAY_TOLERANCE: f64 = 0.1;

fn potential_spec(args: &PotentialArgs) -> Result<(PotentialSpec, StencilOrder), Failure> {
    let order = StencilOrder::try_from(args.order).map_err(Failure::Usage)?;
    let positive = |name: &str, v: Option<f64>| -> Result<f64, Failure> {
        let v = v.unwrap_or(1.0);
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(Failure::Usage(format!("--{name} must be positive, got {v}")))
        }
    };
    let spec = match args.potential {
        PotentialName::Flat => {
            if args.a.is_some() || args.m.is_some() {
                return Err(Failure::Usage("flat potential takes no parameters".into()));
            }
            PotentialSpec::Flat
        }
        PotentialName::EguchiHanson => {
            if args.m.is_some() {
                return Err(Failure::Usage("eguchi-hanson takes --a, not --m".into()));
            }
            PotentialSpec::EguchiHanson { a: positive("a", args.a)? }
        }
        PotentialName::Burns => {
            if args.a.is_some() {
                return Err(Failure::Usage("burns takes --m, not --a".into()));
            }
            PotentialSpec::Burns { m: positive("m", args.m)? }
        }
    };
    Ok((spec, order))
}

/// `R0:R1:steps` to `steps` geometrically spaced radii.
pub fn parse_radii(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [r0, r1, steps] = parts.as_slice() else {
        return Err(format!("expected R0:R1:steps, got {text:?}"));
    };
    let r0: f64 = r0.parse().map_err(|_| format!("bad R0 in {text:?}"))?;
    let r1: f64 = r1.parse().map_err(|_| format!("bad R1 in {text:?}"))?;
    let steps: usize = steps.parse().map_err(|_| format!("bad step count in {text:?}"))?;
    if !(r0 > 0.0 && r1 > r0) || steps < 2 {
        return Err(format!("need 0 < R0 < R1 and steps >= 2, got {text:?}"));
    }
    Ok(kahler::geometric_radii(r0, r1, steps))
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableOutput<R> {
    pub table: u8,
    pub rows: Vec<R>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayOutput {
    pub potential: String,
    pub expected: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub estimate: kahler::DecayEstimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityVerdicts {
    pub riemenschneider: Verdict,
    pub determinant: Verdict,
    pub monomial_relation: Verdict,
    pub cocycle: Verdict,
}

impl IdentityVerdicts {
    pub fn all_pass(&self) -> bool {
        [self.riemenschneider, self.determinant, self.monomial_relation, self.cocycle]
            .iter()
            .all(|v| *v == Verdict::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartOutput {
    pub index: usize,
    pub xi: String,
    pub eta: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveReport {
    pub p: u64,
    pub q: u64,
    pub coeffs: Vec<u64>,
    pub dual_coeffs: Vec<u64>,
    pub embedding_dimension: i64,
    /// `c_0 … c_{m+1}` as `[s, t]` fraction strings over `p`.
    pub lattice_points: Vec<[String; 2]>,
    /// Invariant monomials from `x^p` to `y^p`.
    pub monomials: Vec<String>,
    pub charts: Vec<ChartOutput>,
    pub transitions: Vec<[[i64; 2]; 2]>,
    pub identities: IdentityVerdicts,
}

pub fn resolve_report(p: u64, q: u64) -> Result<ResolveReport, hirzebruch_jung::HjError> {
    let res = Resolution::new(p, q)?;
    let identities = IdentityVerdicts {
        riemenschneider: hirzebruch_jung::riemenschneider(&res.expansion).all().into(),
        determinant: res.check_chain().is_ok().into(),
        monomial_relation: res.monomials.verify().is_ok().into(),
        cocycle: res.atlas.verify().is_ok().into(),
    };
    Ok(ResolveReport {
        p,
        q,
        coeffs: res.expansion.coeffs.clone(),
        dual_coeffs: res.expansion.dual_coeffs.clone(),
        embedding_dimension: res.expansion.embedding_dimension(),
        lattice_points: res
            .chain
            .points
            .iter()
            .map(|c| [fraction_over(c.s, p), fraction_over(c.t, p)])
            .collect(),
        monomials: res.monomials.starting_at_x().iter().map(|m| m.to_string()).collect(),
        charts: res
            .atlas
            .charts
            .iter()
            .enumerate()
            .map(|(index, c)| ChartOutput {
                index,
                xi: c.xi.to_string(),
                eta: c.eta.to_string(),
            })
            .collect(),
        transitions: res.atlas.transitions(),
        identities,
    })
}

fn write_resolve_text(out: &mut dyn Write, r: &ResolveReport) -> std::io::Result<()> {
    let join = |v: &[u64]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
    writeln!(out, "1/{}(1,{})", r.p, r.q)?;
    writeln!(out, "coeffs              [{}]", join(&r.coeffs))?;
    writeln!(out, "dual coeffs         [{}]", join(&r.dual_coeffs))?;
    writeln!(out, "embedding dimension {}", r.embedding_dimension)?;
    writeln!(out, "lattice points")?;
    for (i, [s, t]) in r.lattice_points.iter().enumerate() {
        writeln!(out, "  c_{i:<3} ({s}, {t})")?;
    }
    writeln!(out, "invariant monomials {}", r.monomials.join(", "))?;
    writeln!(out, "charts")?;
    for c in &r.charts {
        writeln!(out, "  Y_{:<3} xi = {:<14} eta = {}", c.index, c.xi, c.eta)?;
    }
    let v = |v: Verdict| if v == Verdict::Pass { "pass" } else { "fail" };
    writeln!(out, "riemenschneider     {}", v(r.identities.riemenschneider))?;
    writeln!(out, "determinant         {}", v(r.identities.determinant))?;
    writeln!(out, "monomial relation   {}", v(r.identities.monomial_relation))?;
    writeln!(out, "cocycle             {}", v(r.identities.cocycle))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub p: u64,
    pub q: u64,
    pub failed: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub pmax: u64,
    pub pairs_checked: usize,
    pub failures: usize,
    pub first_counterexample: Option<Counterexample>,
}

/// Every coprime `(p, q)` with `q ∉ {1, p-1}` and `p <= pmax`: the three
/// Riemenschneider identities and `j + k - 2 = 2e + 3k - 8`.
pub fn riemenschneider_sweep(pmax: u64) -> SweepReport {
    let mut pairs_checked = 0;
    let mut failures = 0;
    let mut first = None;
    for p in 4..=pmax {
        for q in 2..p - 1 {
            let Ok(exp) = hirzebruch_jung::hj_expand(p, q) else {
                continue;
            };
            pairs_checked += 1;
            let check = hirzebruch_jung::riemenschneider(&exp);
            let s = moduli::ResolutionString::from_self_intersections(
                exp.coeffs.iter().map(|&e| -(e as i64)).collect(),
            );
            let k = s.k as i64;
            let concordant = moduli::j_gamma(&s) as i64 + k - 2 == 2 * exp.embedding_dimension() + 3 * k - 8;
            let mut failed = Vec::new();
            if !check.excess_matches_dual {
                failed.push("sum(e_i - 1) = sum(e'_i - 1)".to_string());
            }
            if !check.dual_len_is_e_minus_2 {
                failed.push("k' = e - 2".to_string());
            }
            if !check.excess_is_e_plus_k_minus_3 {
                failed.push("sum(e_i - 1) = e + k - 3".to_string());
            }
            if !concordant {
                failed.push("j + k - 2 = 2e + 3k - 8".to_string());
            }
            if !failed.is_empty() {
                failures += 1;
                first.get_or_insert(Counterexample { p, q, failed });
            }
        }
    }
    SweepReport {
        pmax,
        pairs_checked,
        failures,
        first_counterexample: first,
    }
}
