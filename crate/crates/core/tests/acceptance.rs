//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Reference values are restated here rather than taken
//! from the library.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ale_moduli::cli;
use ale_moduli::group_catalog::{self, GroupSpec};
use ale_moduli::hirzebruch_jung::{self, mat_mul, IntMatrix, Resolution};
use ale_moduli::kahler::{
    self, decay_order, geometric_radii, linearized_l, linearized_l_two_scale, norm_sq,
    scalar_curvature, Point, PotentialSpec, SamplePlan, StencilOrder,
};
use ale_moduli::moduli;
use num_integer::Integer;
use num_rational::Rational64;

const TABLE_BUDGET: Duration = Duration::from_secs(1);
const SWEEP_BUDGET: Duration = Duration::from_secs(5);
const CURVATURE_BUDGET: Duration = Duration::from_secs(30);
const SWEEP_PMAX: u64 = 200;

const FLAT_S_TOL: f64 = 1e-8;
const SCALAR_FLAT_TOL: f64 = 1e-4;
const LINEARIZED_REL_TOL: f64 = 1e-3;
const KERNEL_TOL: f64 = 1e-6;
const DECAY_TOL: f64 = 0.1;
const RATIO_ORDER_2: f64 = 3.5;
const RATIO_ORDER_4: f64 = 14.0;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within_budget(start: Instant, budget: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    check(spent < budget, format!("took {spent:?}, budget {budget:?}"))
}

fn table_one() -> Outcome {
    let start = Instant::now();
    let rows = moduli::table1(50).map_err(|e| e.to_string())?;
    within_budget(start, TABLE_BUDGET)?;
    check(rows.len() == 48, format!("{} rows", rows.len()))?;
    for row in &rows {
        let want = if row.p == 3 { (5, 2) } else { (2 * row.p - 1, 2 * row.p as i64 - 5) };
        check((row.d, row.m) == want, format!("{}: {:?} vs {want:?}", row.group, (row.d, row.m)))?;
    }
    Ok(format!("48 rows, 1/3(1,1) = (5, 2), {:?}", start.elapsed()))
}

/// `(family, modulus, residue, divisor, offset)` with
/// `m = (l - residue)/divisor + offset`.
const TABLE_THREE: [(&str, u64, u64, u64, i64); 15] = [
    ("tprod", 6, 1, 3, 17),
    ("tprod", 6, 5, 3, 15),
    ("t3", 6, 3, 3, 16),
    ("oprod", 12, 1, 6, 20),
    ("oprod", 12, 5, 6, 19),
    ("oprod", 12, 7, 6, 18),
    ("oprod", 12, 11, 6, 17),
    ("iprod", 30, 1, 15, 23),
    ("iprod", 30, 7, 15, 19),
    ("iprod", 30, 11, 15, 22),
    ("iprod", 30, 13, 15, 19),
    ("iprod", 30, 17, 15, 18),
    ("iprod", 30, 19, 15, 20),
    ("iprod", 30, 23, 15, 18),
    ("iprod", 30, 29, 15, 19),
];

fn table_three() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (family, modulus, residue, divisor, offset) in TABLE_THREE {
        let spec = |l| match family {
            "tprod" => GroupSpec::TetrahedralProduct { l },
            "t3" => GroupSpec::TetrahedralIndex3 { l },
            "oprod" => GroupSpec::OctahedralProduct { l },
            _ => GroupSpec::IcosahedralProduct { l },
        };
        let admissible: Vec<u64> = (2..)
            .filter(|l| l % modulus == residue)
            .filter(|&l| group_catalog::validate(spec(l)).is_ok())
            .take(3)
            .collect();
        for l in admissible {
            let group = group_catalog::validate(spec(l)).expect("filtered");
            let got = moduli::moduli_report(&group).map_err(|e| e.to_string())?.m;
            let want = (l - residue) as i64 / divisor as i64 + offset;
            check(got == want, format!("{}: m = {got}, expected {want}", spec(l)))?;
            checked += 1;
        }
    }
    within_budget(start, TABLE_BUDGET)?;
    let t7 = moduli::moduli_report(&group_catalog::validate(GroupSpec::TetrahedralProduct { l: 7 }).unwrap())
        .unwrap()
        .m;
    check(t7 == 19, format!("tprod:l=7 gives {t7}"))?;
    Ok(format!("15 rows x 3 values = {checked} groups, {:?}", start.elapsed()))
}

fn coprime_pairs(pmax: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=pmax).flat_map(|p| (1..p).filter(move |&q| p.gcd(&q) == 1).map(move |q| (p, q)))
}

fn formula_concordance() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (p, q) in coprime_pairs(SWEEP_PMAX).filter(|&(p, q)| q != 1 && q != p - 1) {
        let exp = hirzebruch_jung::hj_expand(p, q).map_err(|e| e.to_string())?;
        let dims = moduli::m_cyclic(p, q).map_err(|e| e.to_string())?;
        let k = exp.coeffs.len() as i64;
        let e = 3 + exp.coeffs.iter().map(|&c| c as i64 - 2).sum::<i64>();
        let excess: i64 = exp.coeffs.iter().map(|&c| c as i64 - 1).sum();
        let dual_excess: i64 = exp.dual_coeffs.iter().map(|&c| c as i64 - 1).sum();
        let j = dims.j.ok_or("missing j")? as i64;
        check(j + k - 2 == 2 * e + 3 * k - 8, format!("1/{p}(1,{q}): j + k - 2 != 2e + 3k - 8"))?;
        check(dims.m == j + k - 2, format!("1/{p}(1,{q}): m = {}", dims.m))?;
        check(excess == dual_excess, format!("1/{p}(1,{q}): identity I"))?;
        check(exp.dual_coeffs.len() as i64 == e - 2, format!("1/{p}(1,{q}): identity II"))?;
        check(excess == e + k - 3, format!("1/{p}(1,{q}): identity III"))?;
        pairs += 1;
    }
    let sweep = cli::riemenschneider_sweep(SWEEP_PMAX);
    check(sweep.failures == 0, format!("sweep reports {} failures", sweep.failures))?;
    check(sweep.pairs_checked == pairs, "sweep pair count differs")?;
    within_budget(start, SWEEP_BUDGET)?;
    Ok(format!("{pairs} pairs, p <= {SWEEP_PMAX}, {:?}", start.elapsed()))
}

fn appendix_identities() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (p, q) in coprime_pairs(SWEEP_PMAX) {
        let res = Resolution::new(p, q).map_err(|e| e.to_string())?;
        let pts = &res.chain.points;
        let inv_p = Rational64::new(1, p as i64);
        for w in pts.windows(2) {
            check(w[0].t * w[1].s - w[1].t * w[0].s == inv_p, format!("1/{p}(1,{q}): determinant"))?;
        }
        let u = &res.monomials.exponents;
        for (i, &a) in res.monomials.relation_coeffs.iter().enumerate() {
            let lhs = (u[i].x + u[i + 2].x, u[i].y + u[i + 2].y);
            let rhs = (a * u[i + 1].x, a * u[i + 1].y);
            check(lhs == rhs, format!("1/{p}(1,{q}): monomial relation at {}", i + 1))?;
        }
        let charts = &res.atlas.charts;
        let product = res.chain.chain_coeffs[..charts.len() - 1]
            .iter()
            .map(|&kappa| -> IntMatrix { [[0, -1], [1, kappa]] })
            .fold([[1, 0], [0, 1]], |acc, t| mat_mul(&t, &acc));
        // basis(last) = product · basis(first), checked without inverting.
        let (first, last) = (charts[0].basis(), charts[charts.len() - 1].basis());
        check(mat_mul(&product, &first) == last, format!("1/{p}(1,{q}): cocycle"))?;
        pairs += 1;
    }
    Ok(format!("{pairs} pairs, p <= {SWEEP_PMAX}, {:?}", start.elapsed()))
}

fn example_values() -> Outcome {
    let a1 = moduli::m_cyclic(2, 1).map_err(|e| e.to_string())?;
    check(a1.d == Some(3) && a1.m == 1, format!("A_1: d = {:?}, m = {}", a1.d, a1.m))?;
    for k in 2..=40u64 {
        let dims = moduli::m_cyclic(k + 1, k).map_err(|e| e.to_string())?;
        check(dims.d == Some(3 * k), format!("A_{k}: d = {:?}", dims.d))?;
        check(dims.m == 3 * k as i64 - 3, format!("A_{k}: m = {}", dims.m))?;
    }
    Ok("A_1 (3, 1); A_k (3k, 3k - 3) for k <= 40".into())
}

fn scalar_flat() -> Outcome {
    let start = Instant::now();
    let plan = SamplePlan::shells(1.0, 8.0, 32, kahler::DEFAULT_H0, StencilOrder::Fourth)
        .map_err(|e| e.to_string())?;
    let flat = kahler::verify_metric(&PotentialSpec::Flat, &plan, FLAT_S_TOL).map_err(|e| e.to_string())?;
    check(flat.passed, format!("flat max |S| = {:e}", flat.max_abs_s))?;
    let mut worst = Vec::new();
    for spec in [PotentialSpec::EguchiHanson { a: 1.0 }, PotentialSpec::Burns { m: 1.0 }] {
        let report = kahler::verify_metric(&spec, &plan, SCALAR_FLAT_TOL).map_err(|e| e.to_string())?;
        check(report.passed, format!("{}: max |S| = {:e}", spec.name(), report.max_abs_s))?;
        worst.push(format!("{} {:.2e}", spec.name(), report.max_abs_s));
    }
    within_budget(start, CURVATURE_BUDGET)?;
    Ok(format!("flat {:.2e}, {}, {:?}", flat.max_abs_s, worst.join(", "), start.elapsed()))
}

fn bilaplacian(f: &dyn Fn(&Point) -> f64, x: &Point, h: f64) -> f64 {
    let lap = |g: &dyn Fn(&Point) -> f64, y: &Point| -> f64 {
        (0..4)
            .map(|a| {
                let at = |k: f64| {
                    let mut z = *y;
                    z[a] += k * h;
                    g(&z)
                };
                (-at(2.0) + 16.0 * at(1.0) - 30.0 * at(0.0) + 16.0 * at(-1.0) - at(-2.0)) / (12.0 * h * h)
            })
            .sum()
    };
    lap(&|y: &Point| lap(f, y), x)
}

fn direction(x: &Point) -> f64 {
    let u = norm_sq(x);
    0.25 * u * u + (0.7 * x[0]).sin() * x[3] * x[3] + (0.3 * x[1] + 0.2 * x[2]).exp()
}

fn linearized_operator() -> Outcome {
    const H: f64 = 0.05;
    const T: f64 = 1e-3;
    let points = [
        [0.3, 0.2, -0.1, 0.4],
        [0.6, -0.3, 0.2, 0.1],
        [-0.2, 0.5, 0.4, -0.3],
        [0.1, 0.1, 0.7, 0.2],
        [-0.5, -0.2, 0.1, 0.5],
    ];
    let flat = PotentialSpec::Flat;
    let mut worst: f64 = 0.0;
    for x in points {
        let want = -bilaplacian(&direction, &x, H) / 8.0;
        let got = linearized_l(&flat, &direction, &x, H, StencilOrder::Fourth, T).map_err(|e| e.to_string())?;
        let rel = (got - want).abs() / want.abs();
        check(rel < LINEARIZED_REL_TOL, format!("at {x:?}: {got} vs {want}"))?;
        worst = worst.max(rel);
    }
    let x = points[0];
    let q = |t| linearized_l(&flat, &direction, &x, H, StencilOrder::Fourth, t).map_err(|e| e.to_string());
    let ratio = (q(0.2)? - q(0.1)?) / (q(0.1)? - q(0.05)?);
    check((ratio - 4.0).abs() < 0.5, format!("t-halving ratio {ratio}"))?;
    let two = linearized_l_two_scale(&flat, &direction, &x, H, StencilOrder::Fourth, 0.1).map_err(|e| e.to_string())?;
    check((two.extrapolated - q(T)?).abs() < (two.coarse - q(T)?).abs(), "extrapolation does not improve")?;
    let one = |_: &Point| 1.0;
    let kernel = linearized_l(&flat, &one, &[1.0, 0.5, -0.3, 0.8], H, StencilOrder::Fourth, T).map_err(|e| e.to_string())?;
    check(kernel.abs() < KERNEL_TOL, format!("L(1) = {kernel:e}"))?;
    Ok(format!("max rel {worst:.1e}, t ratio {ratio:.2}, L(1) {kernel:.1e}"))
}

fn decay_orders() -> Outcome {
    let radii = geometric_radii(2.0, 64.0, 11);
    let mut parts = Vec::new();
    for (spec, mu) in [(PotentialSpec::EguchiHanson { a: 1.0 }, 4.0), (PotentialSpec::Burns { m: 1.0 }, 2.0)] {
        let est = decay_order(&spec, &radii, kahler::DEFAULT_H0, StencilOrder::Fourth).map_err(|e| e.to_string())?;
        let got = est.order.ok_or(format!("{}: no decay signal", spec.name()))?;
        check((got - mu).abs() <= DECAY_TOL, format!("{}: mu = {got}", spec.name()))?;
        check(got >= 2.0 - DECAY_TOL, format!("{}: order below 2", spec.name()))?;
        parts.push(format!("{} {got:.3}", spec.name()));
    }
    Ok(parts.join(", "))
}

fn stencil_convergence() -> Outcome {
    let spec = PotentialSpec::general(|x: &Point| {
        norm_sq(x) + 0.1 * (x[0].powi(4) + x[0] * x[0] * x[3] * x[3] + 0.5 * x[1].powi(3) * x[2])
    });
    let x = [0.4, -0.3, 0.5, 0.2];
    let ratio = |order, h: f64| -> Result<f64, String> {
        let s: Vec<f64> = [h, h / 2.0, h / 4.0]
            .iter()
            .map(|&h| scalar_curvature(&spec, &x, h, order).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        Ok((s[0] - s[1]) / (s[1] - s[2]))
    };
    let r2 = ratio(StencilOrder::Second, 0.1)?;
    let r4 = ratio(StencilOrder::Fourth, 0.2)?;
    check(r2 >= RATIO_ORDER_2, format!("order 2 ratio {r2}"))?;
    check(r4 >= RATIO_ORDER_4, format!("order 4 ratio {r4}"))?;
    Ok(format!("order 2: {r2:.2}, order 4: {r4:.2}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cyclic q = 1 table", table_one),
        ("polyhedral congruence table", table_three),
        ("formula concordance", formula_concordance),
        ("chain, monomial and cocycle identities", appendix_identities),
        ("A_k spot values", example_values),
        ("scalar-flat verification", scalar_flat),
        ("linearized operator", linearized_operator),
        ("decay orders", decay_orders),
        ("stencil convergence", stencil_convergence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
