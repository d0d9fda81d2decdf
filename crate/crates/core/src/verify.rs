//! Cross-check suites: the full per-spec verification and the exhaustive
//! sweep over all small parameter tuples.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::hibi::{
    a_invariant, asl_hilbert_function, birkhoff_check, hibi_hilbert_function, reciprocity_check, MAX_HIBI_POSET,
};
use crate::invariants::{
    analytic_spread, formula_report, rank_p, reduction_number, reduction_number_by_terms, theta_oracle, ThetaRoute,
};
use crate::minors::{
    build_side_lattice, join_irreducible_test, join_irreducibles, minimal_join_irreducibles, phi, theta_from_factors,
    theta_join_irreducibles_decompose, RowTuple,
};
use crate::poset::Poset;
use crate::spec::{ProblemSpec, Side};

pub const DEFAULT_D_MAX: usize = 4;
/// Largest Θ on which the cubic distributivity and Birkhoff checks run.
pub const BIRKHOFF_LIMIT: usize = 200;
/// Largest join-irreducible poset for the interior-point search.
pub const A_INVARIANT_LIMIT: usize = 48;
/// Largest join-irreducible poset for the reciprocity check.
pub const RECIPROCITY_LIMIT: usize = 8;
/// Sweep bounds accepted for `max_m` and `max_n`.
pub const SWEEP_CEILING: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub d_max: usize,
    /// Negative control: perturbs the closed-form analytic spread by one so
    /// that the formula-versus-oracle check must fail.
    pub corrupt_formula: bool,
}

impl VerifyOptions {
    pub fn new(d_max: usize) -> Self {
        Self {
            d_max,
            corrupt_formula: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub route: ThetaRoute,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .map(|c| c.name.as_str())
            .collect()
    }
}

#[derive(Default)]
struct Checks(Vec<CheckResult>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.0.push(CheckResult {
            name: name.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: detail.into(),
        });
    }

    fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.0.push(CheckResult {
            name: name.into(),
            status: CheckStatus::Skipped,
            detail: why.into(),
        });
    }

    fn eq<V: PartialEq + fmt::Debug>(&mut self, name: &str, formula: V, oracle: V) {
        let ok = formula == oracle;
        self.push(name, ok, format!("formula {formula:?}, oracle {oracle:?}"));
    }
}

/// Formula list of minimal join-irreducibles against the poset's own minimal
/// elements and coheights.
fn minimal_elements_agree(spec: &ProblemSpec, side: Side, p: &Poset<RowTuple>) -> (bool, String) {
    let mut formula = minimal_join_irreducibles(spec, side);
    formula.sort();
    let coheights = p.coheights();
    let poset: Vec<(RowTuple, i64)> = p
        .minimal_indices()
        .into_iter()
        .map(|i| (p.element(i).clone(), coheights[i]))
        .collect();
    let ok = formula == poset;
    (ok, format!("{} minimal elements", poset.len()))
}

fn positional_test_agrees(spec: &ProblemSpec, side: Side, d: &Poset<RowTuple>) -> bool {
    (0..d.len()).all(|i| join_irreducible_test(d.element(i), spec, side).is_some() == (d.lower_covers(i).len() == 1))
}

/// `φ` is injective, order-reversing in both coordinates, has a staircase
/// image, and `coheight = p + q`.
fn phi_properties(spec: &ProblemSpec, side: Side, p: &Poset<RowTuple>) -> Result<bool> {
    let profiles = p
        .elements()
        .iter()
        .map(|t| phi(t, spec, side))
        .collect::<Result<Vec<_>>>()?;
    let coheights = p.coheights();
    let pts: Vec<(i64, i64)> = profiles.iter().map(|f| (f.p, f.q)).collect();
    let nonneg = pts.iter().all(|&(x, y)| x >= 0 && y >= 0);
    let coheight_ok = pts.iter().zip(&coheights).all(|(&(x, y), &c)| x + y == c);
    let mut sorted = pts.clone();
    sorted.sort_unstable();
    let injective = sorted.windows(2).all(|w| w[0] != w[1]);
    let n = p.len();
    let order_ok = (0..n).all(|i| (0..n).all(|j| p.leq(i, j) == (pts[i].0 >= pts[j].0 && pts[i].1 >= pts[j].1)));
    let staircase = pts
        .iter()
        .all(|&(x, y)| (0..=x).all(|x2| (0..=y).all(|y2| sorted.binary_search(&(x2, y2)).is_ok())));
    Ok(nonneg && coheight_ok && injective && order_ok && staircase)
}

fn run_birkhoff<T>(checks: &mut Checks, name: &str, d: &Poset<T>) -> Result<()>
where
    T: Ord + Clone + fmt::Display,
{
    let w = birkhoff_check(d)?;
    checks.push(
        name,
        w.is_isomorphism,
        format!(
            "{} elements, {} join-irreducibles, {} ideals",
            d.len(),
            w.join_irreducible_count,
            w.ideal_count
        ),
    );
    Ok(())
}

fn run_transport<T, U>(checks: &mut Checks, name: &str, d: &Poset<T>, p: &Poset<U>, d_max: usize) -> Result<()> {
    if p.len() > MAX_HIBI_POSET {
        checks.skip(name, format!("|P| = {} exceeds {MAX_HIBI_POSET}", p.len()));
        return Ok(());
    }
    let asl = asl_hilbert_function(d, d_max)?;
    let hibi = hibi_hilbert_function(p, d_max)?;
    let ok = asl.values == hibi.values && asl.dim == hibi.dim;
    checks.push(name, ok, format!("H = {:?}", asl.values));
    Ok(())
}

fn run_hibi_checks<T>(checks: &mut Checks, p: &Poset<T>, d_max: usize) -> Result<()> {
    if p.len() <= A_INVARIANT_LIMIT {
        let a = a_invariant(p)?;
        checks.push(
            "a_invariant",
            a.agrees(),
            format!(
                "min interior degree {}, -(rank P + 2) = {}",
                a.min_degree, a.rank_formula
            ),
        );
    } else {
        checks.skip("a_invariant", format!("|P| = {} exceeds {A_INVARIANT_LIMIT}", p.len()));
    }
    if p.len() <= RECIPROCITY_LIMIT {
        let r = reciprocity_check(p, d_max.max(p.len() + 2))?;
        checks.push(
            "reciprocity",
            r.holds,
            format!("h = {:?}, h_K = {:?}", r.h, r.h_canonical),
        );
    } else {
        checks.skip("reciprocity", format!("|P| = {} exceeds {RECIPROCITY_LIMIT}", p.len()));
    }
    Ok(())
}

/// Runs every cross-check for one spec.
pub fn verify(spec: &ProblemSpec, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut checks = Checks::default();
    let oracle = theta_oracle(spec)?;

    let spread = analytic_spread(spec) + i64::from(opts.corrupt_formula);
    checks.eq("analytic_spread", spread, oracle.rank_theta + 1);
    checks.eq(
        "reduction_number",
        spread - (rank_p(spec) + 2),
        oracle.rank_theta + 1 - (oracle.rank_p + 2),
    );
    checks.eq(
        "reduction_number_by_terms",
        reduction_number_by_terms(spec),
        reduction_number(spec),
    );

    let d1 = build_side_lattice(spec, Side::Rows)?;
    let d2 = build_side_lattice(spec, Side::Columns)?;
    let p1 = join_irreducibles(&d1)?;
    let p2 = join_irreducibles(&d2)?;
    for (side, d, p) in [(Side::Rows, &d1, &p1), (Side::Columns, &d2, &p2)] {
        let (ok, detail) = minimal_elements_agree(spec, side, p);
        checks.push(format!("minimal_join_irreducibles_{side}"), ok, detail);
        checks.push(
            format!("join_irreducible_test_{side}"),
            positional_test_agrees(spec, side, d),
            format!("{} tuples", d.len()),
        );
        checks.push(
            format!("phi_{side}"),
            phi_properties(spec, side, p)?,
            format!("{} join-irreducibles", p.len()),
        );
    }

    match oracle.route {
        ThetaRoute::Materialized => {
            let theta = theta_from_factors(&d1, &d2)?;
            let p = join_irreducibles(&theta)?;
            checks.push(
                "theta_join_irreducibles_decompose",
                theta_join_irreducibles_decompose(spec, &p, &p1, &p2)?,
                format!("|P| = {} = {} + {}", p.len(), p1.len(), p2.len()),
            );
            if theta.len() <= BIRKHOFF_LIMIT {
                run_birkhoff(&mut checks, "birkhoff_theta", &theta)?;
            } else {
                run_birkhoff(&mut checks, "birkhoff_d1", &d1)?;
                run_birkhoff(&mut checks, "birkhoff_d2", &d2)?;
            }
            run_transport(&mut checks, "hilbert_transport", &theta, &p, opts.d_max)?;
            run_hibi_checks(&mut checks, &p, opts.d_max)?;
        }
        ThetaRoute::Factored => {
            checks.skip("theta_join_irreducibles_decompose", "Θ not materialized");
            run_birkhoff(&mut checks, "birkhoff_d1", &d1)?;
            run_birkhoff(&mut checks, "birkhoff_d2", &d2)?;
            // multichains in D_1 × D_2 and order-reversing maps on P_1 ⊔ P_2 both factor
            run_transport(&mut checks, "hilbert_transport_d1", &d1, &p1, opts.d_max)?;
            run_transport(&mut checks, "hilbert_transport_d2", &d2, &p2, opts.d_max)?;
            let p = p1.disjoint_union(&p2)?;
            run_hibi_checks(&mut checks, &p, opts.d_max)?;
        }
    }

    let passed = checks.0.iter().all(|c| c.status != CheckStatus::Fail);
    Ok(VerifyReport {
        route: oracle.route,
        checks: checks.0,
        passed,
    })
}

/// Strictly increasing `r`-subsets of `{1, ..., n}` in lexicographic order.
pub fn combinations(n: u32, r: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r as usize);
    fn go(start: u32, n: u32, r: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r as usize {
            out.push(cur.clone());
            return;
        }
        let need = r - cur.len() as u32;
        for x in start..=n.saturating_sub(need - 1) {
            if x == 0 {
                continue;
            }
            cur.push(x);
            go(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    if r <= n {
        go(1, n, r, &mut cur, &mut out);
    }
    out
}

/// Every valid spec with `m <= max_m` and `n <= max_n`, in a fixed order.
pub fn enumerate_specs(max_m: u32, max_n: u32) -> Vec<ProblemSpec> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            for r in 1..=m.min(n) {
                let bs = combinations(n, r);
                for a in combinations(m, r) {
                    for b in &bs {
                        for u in a[0]..=m {
                            let spec =
                                ProblemSpec::new(m, n, r, a.clone(), b.clone(), u).expect("enumerated tuple is valid");
                            out.push(spec);
                        }
                    }
                }
            }
        }
    }
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of valid specs, counted without enumerating: for each `(m, n, r)`,
/// `C(n, r)` column sequences times `Σ_j (m - j + 1) C(m - j, r - 1)` pairs of
/// a row sequence starting at `j` and a `u` in `[j, m]`.
pub fn count_specs(max_m: u32, max_n: u32) -> u64 {
    let mut total = 0;
    for m in 1..=max_m as u64 {
        for n in 1..=max_n as u64 {
            for r in 1..=m.min(n) {
                let rows: u64 = (1..=m).map(|j| (m - j + 1) * binomial(m - j, r - 1)).sum();
                total += rows * binomial(n, r);
            }
        }
    }
    total
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepFailure {
    pub spec: ProblemSpec,
    pub checks: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SpecOutcome {
    pub failed: Vec<String>,
    pub literal_index_set_differs: bool,
    pub theta_size: usize,
    pub birkhoff_checked: bool,
}

/// The cheap subset of [`verify`]: closed forms against ranks computed on
/// the materialized Θ, minimal join-irreducibles, and Birkhoff duality for
/// small Θ.
pub fn sweep_check(spec: &ProblemSpec) -> Result<SpecOutcome> {
    let mut failed = Vec::new();
    let d1 = build_side_lattice(spec, Side::Rows)?;
    let d2 = build_side_lattice(spec, Side::Columns)?;
    let theta = theta_from_factors(&d1, &d2)?;
    let p = join_irreducibles(&theta)?;
    let ell = theta.rank() + 1;
    if analytic_spread(spec) != ell {
        failed.push("analytic_spread".to_string());
    }
    if reduction_number(spec) != ell - (p.rank() + 2) {
        failed.push("reduction_number".to_string());
    }
    for (side, d) in [(Side::Rows, &d1), (Side::Columns, &d2)] {
        let pside = join_irreducibles(d)?;
        if !minimal_elements_agree(spec, side, &pside).0 {
            failed.push(format!("minimal_join_irreducibles_{side}"));
        }
    }
    let birkhoff_checked = theta.len() <= BIRKHOFF_LIMIT;
    if birkhoff_checked && !birkhoff_check(&theta)?.is_isomorphism {
        failed.push("birkhoff_theta".to_string());
    }
    let literal_index_set_differs = formula_report(spec).literal_index_set_differs;
    Ok(SpecOutcome {
        failed,
        literal_index_set_differs,
        theta_size: theta.len(),
        birkhoff_checked,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub max_m: u32,
    pub max_n: u32,
    pub spec_count: usize,
    pub expected_spec_count: u64,
    pub birkhoff_checked: usize,
    pub literal_index_set_disagreements: usize,
    pub largest_theta: usize,
    pub failures: usize,
    pub first_failure: Option<SweepFailure>,
    pub passed: bool,
}

/// Runs [`sweep_check`] on every spec up to the bounds, on `jobs` worker
/// threads. Results are gathered in enumeration order, so the summary does
/// not depend on `jobs`.
pub fn sweep(max_m: u32, max_n: u32, jobs: usize) -> Result<SweepSummary> {
    let specs = enumerate_specs(max_m, max_n);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let outcomes: Vec<SpecOutcome> = pool.install(|| specs.par_iter().map(sweep_check).collect::<Result<Vec<_>>>())?;
    let mut failures = 0;
    let mut first_failure = None;
    for (spec, o) in specs.iter().zip(&outcomes) {
        if !o.failed.is_empty() {
            failures += 1;
            first_failure.get_or_insert_with(|| SweepFailure {
                spec: spec.clone(),
                checks: o.failed.clone(),
            });
        }
    }
    let expected_spec_count = count_specs(max_m, max_n);
    Ok(SweepSummary {
        max_m,
        max_n,
        spec_count: specs.len(),
        expected_spec_count,
        birkhoff_checked: outcomes.iter().filter(|o| o.birkhoff_checked).count(),
        literal_index_set_disagreements: outcomes.iter().filter(|o| o.literal_index_set_differs).count(),
        largest_theta: outcomes.iter().map(|o| o.theta_size).max().unwrap_or(0),
        failures,
        first_failure,
        passed: failures == 0 && specs.len() as u64 == expected_spec_count,
    })
}
