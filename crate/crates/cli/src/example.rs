//! The worked example `u = 13, k = 8, a = [1,2,3,7,8,10,11,12]`, taken with
//! `b = a` and `n = m = 13`, recomputed and compared with its known values.

use serde::Serialize;

use minor_spread_core::invariants::{full_report, InvariantReport};
use minor_spread_core::minors::{
    build_d1, join_irreducibles, l_indices, literal_l_indices, minimal_join_irreducibles, RowTuple,
};
use minor_spread_core::{ProblemSpec, Side};

use crate::Failure;

const A: [u32; 8] = [1, 2, 3, 7, 8, 10, 11, 12];
const EXPECTED_K: usize = 8;
const EXPECTED_L: [usize; 3] = [3, 5, 8];
const EXPECTED_GAMMAS: [[u32; 8]; 3] = [
    [1, 2, 4, 7, 8, 10, 11, 12],
    [1, 2, 3, 7, 9, 10, 11, 12],
    [1, 2, 3, 7, 8, 10, 11, 13],
];
const EXPECTED_COHEIGHTS: [i64; 3] = [6, 5, 7];
const EXPECTED_RANK_P1: i64 = 7;
const EXPECTED_SPREAD: i64 = 45;
const EXPECTED_REDUCTION: i64 = 36;

#[derive(Serialize)]
pub struct MinimalEntry {
    pub tuple: RowTuple,
    pub coheight_formula: i64,
    pub coheight_poset: i64,
}

#[derive(Serialize)]
pub struct ExampleOutcome {
    pub spec: ProblemSpec,
    pub k: usize,
    pub v: usize,
    pub l_indices: Vec<usize>,
    pub literal_l_indices: Vec<usize>,
    pub minimal_join_irreducibles: Vec<MinimalEntry>,
    pub size_d1: usize,
    pub size_p1: usize,
    pub rank_p1: i64,
    pub report: InvariantReport,
    pub drift: Vec<String>,
    pub self_check_passed: bool,
}

pub fn run() -> Result<ExampleOutcome, Failure> {
    let spec = ProblemSpec::new(13, 13, 8, A.to_vec(), A.to_vec(), 13)?;
    let d1 = build_d1(&spec)?;
    let p1 = join_irreducibles(&d1)?;
    let l = l_indices(&spec, Side::Rows);
    let literal = literal_l_indices(&spec, Side::Rows);
    let minimal: Vec<MinimalEntry> = minimal_join_irreducibles(&spec, Side::Rows)
        .into_iter()
        .map(|(tuple, coheight_formula)| {
            let coheight_poset = p1.coheight(&tuple).unwrap_or(-1);
            MinimalEntry {
                tuple,
                coheight_formula,
                coheight_poset,
            }
        })
        .collect();
    let report = full_report(&spec)?;

    let mut drift = Vec::new();
    let mut expect = |name: &str, ok: bool| {
        if !ok {
            drift.push(name.to_string());
        }
    };
    expect("k", spec.k() == EXPECTED_K);
    expect("l_indices", l.indices == EXPECTED_L && literal.indices == EXPECTED_L);
    let gammas: Vec<Vec<u32>> = minimal.iter().map(|e| e.tuple.entries().to_vec()).collect();
    expect(
        "minimal_join_irreducibles",
        gammas == EXPECTED_GAMMAS.map(|g| g.to_vec()),
    );
    let mut poset_minimal: Vec<&RowTuple> = p1.minimal_elements();
    poset_minimal.sort();
    let mut formula_minimal: Vec<&RowTuple> = minimal.iter().map(|e| &e.tuple).collect();
    formula_minimal.sort();
    expect("poset_minimal_elements", poset_minimal == formula_minimal);
    expect(
        "coheights",
        minimal.iter().map(|e| e.coheight_formula).eq(EXPECTED_COHEIGHTS)
            && minimal.iter().map(|e| e.coheight_poset).eq(EXPECTED_COHEIGHTS),
    );
    expect("rank_p1", p1.rank() == EXPECTED_RANK_P1);
    expect("analytic_spread", report.formula.analytic_spread == EXPECTED_SPREAD);
    expect(
        "reduction_number",
        report.formula.reduction_number == EXPECTED_REDUCTION,
    );
    expect("agreement", report.agreement.all());

    Ok(ExampleOutcome {
        k: spec.k(),
        v: l.v(),
        l_indices: l.indices,
        literal_l_indices: literal.indices,
        minimal_join_irreducibles: minimal,
        size_d1: d1.len(),
        size_p1: p1.len(),
        rank_p1: p1.rank(),
        report,
        self_check_passed: drift.is_empty(),
        drift,
        spec,
    })
}
