//! Closed forms for the analytic spread and the reduction number, and
//! their lattice-theoretic counterparts.
//!
//! The analytic spread is `dim K[Θ] = rank Θ + 1`. With every lattice
//! element in degree 1, the reduction number with respect to any minimal
//! reduction is `a(K[Θ]) + ℓ`, and the `a`-invariant of a Hibi ring is
//! `-(rank P + 2)` for `P` the join-irreducibles of Θ.

use serde::Serialize;

use crate::error::Result;
use crate::minors::{
    build_d1, build_d2, coheight_formula, join_irreducibles, l_indices, literal_l_indices, theta_from_factors,
};
use crate::poset::MAX_POSET_SIZE;
use crate::spec::{ProblemSpec, Side};

/// `k(u + n - k + 1) - Σ_{i<=k} (a_i + b_i) + 1`.
pub fn analytic_spread(spec: &ProblemSpec) -> i64 {
    let k = spec.k() as i64;
    let u = spec.u() as i64;
    let n = spec.n() as i64;
    let sum: i64 = spec
        .lower(Side::Rows)
        .iter()
        .chain(spec.lower(Side::Columns))
        .map(|&x| x as i64)
        .sum();
    k * (u + n - k + 1) - sum + 1
}

/// `rank P` from the coheight formula: the largest
/// `bound - k - s_l + 2l - 2` over both sides' index sets, `-1` if both
/// are empty.
pub fn rank_p(spec: &ProblemSpec) -> i64 {
    Side::BOTH
        .iter()
        .flat_map(|&side| {
            l_indices(spec, side)
                .indices
                .into_iter()
                .map(move |l| coheight_formula(spec, side, l))
        })
        .max()
        .unwrap_or(-1)
}

/// `ℓ - (rank P + 2)`.
pub fn reduction_number(spec: &ProblemSpec) -> i64 {
    analytic_spread(spec) - (rank_p(spec) + 2)
}

/// `ℓ - max{bound - k - s_l + 2l}` over both index sets, taking the max of
/// an empty set as 1 so that the singleton case yields `ℓ - 1`.
pub fn reduction_number_by_terms(spec: &ProblemSpec) -> i64 {
    let k = spec.k() as i64;
    let max_term = Side::BOTH
        .iter()
        .flat_map(|&side| {
            let s = spec.lower(side);
            let bound = spec.bound(side) as i64;
            l_indices(spec, side)
                .indices
                .into_iter()
                .map(move |l| bound - k - s[l - 1] as i64 + 2 * l as i64)
        })
        .max()
        .unwrap_or(1);
    analytic_spread(spec) - max_term
}

/// How Θ was handled by the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaRoute {
    /// Θ built as an explicit poset; ranks read off it and its
    /// join-irreducible subposet.
    Materialized,
    /// Θ too large for an order matrix; ranks taken from the factors via
    /// `rank(D_1 × D_2) = rank D_1 + rank D_2` and
    /// `rank(P_1 ⊔ P_2) = max(rank P_1, rank P_2)`.
    Factored,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaOracle {
    pub route: ThetaRoute,
    pub rank_theta: i64,
    pub rank_p: i64,
    pub size_d1: usize,
    pub size_d2: usize,
    pub size_theta: usize,
    pub size_p1: usize,
    pub size_p2: usize,
}

/// Ranks of Θ and of its join-irreducible poset, computed from posets.
pub fn theta_oracle(spec: &ProblemSpec) -> Result<ThetaOracle> {
    let d1 = build_d1(spec)?;
    let d2 = build_d2(spec)?;
    let p1 = join_irreducibles(&d1)?;
    let p2 = join_irreducibles(&d2)?;
    let size_theta = d1.len() * d2.len();
    let (route, rank_theta, rank_p) = if size_theta <= MAX_POSET_SIZE {
        let theta = theta_from_factors(&d1, &d2)?;
        let p = join_irreducibles(&theta)?;
        (ThetaRoute::Materialized, theta.rank(), p.rank())
    } else {
        let union = p1.disjoint_union(&p2)?;
        (ThetaRoute::Factored, d1.rank() + d2.rank(), union.rank())
    };
    Ok(ThetaOracle {
        route,
        rank_theta,
        rank_p,
        size_d1: d1.len(),
        size_d2: d2.len(),
        size_theta,
        size_p1: p1.len(),
        size_p2: p2.len(),
    })
}

/// `rank Θ + 1`.
pub fn analytic_spread_oracle(spec: &ProblemSpec) -> Result<i64> {
    Ok(theta_oracle(spec)?.rank_theta + 1)
}

/// `(rank Θ + 1) - (rank P + 2)`.
pub fn reduction_number_oracle(spec: &ProblemSpec) -> Result<i64> {
    let o = theta_oracle(spec)?;
    Ok(o.rank_theta + 1 - (o.rank_p + 2))
}

/// Closed-form values only.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaReport {
    pub k: usize,
    pub analytic_spread: i64,
    pub reduction_number: i64,
    pub rank_p: i64,
    pub row_l_indices: Vec<usize>,
    pub column_l_indices: Vec<usize>,
    /// Whether the index sets as displayed in the closed form (using
    /// `a_{k+1}`, `b_{k+1}`) differ from the ones used here.
    pub literal_index_set_differs: bool,
}

pub fn formula_report(spec: &ProblemSpec) -> FormulaReport {
    let rows = l_indices(spec, Side::Rows);
    let cols = l_indices(spec, Side::Columns);
    let literal_index_set_differs =
        literal_l_indices(spec, Side::Rows) != rows || literal_l_indices(spec, Side::Columns) != cols;
    FormulaReport {
        k: spec.k(),
        analytic_spread: analytic_spread(spec),
        reduction_number: reduction_number(spec),
        rank_p: rank_p(spec),
        row_l_indices: rows.indices,
        column_l_indices: cols.indices,
        literal_index_set_differs,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub route: ThetaRoute,
    pub analytic_spread: i64,
    pub reduction_number: i64,
    pub rank_theta: i64,
    pub rank_p: i64,
    pub size_d1: usize,
    pub size_d2: usize,
    pub size_theta: usize,
    pub size_p1: usize,
    pub size_p2: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Agreement {
    pub analytic_spread: bool,
    pub reduction_number: bool,
    pub rank_p: bool,
    pub reduction_number_by_terms: bool,
}

impl Agreement {
    pub fn all(&self) -> bool {
        self.analytic_spread && self.reduction_number && self.rank_p && self.reduction_number_by_terms
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub formula: FormulaReport,
    pub oracle: OracleReport,
    pub agreement: Agreement,
}

pub fn full_report(spec: &ProblemSpec) -> Result<InvariantReport> {
    let formula = formula_report(spec);
    let o = theta_oracle(spec)?;
    let oracle = OracleReport {
        route: o.route,
        analytic_spread: o.rank_theta + 1,
        reduction_number: o.rank_theta + 1 - (o.rank_p + 2),
        rank_theta: o.rank_theta,
        rank_p: o.rank_p,
        size_d1: o.size_d1,
        size_d2: o.size_d2,
        size_theta: o.size_theta,
        size_p1: o.size_p1,
        size_p2: o.size_p2,
    };
    let agreement = Agreement {
        analytic_spread: formula.analytic_spread == oracle.analytic_spread,
        reduction_number: formula.reduction_number == oracle.reduction_number,
        rank_p: formula.rank_p == oracle.rank_p,
        reduction_number_by_terms: reduction_number_by_terms(spec) == formula.reduction_number,
    };
    Ok(InvariantReport {
        formula,
        oracle,
        agreement,
    })
}
