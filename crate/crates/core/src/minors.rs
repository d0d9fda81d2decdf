//! The lattice Θ of `k`-minors between `[a_1..a_k | b_1..b_k]` and
//! `[u-k+1..u | n-k+1..n]`, its row and column factors `D_1`, `D_2`, and
//! their join-irreducible posets `P_1`, `P_2`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, PosetError, Result};
use crate::poset::{Poset, Sum, MAX_POSET_SIZE};
use crate::spec::{ProblemSpec, Side};

/// Strictly increasing 1-based index tuple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct RowTuple(Vec<u32>);

impl RowTuple {
    pub fn new(entries: Vec<u32>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0] < w[1]));
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise order.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(x, y)| x <= y)
    }
}

impl fmt::Display for RowTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A `k`-minor `[rows | cols]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Minor {
    pub rows: RowTuple,
    pub cols: RowTuple,
}

impl fmt::Display for Minor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows.to_string();
        let cols = self.cols.to_string();
        write!(f, "{}|{}", &rows[..rows.len() - 1], &cols[1..])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct JoinIrredProfile {
    /// 1-based position of the unique raisable entry.
    pub pivot: usize,
    pub p: i64,
    pub q: i64,
}

/// Positions whose single-step increment of the bottom tuple stays inside
/// the lattice on one side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LIndexSet {
    pub side: Side,
    pub indices: Vec<usize>,
}

impl LIndexSet {
    pub fn v(&self) -> usize {
        self.indices.len()
    }
}

fn bottom_tuple(spec: &ProblemSpec, side: Side) -> RowTuple {
    RowTuple::new(spec.lower(side).to_vec())
}

fn top_tuple(spec: &ProblemSpec, side: Side) -> RowTuple {
    let k = spec.k() as u32;
    let bound = spec.bound(side);
    RowTuple::new((1..=k).map(|i| bound - k + i).collect())
}

/// All `c_1 < ... < c_k <= bound` with `c_i >= lower_i`, in lexicographic
/// order.
pub fn side_tuples(spec: &ProblemSpec, side: Side) -> Result<Vec<RowTuple>> {
    let lower = spec.lower(side);
    let k = lower.len();
    let bound = spec.bound(side);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fill(lower, bound, &mut current, &mut out)?;
    return Ok(out);

    fn fill(lower: &[u32], bound: u32, cur: &mut Vec<u32>, out: &mut Vec<RowTuple>) -> Result<()> {
        let k = lower.len();
        let i = cur.len();
        if i == k {
            if out.len() == MAX_POSET_SIZE {
                return Err(PosetError::TooLarge {
                    size: MAX_POSET_SIZE + 1,
                    limit: MAX_POSET_SIZE,
                }
                .into());
            }
            out.push(RowTuple::new(cur.clone()));
            return Ok(());
        }
        let from = cur.last().map_or(lower[i], |&c| lower[i].max(c + 1));
        let to = bound - (k - 1 - i) as u32;
        for c in from..=to {
            cur.push(c);
            fill(lower, bound, cur, out)?;
            cur.pop();
        }
        Ok(())
    }
}

/// `D_1` (rows) or `D_2` (columns) under the componentwise order.
pub fn build_side_lattice(spec: &ProblemSpec, side: Side) -> Result<Poset<RowTuple>> {
    let tuples = side_tuples(spec, side)?;
    Ok(Poset::build(tuples, RowTuple::le)?)
}

pub fn build_d1(spec: &ProblemSpec) -> Result<Poset<RowTuple>> {
    build_side_lattice(spec, Side::Rows)
}

pub fn build_d2(spec: &ProblemSpec) -> Result<Poset<RowTuple>> {
    build_side_lattice(spec, Side::Columns)
}

/// Θ as the product `D_1 × D_2`.
pub fn build_theta(spec: &ProblemSpec) -> Result<Poset<Minor>> {
    let d1 = build_d1(spec)?;
    let d2 = build_d2(spec)?;
    theta_from_factors(&d1, &d2)
}

pub fn theta_from_factors(d1: &Poset<RowTuple>, d2: &Poset<RowTuple>) -> Result<Poset<Minor>> {
    let product = d1.product(d2)?;
    Ok(product.map_elements(|(rows, cols)| Minor {
        rows: rows.clone(),
        cols: cols.clone(),
    })?)
}

/// Induced subposet on the elements with exactly one lower cover.
pub fn join_irreducibles<T>(d: &Poset<T>) -> Result<Poset<T>, PosetError>
where
    T: Ord + Clone + fmt::Display,
{
    if !d.is_lattice() {
        return Err(PosetError::NotALattice);
    }
    let keep: Vec<usize> = (0..d.len()).filter(|&i| d.lower_covers(i).len() == 1).collect();
    Ok(d.induced(&keep))
}

/// Positional join-irreducibility test: `Some(i)` when exactly one `i`
/// has `c_i > a_i` and `c_i > c_{i-1} + 1` (vacuous for `i = 1`).
pub fn join_irreducible_test(t: &RowTuple, spec: &ProblemSpec, side: Side) -> Option<usize> {
    let lower = spec.lower(side);
    let c = t.entries();
    let mut pivots = (0..c.len()).filter(|&i| c[i] > lower[i] && (i == 0 || c[i] > c[i - 1] + 1));
    match (pivots.next(), pivots.next()) {
        (Some(i), None) => Some(i + 1),
        _ => None,
    }
}

/// Coordinates `(p, q) = (bound - c_i - (k - i), i - 1)` of a
/// join-irreducible tuple with pivot `i`.
pub fn phi(t: &RowTuple, spec: &ProblemSpec, side: Side) -> Result<JoinIrredProfile> {
    let i = join_irreducible_test(t, spec, side).ok_or_else(|| Error::NotJoinIrreducible(t.to_string()))?;
    let k = spec.k() as i64;
    let c_i = t.entries()[i - 1] as i64;
    let bound = spec.bound(side) as i64;
    Ok(JoinIrredProfile {
        pivot: i,
        p: bound - c_i - (k - i as i64),
        q: i as i64 - 1,
    })
}

/// Indices `l` for which raising the `l`-th entry of the bottom tuple by one
/// stays admissible: `s_l + 1 < s_{l+1}` for `l < k`, and `s_k < bound` for
/// `l = k`.
pub fn l_indices(spec: &ProblemSpec, side: Side) -> LIndexSet {
    let s = spec.lower(side);
    let k = s.len();
    let bound = spec.bound(side);
    let indices = (1..=k)
        .filter(|&l| if l < k { s[l - 1] + 1 < s[l] } else { s[k - 1] < bound })
        .collect();
    LIndexSet { side, indices }
}

/// The index set exactly as displayed in the closed form:
/// `{i <= k | s_i + 1 < s_{i+1}, s_i < bound}` over the full sequence, with
/// `s_{r+1} = ambient + 1`. Differs from [`l_indices`] on the column side
/// when `k < r` and `b_{k+1} = b_k + 1 < n + 1`.
pub fn literal_l_indices(spec: &ProblemSpec, side: Side) -> LIndexSet {
    let s = spec.sequence(side);
    let next = |i: usize| s.get(i).copied().unwrap_or(spec.ambient(side) + 1);
    let bound = spec.bound(side);
    let indices = (1..=spec.k())
        .filter(|&i| s[i - 1] + 1 < next(i) && s[i - 1] < bound)
        .collect();
    LIndexSet { side, indices }
}

/// Coheight in `P_1` (or `P_2`) of the minimal join-irreducible raised at
/// position `l`: `bound - k - s_l + 2l - 2`.
pub fn coheight_formula(spec: &ProblemSpec, side: Side, l: usize) -> i64 {
    spec.bound(side) as i64 - spec.k() as i64 - spec.lower(side)[l - 1] as i64 + 2 * l as i64 - 2
}

/// Minimal join-irreducibles with their coheights, from the index set alone.
pub fn minimal_join_irreducibles(spec: &ProblemSpec, side: Side) -> Vec<(RowTuple, i64)> {
    let lower = spec.lower(side);
    l_indices(spec, side)
        .indices
        .into_iter()
        .map(|l| {
            let mut c = lower.to_vec();
            c[l - 1] += 1;
            (RowTuple::new(c), coheight_formula(spec, side, l))
        })
        .collect()
}

/// Checks that the join-irreducibles of Θ are exactly the pairs
/// `(x, bottom_2)` with `x ∈ P_1` and `(bottom_1, y)` with `y ∈ P_2`, and that
/// this pairing is an order isomorphism onto `P_1 ⊔ P_2`.
pub fn theta_join_irreducibles_decompose(
    spec: &ProblemSpec,
    theta_ji: &Poset<Minor>,
    p1: &Poset<RowTuple>,
    p2: &Poset<RowTuple>,
) -> Result<bool> {
    let union = p1.disjoint_union(p2)?;
    let bottom1 = bottom_tuple(spec, Side::Rows);
    let bottom2 = bottom_tuple(spec, Side::Columns);
    let mut map = Vec::with_capacity(theta_ji.len());
    for g in theta_ji.elements() {
        let image = if g.cols == bottom2 {
            Sum::Left(g.rows.clone())
        } else if g.rows == bottom1 {
            Sum::Right(g.cols.clone())
        } else {
            return Ok(false);
        };
        match union.index_of(&image) {
            Ok(i) => map.push(i),
            Err(_) => return Ok(false),
        }
    }
    Ok(theta_ji.is_isomorphism_onto(&union, &map))
}

/// Bottom and top of `D_1` or `D_2`.
pub fn side_bounds(spec: &ProblemSpec, side: Side) -> (RowTuple, RowTuple) {
    (bottom_tuple(spec, side), top_tuple(spec, side))
}
