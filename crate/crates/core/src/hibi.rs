//! Independent checks through Birkhoff duality and the Hibi ring.
//!
//! For a finite distributive lattice `D` with join-irreducible poset `P`,
//! the Hibi ring is the semigroup ring of
//! `M = {(n_α) on P ∪ {-∞} : α <= β ⇒ n_α >= n_β}`, graded by `n_{-∞}`.
//! Its canonical module is spanned by the interior points, where every
//! entry is positive and the inequalities are strict. Everything here is
//! exact integer counting: no floating point.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, PosetError, Result};
use crate::minors::join_irreducibles;
use crate::poset::Poset;

/// Largest poset handled by the counting routines.
pub const MAX_HIBI_POSET: usize = 64;

/// A point of the monoid `M`. `values[i]` is `n_α` for the `i`-th element
/// of `P`; `top` is `n_{-∞}`, the degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidPoint {
    pub values: Vec<u32>,
    pub top: u32,
}

impl MonoidPoint {
    pub fn degree(&self) -> u32 {
        self.top
    }

    pub fn is_in_monoid<T>(&self, p: &Poset<T>) -> bool {
        self.values.len() == p.len()
            && self.values.iter().all(|&v| v <= self.top)
            && p.covers().iter().all(|&(x, y)| self.values[x] >= self.values[y])
    }

    pub fn is_interior<T>(&self, p: &Poset<T>) -> bool {
        self.values.len() == p.len()
            && self.top > 0
            && self.values.iter().all(|&v| v > 0 && v < self.top)
            && p.covers().iter().all(|&(x, y)| self.values[x] > self.values[y])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// `H(0), ..., H(d_max)`.
    pub values: Vec<u128>,
    pub dim: usize,
    /// Numerator of the Hilbert series over `(1 - λ)^dim`, when the values
    /// determine it.
    pub h_vector: Option<Vec<i128>>,
}

impl HilbertData {
    fn new(values: Vec<u128>, dim: usize) -> Self {
        let h_vector = fit_h_vector(&values, dim);
        Self { values, dim, h_vector }
    }
}

/// Multiplies `Σ H(d) λ^d` by `(1 - λ)^dim` through repeated first
/// differences. Returns `None` unless the values reach past degree `dim`
/// and every computed coefficient above `dim` vanishes.
pub fn fit_h_vector(values: &[u128], dim: usize) -> Option<Vec<i128>> {
    if values.len() <= dim {
        return None;
    }
    let mut c: Vec<i128> = values.iter().map(|&v| i128::try_from(v).ok()).collect::<Option<_>>()?;
    for _ in 0..dim {
        for j in (1..c.len()).rev() {
            c[j] = c[j].checked_sub(c[j - 1])?;
        }
    }
    if c[dim + 1..].iter().any(|&x| x != 0) {
        return None;
    }
    c.truncate(dim + 1);
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    Some(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct BirkhoffWitness {
    /// For each lattice element, the indices (into the join-irreducible
    /// subposet) of the join-irreducibles below it.
    pub images: Vec<Vec<usize>>,
    pub join_irreducible_count: usize,
    pub ideal_count: usize,
    pub is_isomorphism: bool,
}

/// Verifies that `x ↦ {join-irreducibles <= x}` is an order isomorphism
/// from `d` onto the down-sets of its join-irreducible poset.
pub fn birkhoff_check<T>(d: &Poset<T>) -> Result<BirkhoffWitness>
where
    T: Ord + Clone + fmt::Display,
{
    let check = d.check_distributive_lattice();
    if !check.is_lattice {
        return Err(PosetError::NotALattice.into());
    }
    if !check.is_distributive {
        return Err(PosetError::NotDistributive.into());
    }
    let ji: Vec<usize> = (0..d.len()).filter(|&i| d.lower_covers(i).len() == 1).collect();
    let p = join_irreducibles(d)?;
    let images: Vec<FixedBitSet> = (0..d.len())
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(p.len());
            s.extend(ji.iter().enumerate().filter(|&(_, &j)| d.leq(j, x)).map(|(pi, _)| pi));
            s
        })
        .collect();
    let ideals = match p.poset_ideals_bounded(usize::MAX, Some(d.len())) {
        Ok(ideals) => Some(ideals),
        Err(PosetError::SizeBoundExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let ideal_count = ideals.as_ref().map_or(d.len() + 1, Vec::len);
    let mut sorted_images: Vec<Vec<usize>> = images.iter().map(|s| s.ones().collect()).collect();
    let witness_images = sorted_images.clone();
    sorted_images.sort();
    let distinct = sorted_images.windows(2).all(|w| w[0] != w[1]);
    let onto = ideals.is_some_and(|ideals| {
        let mut targets: Vec<Vec<usize>> = ideals.iter().map(|s| s.ones().collect()).collect();
        targets.sort();
        targets == sorted_images
    });
    let monotone = (0..d.len()).all(|x| (0..d.len()).all(|y| d.leq(x, y) == images[x].is_subset(&images[y])));
    Ok(BirkhoffWitness {
        images: witness_images,
        join_irreducible_count: p.len(),
        ideal_count,
        is_isomorphism: distinct && onto && monotone,
    })
}

/// Counts maps `f: P -> [lo, hi]` with `α < β ⇒ f(α) >= f(β)` (strictly
/// greater when `strict`), by dynamic programming along a linear extension.
/// The state at each step is the values of the already-placed elements that
/// still have an unplaced upper cover.
fn count_order_reversing<T>(p: &Poset<T>, lo: u32, hi: u32, strict: bool) -> Result<u128> {
    if p.is_empty() {
        return Ok(1);
    }
    if hi < lo {
        return Ok(0);
    }
    // counts over a disjoint union multiply
    let mut total: u128 = 1;
    for component in components(p) {
        let c = count_connected(p, &component, lo, hi, strict)?;
        total = total.checked_mul(c).ok_or(Error::CountOverflow)?;
        if total == 0 {
            break;
        }
    }
    Ok(total)
}

/// Connected components of the comparability graph, each in linear
/// extension order.
fn components<T>(p: &Poset<T>) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        label[start] = count;
        while let Some(x) = stack.pop() {
            for &y in p.lower_covers(x).iter().chain(p.upper_covers(x)) {
                if label[y] == usize::MAX {
                    label[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    let mut out = vec![Vec::new(); count];
    for x in p.linear_extension() {
        out[label[x]].push(x);
    }
    out
}

fn count_connected<T>(p: &Poset<T>, order: &[usize], lo: u32, hi: u32, strict: bool) -> Result<u128> {
    let order = order.to_vec();
    let n = order.len();
    let mut pos = vec![0; p.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let last_use: Vec<Option<usize>> = (0..p.len())
        .map(|x| p.upper_covers(x).iter().map(|&y| pos[y]).max())
        .collect();
    // active[i]: elements placed before step i that are still needed at step i
    let active: Vec<Vec<usize>> = (0..=n)
        .map(|i| {
            order[..i]
                .iter()
                .copied()
                .filter(|&x| last_use[x].is_some_and(|l| l >= i))
                .collect()
        })
        .collect();

    struct Dp<'a, T> {
        p: &'a Poset<T>,
        order: Vec<usize>,
        active: Vec<Vec<usize>>,
        lo: u32,
        hi: u32,
        strict: bool,
        values: Vec<u32>,
        memo: HashMap<(usize, Vec<u32>), u128>,
    }

    impl<T> Dp<'_, T> {
        fn run(&mut self, i: usize) -> Result<u128> {
            if i == self.order.len() {
                return Ok(1);
            }
            let key = (i, self.active[i].iter().map(|&x| self.values[x]).collect::<Vec<_>>());
            if let Some(&c) = self.memo.get(&key) {
                return Ok(c);
            }
            let x = self.order[i];
            let mut upper = self.hi;
            for &y in self.p.lower_covers(x) {
                let cap = if self.strict {
                    match self.values[y].checked_sub(1) {
                        Some(c) => c,
                        None => {
                            self.memo.insert(key, 0);
                            return Ok(0);
                        }
                    }
                } else {
                    self.values[y]
                };
                upper = upper.min(cap);
            }
            let mut total: u128 = 0;
            if upper >= self.lo {
                for v in self.lo..=upper {
                    self.values[x] = v;
                    let c = self.run(i + 1)?;
                    total = total.checked_add(c).ok_or(Error::CountOverflow)?;
                }
            }
            self.memo.insert(key, total);
            Ok(total)
        }
    }

    let mut dp = Dp {
        p,
        order,
        active,
        lo,
        hi,
        strict,
        values: vec![0; p.len()],
        memo: HashMap::new(),
    };
    dp.run(0)
}

fn check_hibi_size<T>(p: &Poset<T>) -> Result<()> {
    if p.len() > MAX_HIBI_POSET {
        return Err(PosetError::SizeBoundExceeded {
            size: p.len(),
            bound: MAX_HIBI_POSET,
        }
        .into());
    }
    Ok(())
}

/// `H(d)` = number of monoid points of degree `d` = number of
/// order-reversing maps `P -> {0, ..., d}`.
pub fn hibi_hilbert_function<T>(p: &Poset<T>, d_max: usize) -> Result<HilbertData> {
    check_hibi_size(p)?;
    let values = (0..=d_max)
        .map(|d| count_order_reversing(p, 0, d as u32, false))
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertData::new(values, p.len() + 1))
}

/// `H(t)` = number of multichains `x_1 <= ... <= x_t` in the lattice, the
/// standard-monomial count of an ASL on `d` with every element in degree 1.
pub fn asl_hilbert_function<T>(d: &Poset<T>, d_max: usize) -> Result<HilbertData> {
    let n = d.len();
    let mut values = Vec::with_capacity(d_max + 1);
    values.push(1u128);
    // ends[y] = number of multichains of the current length ending at y
    let mut ends = vec![1u128; n];
    for t in 1..=d_max {
        if t > 1 {
            let mut next = vec![0u128; n];
            for (y, slot) in next.iter_mut().enumerate() {
                for x in d.down_set(y).ones() {
                    *slot = slot.checked_add(ends[x]).ok_or(Error::CountOverflow)?;
                }
            }
            ends = next;
        }
        let total = ends
            .iter()
            .try_fold(0u128, |acc, &c| acc.checked_add(c))
            .ok_or(Error::CountOverflow)?;
        values.push(total);
    }
    let dim = (d.rank() + 1).max(0) as usize;
    Ok(HilbertData::new(values, dim))
}

/// `H_K(d)` = number of interior monoid points of degree `d`: strictly
/// order-reversing maps `P -> {1, ..., d - 1}`, with `d >= 1`.
pub fn canonical_hilbert_function<T>(p: &Poset<T>, d_max: usize) -> Result<HilbertData> {
    check_hibi_size(p)?;
    let values = (0..=d_max)
        .map(|d| {
            if d == 0 {
                Ok(0)
            } else {
                count_order_reversing(p, 1, d as u32 - 1, true)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertData::new(values, p.len() + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct AInvariant {
    /// `-(least degree of an interior point)`, found by search.
    pub value: i64,
    pub min_degree: usize,
    /// Interior point `n_α = coheight(α) + 1`, `n_{-∞} = rank + 2`.
    pub witness: MonoidPoint,
    pub witness_is_interior: bool,
    /// `-(rank P + 2)`.
    pub rank_formula: i64,
}

impl AInvariant {
    pub fn agrees(&self) -> bool {
        self.witness_is_interior && self.value == self.rank_formula && self.witness.degree() as usize == self.min_degree
    }
}

/// Searches degrees upward for the first interior point; every smaller
/// degree is refuted by an exhaustive count.
pub fn a_invariant<T>(p: &Poset<T>) -> Result<AInvariant> {
    check_hibi_size(p)?;
    // a chain through all of P needs |P| + 2 levels, so the search ends there
    let ceiling = p.len() + 2;
    let mut min_degree = None;
    for d in 1..=ceiling {
        if count_order_reversing(p, 1, d as u32 - 1, true)? > 0 {
            min_degree = Some(d);
            break;
        }
    }
    let min_degree = min_degree.expect("interior point exists at degree |P| + 2");
    let rank = p.rank();
    let witness = MonoidPoint {
        values: p.coheights().iter().map(|&c| (c + 1) as u32).collect(),
        top: (rank + 2) as u32,
    };
    Ok(AInvariant {
        value: -(min_degree as i64),
        min_degree,
        witness_is_interior: witness.is_interior(p),
        witness,
        rank_formula: -(rank + 2),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReciprocityCheck {
    pub dim: usize,
    pub h: Vec<i128>,
    pub h_canonical: Vec<i128>,
    pub holds: bool,
}

/// Checks `h_K(λ) = λ^dim · h(1/λ)` for the Hibi ring of `p`, with
/// `dim = |P| + 1`.
pub fn reciprocity_check<T>(p: &Poset<T>, d_max: usize) -> Result<ReciprocityCheck> {
    let dim = p.len() + 1;
    if d_max < dim {
        return Err(Error::InsufficientPrecision { d_max, needed: dim });
    }
    let ring = hibi_hilbert_function(p, d_max)?;
    let canonical = canonical_hilbert_function(p, d_max)?;
    let (Some(h), Some(h_canonical)) = (ring.h_vector, canonical.h_vector) else {
        return Ok(ReciprocityCheck {
            dim,
            h: Vec::new(),
            h_canonical: Vec::new(),
            holds: false,
        });
    };
    let coeff = |v: &[i128], j: usize| v.get(j).copied().unwrap_or(0);
    let holds = (0..=dim).all(|j| coeff(&h_canonical, j) == coeff(&h, dim - j))
        && h.len() <= dim + 1
        && h_canonical.len() <= dim + 1;
    Ok(ReciprocityCheck {
        dim,
        h,
        h_canonical,
        holds,
    })
}
