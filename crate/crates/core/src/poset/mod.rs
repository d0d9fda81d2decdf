//! Finite posets stored as an explicit order matrix.
//!
//! Elements are kept sorted by their `Ord` so every traversal, table and
//! rendering is deterministic. Row `x` of the matrix is the up-set of `x`
//! (every `y` with `x <= y`), and the cover relation is derived once at
//! construction.

mod dot;
mod ideals;
mod lattice;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::PosetError;

pub use ideals::DownSet;
pub use lattice::LatticeCheckResult;

/// Largest poset for which an order matrix is materialized.
pub const MAX_POSET_SIZE: usize = 4096;

#[derive(Clone, Debug)]
pub struct Poset<T> {
    elements: Vec<T>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
}

/// Element of a disjoint union.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sum<A, B> {
    Left(A),
    Right(B),
}

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Sum<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sum::Left(a) => write!(f, "1:{a}"),
            Sum::Right(b) => write!(f, "2:{b}"),
        }
    }
}

/// Relation between two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl<T: Ord + Clone + fmt::Display> Poset<T> {
    /// Builds a poset from distinct elements and an order predicate.
    ///
    /// The predicate is checked for reflexivity, antisymmetry and
    /// transitivity; a bad generator is reported with the offending
    /// elements.
    pub fn build<F>(elements: Vec<T>, leq: F) -> Result<Self, PosetError>
    where
        F: Fn(&T, &T) -> bool,
    {
        let mut elements = elements;
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::DuplicateElement(w[0].to_string()));
        }
        check_size(elements.len())?;
        let n = elements.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                if leq(x, y) {
                    up[i].insert(j);
                }
            }
        }
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(PosetError::ReflexivityViolation(elements[i].to_string()));
            }
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(PosetError::AntisymmetryViolation {
                        x: elements[i].to_string(),
                        y: elements[j].to_string(),
                    });
                }
                if !up[j].is_subset(&up[i]) {
                    let k = up[j].difference(&up[i]).next().expect("nonempty difference");
                    return Err(PosetError::TransitivityViolation {
                        x: elements[i].to_string(),
                        y: elements[j].to_string(),
                        z: elements[k].to_string(),
                    });
                }
            }
        }
        Ok(Self::from_up_sets(elements, up))
    }

    /// Totally ordered poset on the given elements, in their `Ord` order.
    pub fn chain(elements: Vec<T>) -> Result<Self, PosetError> {
        Self::build(elements, |x, y| x <= y)
    }

    /// Poset with no relations besides equality.
    pub fn antichain(elements: Vec<T>) -> Result<Self, PosetError> {
        Self::build(elements, |x, y| x == y)
    }

    pub fn index_of(&self, x: &T) -> Result<usize, PosetError> {
        self.elements
            .binary_search(x)
            .map_err(|_| PosetError::UnknownElement(x.to_string()))
    }

    pub fn coheight(&self, x: &T) -> Result<i64, PosetError> {
        let i = self.index_of(x)?;
        Ok(self.coheights()[i])
    }

    pub fn height(&self, x: &T) -> Result<i64, PosetError> {
        let i = self.index_of(x)?;
        Ok(self.heights()[i])
    }

    /// Cartesian product with the componentwise order.
    pub fn product<U>(&self, other: &Poset<U>) -> Result<Poset<(T, U)>, PosetError>
    where
        U: Ord + Clone + fmt::Display,
    {
        let (n1, n2) = (self.len(), other.len());
        check_size(n1.saturating_mul(n2))?;
        let n = n1 * n2;
        let mut elements = Vec::with_capacity(n);
        let mut up = Vec::with_capacity(n);
        for i in 0..n1 {
            for j in 0..n2 {
                elements.push((self.elements[i].clone(), other.elements[j].clone()));
                let mut row = FixedBitSet::with_capacity(n);
                for i2 in self.up[i].ones() {
                    for j2 in other.up[j].ones() {
                        row.insert(i2 * n2 + j2);
                    }
                }
                up.push(row);
            }
        }
        Ok(Poset::from_up_sets(elements, up))
    }

    /// Disjoint union: no relations between the two components.
    pub fn disjoint_union<U>(&self, other: &Poset<U>) -> Result<Poset<Sum<T, U>>, PosetError>
    where
        U: Ord + Clone + fmt::Display,
    {
        let (n1, n2) = (self.len(), other.len());
        check_size(n1 + n2)?;
        let n = n1 + n2;
        let mut elements = Vec::with_capacity(n);
        let mut up = Vec::with_capacity(n);
        for i in 0..n1 {
            elements.push(Sum::Left(self.elements[i].clone()));
            let mut row = FixedBitSet::with_capacity(n);
            row.extend(self.up[i].ones());
            up.push(row);
        }
        for j in 0..n2 {
            elements.push(Sum::Right(other.elements[j].clone()));
            let mut row = FixedBitSet::with_capacity(n);
            row.extend(other.up[j].ones().map(|y| y + n1));
            up.push(row);
        }
        Ok(Poset::from_up_sets(elements, up))
    }

    /// Subposet induced on the given element indices.
    pub fn induced(&self, keep: &[usize]) -> Poset<T> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_of_old = vec![usize::MAX; self.len()];
        for (new, &old) in keep.iter().enumerate() {
            new_of_old[old] = new;
        }
        let n = keep.len();
        let up = keep
            .iter()
            .map(|&old| {
                let mut row = FixedBitSet::with_capacity(n);
                row.extend(
                    self.up[old]
                        .ones()
                        .filter(|&j| new_of_old[j] != usize::MAX)
                        .map(|j| new_of_old[j]),
                );
                row
            })
            .collect();
        let elements = keep.iter().map(|&i| self.elements[i].clone()).collect();
        Poset::from_up_sets(elements, up)
    }
}

impl<T: Clone> Poset<T> {
    /// Renames every element; the relation is carried over unchanged.
    /// `f` must be injective.
    pub fn map_elements<U, F>(&self, f: F) -> Result<Poset<U>, PosetError>
    where
        U: Ord + Clone + fmt::Display,
        F: Fn(&T) -> U,
    {
        let mapped: Vec<U> = self.elements.iter().map(&f).collect();
        let mut perm: Vec<usize> = (0..mapped.len()).collect();
        perm.sort_by(|&i, &j| mapped[i].cmp(&mapped[j]));
        if let Some(w) = perm.windows(2).find(|w| mapped[w[0]] == mapped[w[1]]) {
            return Err(PosetError::DuplicateElement(mapped[w[0]].to_string()));
        }
        // perm[new] = old
        let mut new_of_old = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_of_old[old] = new;
        }
        let n = perm.len();
        let up = perm
            .iter()
            .map(|&old| {
                let mut row = FixedBitSet::with_capacity(n);
                for j in self.up[old].ones() {
                    row.insert(new_of_old[j]);
                }
                row
            })
            .collect();
        let elements = perm.iter().map(|&old| mapped[old].clone()).collect();
        Ok(Poset::from_up_sets(elements, up))
    }

    /// Assembles a poset from up-sets already known to form a partial
    /// order on `elements` (sorted, distinct).
    fn from_up_sets(elements: Vec<T>, up: Vec<FixedBitSet>) -> Self {
        let n = elements.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict = up[x].clone();
            strict.set(x, false);
            for z in strict.ones() {
                // z covers x iff nothing strictly above x lies strictly below z
                if down[z].intersection(&strict).take(2).count() == 1 {
                    upper_covers[x].push(z);
                    lower_covers[z].push(x);
                }
            }
        }
        Self {
            elements,
            up,
            down,
            lower_covers,
            upper_covers,
        }
    }
}

impl<T> Poset<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn compare(&self, i: usize, j: usize) -> Comparison {
        match (self.leq(i, j), self.leq(j, i)) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Less,
            (false, true) => Comparison::Greater,
            (false, false) => Comparison::Incomparable,
        }
    }

    /// Indices `j` with `i <= j`.
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// Indices `j` with `j <= i`.
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    /// Cover pairs `(x, y)` with `x ⋖ y`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Recomputes the transitive reduction directly from the order matrix.
    pub fn transitive_reduction(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.up[x].ones() {
                if y == x {
                    continue;
                }
                let between = (0..n).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].count_ones(..), i));
        order
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<i64> {
        let mut h = vec![0i64; self.len()];
        for x in self.linear_extension() {
            h[x] = self.lower_covers[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Length of the longest chain starting at each element.
    pub fn coheights(&self) -> Vec<i64> {
        let mut h = vec![0i64; self.len()];
        for x in self.linear_extension().into_iter().rev() {
            h[x] = self.upper_covers[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Length in edges of the longest chain; `-1` for the empty poset.
    pub fn rank(&self) -> i64 {
        self.heights().into_iter().max().unwrap_or(-1)
    }

    pub fn minimal_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower_covers[i].is_empty()).collect()
    }

    pub fn maximal_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper_covers[i].is_empty()).collect()
    }

    pub fn minimal_elements(&self) -> Vec<&T> {
        self.minimal_indices().into_iter().map(|i| &self.elements[i]).collect()
    }

    pub fn maximal_elements(&self) -> Vec<&T> {
        self.maximal_indices().into_iter().map(|i| &self.elements[i]).collect()
    }

    /// Whether `map` (indexed by element of `self`) is an order isomorphism
    /// onto `other`.
    pub fn is_isomorphism_onto<U>(&self, other: &Poset<U>, map: &[usize]) -> bool {
        if map.len() != self.len() || other.len() != self.len() {
            return false;
        }
        let mut hit = vec![false; other.len()];
        for &y in map {
            if y >= other.len() || std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq(i, j) == other.leq(map[i], map[j])))
    }
}

fn check_size(n: usize) -> Result<(), PosetError> {
    if n > MAX_POSET_SIZE {
        Err(PosetError::TooLarge {
            size: n,
            limit: MAX_POSET_SIZE,
        })
    } else {
        Ok(())
    }
}
