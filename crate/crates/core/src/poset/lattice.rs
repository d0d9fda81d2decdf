use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::Poset;

#[derive(Clone, Debug, Serialize)]
pub struct LatticeCheckResult {
    pub is_lattice: bool,
    pub is_distributive: bool,
    /// `join_table[x][y]` is the index of `x ∨ y`; present only for lattices.
    pub join_table: Option<Vec<Vec<usize>>>,
    pub meet_table: Option<Vec<Vec<usize>>>,
}

impl<T> Poset<T> {
    /// Least element of `bounds` under the given row sets, if one exists.
    fn least_in(rows: &[FixedBitSet], counts: &[usize], bounds: &FixedBitSet) -> Option<usize> {
        let size = bounds.count_ones(..);
        bounds.ones().find(|&z| counts[z] == size && rows[z].is_subset(bounds))
    }

    fn binary_table(&self, rows: &[FixedBitSet]) -> Option<Vec<Vec<usize>>> {
        let n = self.len();
        let counts: Vec<usize> = rows.iter().map(|r| r.count_ones(..)).collect();
        let mut table = vec![vec![0; n]; n];
        for x in 0..n {
            for y in x..n {
                let mut bounds = rows[x].clone();
                bounds.intersect_with(&rows[y]);
                let z = Self::least_in(rows, &counts, &bounds)?;
                table[x][y] = z;
                table[y][x] = z;
            }
        }
        Some(table)
    }

    /// Join table (least upper bounds), or `None` if some pair has no join.
    pub fn join_table(&self) -> Option<Vec<Vec<usize>>> {
        self.binary_table(&self.up)
    }

    /// Meet table (greatest lower bounds), or `None` if some pair has no meet.
    pub fn meet_table(&self) -> Option<Vec<Vec<usize>>> {
        self.binary_table(&self.down)
    }

    /// A finite poset is a lattice when it is nonempty and all pairwise
    /// joins and meets exist.
    pub fn is_lattice(&self) -> bool {
        !self.is_empty() && self.join_table().is_some() && self.meet_table().is_some()
    }

    pub fn check_distributive_lattice(&self) -> LatticeCheckResult {
        let not_lattice = LatticeCheckResult {
            is_lattice: false,
            is_distributive: false,
            join_table: None,
            meet_table: None,
        };
        if self.is_empty() {
            return not_lattice;
        }
        let (Some(join), Some(meet)) = (self.join_table(), self.meet_table()) else {
            return not_lattice;
        };
        let n = self.len();
        let is_distributive =
            (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| meet[x][join[y][z]] == join[meet[x][y]][meet[x][z]])));
        LatticeCheckResult {
            is_lattice: true,
            is_distributive,
            join_table: Some(join),
            meet_table: Some(meet),
        }
    }
}
