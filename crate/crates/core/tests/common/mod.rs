#![allow(dead_code)]

use minor_spread_core::{Poset, ProblemSpec};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// A random poset on `0..n`: random upward edges, transitively closed.
pub fn poset(max_len: usize) -> impl Strategy<Value = Poset<u32>> {
    (0..=max_len).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(proptest::bool::weighted(0.3), pairs).prop_map(move |edges| closure(n, &edges))
    })
}

pub fn nonempty_poset(max_len: usize) -> impl Strategy<Value = Poset<u32>> {
    poset(max_len).prop_filter("nonempty", |p| !p.is_empty())
}

fn closure(n: usize, edges: &[bool]) -> Poset<u32> {
    let mut rel = vec![vec![false; n]; n];
    let mut e = edges.iter();
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
        for cell in row.iter_mut().skip(i + 1) {
            *cell = *e.next().unwrap();
        }
    }
    // indices are a linear extension, so one forward pass closes the relation
    for j in 0..n {
        for i in (0..j).rev() {
            if rel[i][j] {
                continue;
            }
            rel[i][j] = (i + 1..j).any(|m| rel[i][m] && rel[m][j]);
        }
    }
    Poset::build((0..n as u32).collect(), |&x, &y| rel[x as usize][y as usize]).unwrap()
}

/// Any valid spec with `m, n <= max`.
pub fn spec(max: u32) -> impl Strategy<Value = ProblemSpec> {
    (1..=max, 1..=max)
        .prop_flat_map(|(m, n)| (Just(m), Just(n), 1..=m.min(n)))
        .prop_flat_map(|(m, n, r)| {
            (
                Just(m),
                Just(n),
                subsequence((1..=m).collect::<Vec<_>>(), r as usize),
                subsequence((1..=n).collect::<Vec<_>>(), r as usize),
            )
        })
        .prop_flat_map(|(m, n, a, b)| {
            let a1 = a[0];
            (Just(m), Just(n), Just(a), Just(b), a1..=m)
        })
        .prop_map(|(m, n, a, b, u)| {
            let r = a.len() as u32;
            ProblemSpec::new(m, n, r, a, b, u).unwrap()
        })
}

pub fn chain(n: u32) -> Poset<u32> {
    Poset::chain((0..n).collect()).unwrap()
}

pub fn antichain(n: u32) -> Poset<u32> {
    Poset::antichain((0..n).collect()).unwrap()
}

/// Zigzag `0 < 1 > 2 < 3 > ...`.
pub fn fence(n: u32) -> Poset<u32> {
    Poset::build((0..n).collect(), |x, y| {
        x == y || (x % 2 == 0 && (y + 1 == *x || *y == x + 1))
    })
    .unwrap()
}
