use std::fmt;

use serde::Serialize;

use crate::error::SpecError;

/// Parameters of the problem: an `m × n` generic matrix whose minors of size
/// `i` vanish on the first `a_i - 1` rows and the first `b_i - 1` columns,
/// and the first `u` rows of it.
///
/// Sequences are 1-based, as on the wire.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProblemSpec {
    m: u32,
    n: u32,
    r: u32,
    a: Vec<u32>,
    b: Vec<u32>,
    u: u32,
    k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Rows,
    Columns,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Rows, Side::Columns];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Rows => "rows",
            Side::Columns => "columns",
        })
    }
}

fn check_sequence(name: &str, seq: &[u32], r: u32, max: u32) -> Result<(), SpecError> {
    if seq.len() != r as usize {
        return Err(SpecError::Invalid(format!(
            "{name} has length {}, expected r = {r}",
            seq.len()
        )));
    }
    if seq.first().is_some_and(|&x| x < 1) || seq.last().is_some_and(|&x| x > max) {
        return Err(SpecError::Invalid(format!("{name} must lie in [1, {max}]")));
    }
    if seq.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SpecError::Invalid(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

/// The unique `k` with `a_k <= u < a_{k+1}`, where `a_{r+1} = m + 1`.
pub fn determine_k(m: u32, a: &[u32], u: u32) -> Result<usize, SpecError> {
    if u > m {
        return Err(SpecError::Invalid(format!("u = {u} exceeds m = {m}")));
    }
    match a.first() {
        None => Err(SpecError::Invalid("a is empty".into())),
        Some(&a1) if u < a1 => Err(SpecError::NoMaximalMinors { u, a1 }),
        Some(_) => Ok(a.partition_point(|&x| x <= u)),
    }
}

impl ProblemSpec {
    pub fn new(m: u32, n: u32, r: u32, a: Vec<u32>, b: Vec<u32>, u: u32) -> Result<Self, SpecError> {
        if m == 0 || n == 0 || r == 0 {
            return Err(SpecError::Invalid("m, n and r must be positive".into()));
        }
        if r > m.min(n) {
            return Err(SpecError::Invalid(format!("r = {r} exceeds min(m, n)")));
        }
        if u == 0 || u > m {
            return Err(SpecError::Invalid(format!("u = {u} must lie in [1, {m}]")));
        }
        check_sequence("a", &a, r, m)?;
        check_sequence("b", &b, r, n)?;
        let k = determine_k(m, &a, u)?;
        Ok(Self { m, n, r, a, b, u, k })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    /// Size of the maximal nonvanishing minors of the first `u` rows.
    pub fn k(&self) -> usize {
        self.k
    }

    /// The whole `a` or `b` sequence.
    pub fn sequence(&self, side: Side) -> &[u32] {
        match side {
            Side::Rows => &self.a,
            Side::Columns => &self.b,
        }
    }

    /// The first `k` entries of `a` or `b`: the bottom tuple on that side.
    pub fn lower(&self, side: Side) -> &[u32] {
        &self.sequence(side)[..self.k]
    }

    /// Largest admissible index on that side: `u` for rows, `n` for columns.
    pub fn bound(&self, side: Side) -> u32 {
        match side {
            Side::Rows => self.u,
            Side::Columns => self.n,
        }
    }

    /// `m` or `n`, used for the `a_{r+1}` / `b_{r+1}` convention.
    pub fn ambient(&self, side: Side) -> u32 {
        match side {
            Side::Rows => self.m,
            Side::Columns => self.n,
        }
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} n={} r={} a={:?} b={:?} u={}",
            self.m, self.n, self.r, self.a, self.b, self.u
        )
    }
}
