use serde::Deserialize;

use minor_spread_core::ProblemSpec;

use crate::Failure;

/// Wire form of a spec: integer fields `m, n, r, u` and 1-based arrays `a, b`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub m: i64,
    pub n: i64,
    pub r: i64,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub u: i64,
}

fn to_u32(name: &str, x: i64) -> Result<u32, Failure> {
    u32::try_from(x).map_err(|_| Failure::invalid(format!("{name} = {x} is out of range")))
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::invalid(format!("spec document: {e}")))
    }

    pub fn into_spec(self) -> Result<ProblemSpec, Failure> {
        let seq = |name: &str, v: &[i64]| v.iter().map(|&x| to_u32(name, x)).collect::<Result<Vec<_>, _>>();
        let spec = ProblemSpec::new(
            to_u32("m", self.m)?,
            to_u32("n", self.n)?,
            to_u32("r", self.r)?,
            seq("a", &self.a)?,
            seq("b", &self.b)?,
            to_u32("u", self.u)?,
        )?;
        Ok(spec)
    }
}
