//! JSON documents exchanged by the command-line tool.
//!
//! Numbers are exact: JSON integers of any size, or strings `"p"` / `"p/q"`.
//! Output integers are written as JSON numbers and non-integral rationals as
//! `"p/q"` strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::{self, Deserializer};
use serde::Deserialize;
use serde_json::{json, Number, Value};

use tropelim::exact::{IntMatrix, IntVec};
use tropelim::fan::{Cone, TropicalCycle};
use tropelim::polytope::{LatticePolytope, RationalPolytope};

pub const VERSION: &str = "1";

/// A problem the user got wrong before any mathematics ran.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl SchemaError {
    pub fn new(msg: impl Into<String>) -> Self {
        SchemaError(msg.into())
    }
}

/// An exact rational read from either a JSON number or a string.
#[derive(Clone, Debug, PartialEq)]
pub struct Exact(pub BigRational);

impl Exact {
    fn integer(&self, what: &str) -> Result<BigInt, SchemaError> {
        if self.0.is_integer() {
            Ok(self.0.to_integer())
        } else {
            Err(SchemaError(format!("{what}: expected an integer, found {}", self.0)))
        }
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::Number(n) => BigInt::from_str(&n.to_string())
                .map(|x| Exact(BigRational::from_integer(x)))
                .map_err(|_| de::Error::custom(format!("number {n} is not an exact integer; use a \"p/q\" string"))),
            Value::String(s) => parse_rational(&s)
                .map(Exact)
                .ok_or_else(|| de::Error::custom(format!("malformed rational {s:?}"))),
            other => Err(de::Error::custom(format!("expected a number, found {other}"))),
        }
    }
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDoc {
    pub dim: usize,
    pub vertices: Vec<Vec<Exact>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Exact>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ConeDoc {
    pub rays: Vec<Vec<Exact>>,
    pub mult: Exact,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct CycleDoc {
    pub dim: usize,
    pub k: usize,
    pub cones: Vec<ConeDoc>,
}

/// Input document. Which fields are required depends on the command.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub version: String,
    #[serde(default)]
    pub polytopes: Option<Vec<PolytopeDoc>>,
    #[serde(default)]
    pub polytope: Option<PolytopeDoc>,
    #[serde(default)]
    pub cycle: Option<CycleDoc>,
    #[serde(default)]
    pub matrix: Option<MatrixDoc>,
    #[serde(default)]
    pub delta: Option<Exact>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub c: Option<usize>,
}

impl Problem {
    pub fn parse(text: &str) -> Result<Problem, SchemaError> {
        let p: Problem =
            serde_json::from_str(text).map_err(|e| SchemaError(format!("invalid document: {e}")))?;
        if p.version != VERSION {
            return Err(SchemaError(format!(
                "unsupported version {:?} (expected {VERSION:?})",
                p.version
            )));
        }
        Ok(p)
    }

    pub fn polytopes(&self) -> Result<Vec<LatticePolytope>, SchemaError> {
        let docs = self
            .polytopes
            .as_ref()
            .ok_or_else(|| SchemaError::new("missing field \"polytopes\""))?;
        if docs.is_empty() {
            return Err(SchemaError::new("\"polytopes\" is empty"));
        }
        let ps = docs
            .iter()
            .enumerate()
            .map(|(i, d)| d.to_polytope(&format!("polytopes[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        if ps.iter().any(|p| p.ambient_rank() != ps[0].ambient_rank()) {
            return Err(SchemaError::new("polytopes live in different dimensions"));
        }
        Ok(ps)
    }

    pub fn polytope(&self) -> Result<LatticePolytope, SchemaError> {
        self.polytope
            .as_ref()
            .ok_or_else(|| SchemaError::new("missing field \"polytope\""))?
            .to_polytope("polytope")
    }

    pub fn cycle(&self) -> Result<TropicalCycle, SchemaError> {
        self.cycle
            .as_ref()
            .ok_or_else(|| SchemaError::new("missing field \"cycle\""))?
            .to_cycle()
    }

    pub fn matrix(&self) -> Result<IntMatrix, SchemaError> {
        self.matrix
            .as_ref()
            .ok_or_else(|| SchemaError::new("missing field \"matrix\""))?
            .to_matrix()
    }

    pub fn delta(&self) -> Result<Option<BigInt>, SchemaError> {
        self.delta.as_ref().map(|d| d.integer("delta")).transpose()
    }
}

fn int_row(row: &[Exact], len: usize, what: &str) -> Result<IntVec, SchemaError> {
    if row.len() != len {
        return Err(SchemaError(format!(
            "{what}: expected {len} entries, found {}",
            row.len()
        )));
    }
    row.iter().map(|x| x.integer(what)).collect()
}

impl PolytopeDoc {
    pub fn to_polytope(&self, what: &str) -> Result<LatticePolytope, SchemaError> {
        if self.vertices.is_empty() {
            return Err(SchemaError(format!("{what}: no vertices")));
        }
        let pts = self
            .vertices
            .iter()
            .map(|v| int_row(v, self.dim, &format!("{what}.vertices")))
            .collect::<Result<Vec<_>, _>>()?;
        LatticePolytope::new(self.dim, &pts).map_err(|e| SchemaError(format!("{what}: {e}")))
    }
}

impl MatrixDoc {
    pub fn to_matrix(&self) -> Result<IntMatrix, SchemaError> {
        if self.entries.len() != self.rows {
            return Err(SchemaError(format!(
                "matrix: \"rows\" is {} but {} rows given",
                self.rows,
                self.entries.len()
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| int_row(r, self.cols, "matrix.entries"))
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_rows(self.cols, &rows).map_err(|e| SchemaError(format!("matrix: {e}")))
    }
}

impl CycleDoc {
    pub fn to_cycle(&self) -> Result<TropicalCycle, SchemaError> {
        let mut cones = Vec::with_capacity(self.cones.len());
        for (i, c) in self.cones.iter().enumerate() {
            let what = format!("cycle.cones[{i}]");
            let rays = c
                .rays
                .iter()
                .map(|r| int_row(r, self.dim, &format!("{what}.rays")))
                .collect::<Result<Vec<_>, _>>()?;
            let cone = Cone::new(self.dim, &rays, &[])
                .map_err(|e| SchemaError(format!("{what}: {e}")))?;
            if cone.dim() != self.k {
                return Err(SchemaError(format!(
                    "{what}: cone has dimension {} but \"k\" is {}",
                    cone.dim(),
                    self.k
                )));
            }
            cones.push((cone, c.mult.integer(&format!("{what}.mult"))?));
        }
        TropicalCycle::new(self.dim, self.k, cones).map_err(|e| SchemaError(format!("cycle: {e}")))
    }
}

pub fn int_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integers are valid JSON numbers"))
}

pub fn rat_value(x: &BigRational) -> Value {
    if x.is_integer() {
        int_value(&x.to_integer())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

fn int_rows(rows: &[IntVec]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(int_value).collect()))
            .collect(),
    )
}

/// Generators of a cone as a ray list; each lineality basis vector appears
/// with both signs.
pub fn cone_rays(c: &Cone) -> Vec<IntVec> {
    let mut rays = Vec::new();
    for l in c.lineality().basis_rows() {
        rays.push(l.iter().map(|x| -x).collect());
        rays.push(l);
    }
    rays.extend(c.rays().iter().cloned());
    rays
}

pub fn cone_value(c: &Cone) -> Value {
    int_rows(&cone_rays(c))
}

pub fn cycle_value(t: &TropicalCycle) -> Value {
    let cones: Vec<Value> = t
        .cones()
        .iter()
        .map(|(c, m)| json!({"rays": cone_value(c), "mult": int_value(m)}))
        .collect();
    json!({"dim": t.ambient_rank(), "k": t.dim(), "cones": cones})
}

pub fn polytope_value(p: &LatticePolytope) -> Value {
    json!({"dim": p.ambient_rank(), "vertices": int_rows(p.vertices())})
}

pub fn rational_polytope_value(p: &RationalPolytope) -> Value {
    let verts: Vec<Value> = p
        .vertices()
        .iter()
        .map(|v| Value::Array(v.iter().map(rat_value).collect()))
        .collect();
    json!({"dim": p.ambient_rank(), "vertices": verts})
}
