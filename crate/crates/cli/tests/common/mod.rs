#![allow(dead_code)]

use std::io::Write;
use std::process::{Command, Stdio};
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use tropelim::exact::{int_vec, IntVec};
use tropelim::fan::{Cone, TropicalCycle};
use tropelim::polytope::LatticePolytope;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the binary with `args`, feeding `input` on stdin.
pub fn tropelim(args: &[&str], input: &str) -> Run {
    tropelim_env(args, input, &[])
}

pub fn tropelim_env(args: &[&str], input: &str, env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tropelim"));
    cmd.args(args)
        .env_remove("TROPELIM_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary starts");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn polytope_json(n: usize, pts: &[IntVec]) -> Value {
    let vs: Vec<Value> = pts
        .iter()
        .map(|p| Value::Array(p.iter().map(|x| Value::from_str(&x.to_string()).unwrap()).collect()))
        .collect();
    json!({"dim": n, "vertices": vs})
}

pub fn lattice_polytope_json(p: &LatticePolytope) -> Value {
    polytope_json(p.ambient_rank(), p.vertices())
}

fn big(v: &Value) -> BigInt {
    BigInt::from_str(&v.to_string()).expect("integer entry")
}

fn int_rows(v: &Value) -> Vec<IntVec> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(big).collect())
        .collect()
}

/// Reads the `cycle` of a result document.
pub fn cycle_of(doc: &str) -> TropicalCycle {
    let v: Value = serde_json::from_str(doc).expect("result is JSON");
    let c = &v["cycle"];
    let n = c["dim"].as_u64().unwrap() as usize;
    let k = c["k"].as_u64().unwrap() as usize;
    let cones = c["cones"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (Cone::new(n, &int_rows(&x["rays"]), &[]).unwrap(), big(&x["mult"])))
        .collect();
    TropicalCycle::new(n, k, cones).unwrap()
}

/// Reads the vertices of the `polytope` of a result document.
pub fn vertices_of(doc: &str) -> Vec<IntVec> {
    let v: Value = serde_json::from_str(doc).expect("result is JSON");
    int_rows(&v["polytope"]["vertices"])
}

pub fn random_points(rng: &mut ChaCha8Rng, n: usize, count: usize, r: i64) -> Vec<IntVec> {
    (0..count)
        .map(|_| int_vec(&(0..n).map(|_| rng.gen_range(-r..=r)).collect::<Vec<_>>()))
        .collect()
}

/// A random lattice polytope with vertices in `[-r, r]^n` of full dimension.
pub fn random_full_polytope(
    rng: &mut ChaCha8Rng,
    n: usize,
    count: std::ops::RangeInclusive<usize>,
    r: i64,
) -> LatticePolytope {
    loop {
        let k = rng.gen_range(count.clone());
        let p = LatticePolytope::new(n, &random_points(rng, n, k, r)).unwrap();
        if p.dim() == n {
            return p;
        }
    }
}

pub fn random_polytope(rng: &mut ChaCha8Rng, n: usize, count: std::ops::RangeInclusive<usize>, r: i64) -> LatticePolytope {
    let k = rng.gen_range(count);
    LatticePolytope::new(n, &random_points(rng, n, k, r)).unwrap()
}
