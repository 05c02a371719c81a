//! Human renderings of command results. Every line is newline-terminated.

use std::fmt::Write as _;

use clonealg_core::birkhoff::{AlphaStar, EpsMap, HspWitness, StrViolation, UcWitness};
use clonealg_core::clone::{CentralViolation, CloneLevel, Counterexample, FreeAlgebra, HyperCounterexample, PointCounterexample};
use clonealg_core::{OmegaOp, PointSeq, Verdict};
use serde_json::Value;

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn point(p: &PointSeq) -> String {
    if p.prefix().is_empty() {
        format!("[| {}]", p.tail())
    } else {
        format!("[{} | {}]", join(p.prefix()), p.tail())
    }
}

fn op(o: &OmegaOp) -> String {
    format!("dim {} table [{}]", o.dim(), join(o.table().values()))
}

/// The outcome line followed by the rendering of the witness.
pub fn verdict<H, V>(v: &Verdict<H, V>, holds: impl Fn(&H) -> String, violated: impl Fn(&V) -> String) -> String {
    match v {
        Verdict::Holds(h) => format!("holds\n{}", holds(h)),
        Verdict::Violated(w) => format!("violated\n{}", violated(w)),
        Verdict::Inconclusive { bound } => format!("inconclusive (bound {bound})\n"),
    }
}

pub fn dims(rows: &[Value]) -> String {
    rows.iter()
        .map(|r| format!("{}/{} dim {}\n", r["op"].as_str().unwrap_or_default(), r["arity"], r["dim"]))
        .collect()
}

pub fn clone_level(level: &CloneLevel) -> String {
    let mut s = format!("arity {}, {} operations\n", level.arity(), level.len());
    for (t, w) in level.iter() {
        let _ = writeln!(s, "[{}] {w}", join(t.values()));
    }
    s
}

pub fn counterexample(c: &Counterexample) -> String {
    let asg: Vec<String> = c.values().iter().map(|(i, v)| format!("e{i}={v}")).collect();
    format!("at {}\nlhs {}\nrhs {}\n", asg.join(" "), c.lhs, c.rhs)
}

pub fn point_counterexample(c: &PointCounterexample) -> String {
    format!("at {}\nlhs {}\nrhs {}\n", point(&c.point), c.lhs, c.rhs)
}

pub fn hyper_counterexample(c: &HyperCounterexample) -> String {
    let mut s = String::new();
    for (x, o) in &c.assignment {
        let _ = writeln!(s, "X{x} = {}", op(o));
    }
    let _ = writeln!(s, "lhs {}\nrhs {}\nat {}", op(&c.lhs), op(&c.rhs), point(&c.point));
    s
}

pub fn central_violation(v: &CentralViolation) -> String {
    let grid = |g: &[Vec<u32>]| g.iter().map(|r| format!("[{}]", join(r))).collect::<Vec<_>>().join(" ");
    match v {
        CentralViolation::C1 { c, value } => format!("C1 at {c}: value {value}\n"),
        CentralViolation::C2 { grid: g, lhs, rhs } => format!("C2 grid {}\nlhs {lhs}\nrhs {rhs}\n", grid(g)),
        CentralViolation::C3 { ys, grid: g, lhs, rhs } => {
            let mut s = String::from("C3\n");
            for (i, y) in ys.iter().enumerate() {
                let _ = writeln!(s, "y{i} = {}", op(y));
            }
            let _ = writeln!(s, "grid {}\nlhs {lhs}\nrhs {rhs}", grid(g));
            s
        }
    }
}

pub fn free(rank: usize, free: &FreeAlgebra) -> String {
    let mut s = format!("rank {rank}, {} elements\n", free.level.len());
    let _ = writeln!(s, "generators {}", join(&free.generators()));
    for (i, w) in free.level.witnesses().iter().enumerate() {
        let _ = writeln!(s, "{i} = {w}");
    }
    if let Some(a) = &free.algebra {
        s.push_str(&a.to_string());
    }
    s
}

pub fn eps(map: &EpsMap) -> String {
    let mut s = format!("arity {}, {} operations\n", map.arity, map.pairs.len());
    for p in &map.pairs {
        let _ = writeln!(s, "[{}] -> [{}] {}", join(&p.source), join(&p.target), p.witness);
    }
    s
}

pub fn hsp(w: &HspWitness) -> String {
    let mut s = format!("generators {}\n", join(&w.gens));
    for ((e, l), t) in w.elements.iter().zip(&w.labels).zip(&w.witnesses) {
        let _ = writeln!(s, "[{}] -> {l} {t}", join(e));
    }
    s
}

pub fn uc(w: &UcWitness) -> String {
    let mut s = format!("n {}\n", w.n);
    for p in &w.witnesses {
        let _ = writeln!(s, "point {}", point(p));
    }
    let _ = writeln!(s, "generators {}", join(&w.gens));
    for (g, m) in w.gens.iter().zip(&w.generators) {
        let _ = writeln!(s, "[{}] -> {g}", join(m));
    }
    for (e, l) in w.elements.iter().zip(&w.labels) {
        let _ = writeln!(s, "element [{}] -> {l}", join(e));
    }
    s
}

pub fn alpha(r: &AlphaStar) -> String {
    match r {
        AlphaStar::Defined { psi } => format!("defined\npsi {}\n", op(psi)),
        AlphaStar::Undefined { left, right } => format!("undefined\nleft [{}]\nright [{}]\n", join(left), join(right)),
    }
}

pub fn str_violation(v: &StrViolation) -> String {
    format!(
        "{}/{} has dim {}\nat {} value {}\nat {} value {}\n",
        v.symbol,
        v.arity,
        v.dim,
        point(&v.point),
        v.lhs,
        point(&v.substituted),
        v.rhs
    )
}
