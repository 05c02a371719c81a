#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use clonealg_core::alg::{FinOpTable, PointSeq, Tuples};
use clonealg_core::term::{Head, MetaSeq, QSeq, Tail};
use clonealg_core::{FinTerm, FiniteAlgebra, MetaTerm, OmegaOp, QTerm};
use proptest::prelude::*;

pub fn zn(n: u32) -> FiniteAlgebra {
    let plus = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FiniteAlgebra::from_tables(n as usize, &[("+", 2, plus), ("zero", 0, vec![0])]).unwrap()
}

pub fn klein() -> FiniteAlgebra {
    let plus = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
    FiniteAlgebra::from_tables(4, &[("+", 2, plus), ("zero", 0, vec![0])]).unwrap()
}

pub fn meet() -> FiniteAlgebra {
    FiniteAlgebra::from_tables(2, &[("and", 2, vec![0, 0, 0, 1])]).unwrap()
}

pub fn algebra(carrier: usize, sig: &'static [(&'static str, usize)]) -> impl Strategy<Value = FiniteAlgebra> {
    let tables: Vec<_> = sig
        .iter()
        .map(|&(_, n)| prop::collection::vec(0..carrier as u32, carrier.pow(n as u32)))
        .collect();
    tables.prop_map(move |ts| {
        let ops: Vec<(&str, usize, Vec<u32>)> = sig.iter().zip(ts).map(|(&(f, n), t)| (f, n, t)).collect();
        FiniteAlgebra::from_tables(carrier, &ops).unwrap()
    })
}

pub fn small_algebra(sig: &'static [(&'static str, usize)]) -> impl Strategy<Value = FiniteAlgebra> {
    (1usize..=3).prop_flat_map(move |m| algebra(m, sig))
}

pub fn omega_op(carrier: usize, max_arity: usize) -> impl Strategy<Value = OmegaOp> {
    (0..=max_arity).prop_flat_map(move |n| {
        prop::collection::vec(0..carrier as u32, carrier.pow(n as u32))
            .prop_map(move |v| OmegaOp::top_extend(&FinOpTable::from_values(n, carrier, v).unwrap()))
    })
}

pub fn point(carrier: usize, len: usize) -> impl Strategy<Value = PointSeq> {
    (prop::collection::vec(0..carrier as u32, 0..=len), 0..carrier as u32).prop_map(|(p, t)| PointSeq::new(p, t))
}

fn tail<T: std::fmt::Debug + Clone + 'static>(inner: BoxedStrategy<T>) -> impl Strategy<Value = Tail<T>> {
    prop_oneof![
        3 => (1usize..=2, 0usize..=2).prop_map(|(a, b)| Tail::Affine { a, b }),
        1 => inner.prop_map(|t| Tail::Const(Box::new(t))),
    ]
}

/// Metaterms over `heads`; `metas` are metavariable names.
pub fn meta_term(symbols: &'static [&'static str], metas: &'static [&'static str]) -> BoxedStrategy<MetaTerm> {
    let heads: Vec<Head> = symbols
        .iter()
        .map(|s| Head::Sym(s.to_string()))
        .chain(metas.iter().map(|x| Head::Meta(x.to_string())))
        .collect();
    let leaf = (0usize..4).prop_map(MetaTerm::Proj);
    leaf.prop_recursive(3, 12, 3, move |inner| {
        (
            prop::sample::select(heads.clone()),
            prop::collection::vec(inner.clone(), 0..3),
            tail(inner),
        )
            .prop_map(|(h, prefix, t)| MetaTerm::App(h, MetaSeq::new(prefix, t)).canonical())
    })
    .prop_filter("size", |t| t.size() <= 12)
    .boxed()
}

pub fn meta_seq(symbols: &'static [&'static str], metas: &'static [&'static str]) -> impl Strategy<Value = MetaSeq> {
    let t = meta_term(symbols, metas);
    (prop::collection::vec(t.clone(), 0..3), tail(t)).prop_map(|(p, tl)| MetaSeq::new(p, tl))
}

pub fn q_term(symbols: &'static [&'static str], metas: &'static [&'static str]) -> BoxedStrategy<QTerm> {
    let mut leaves: Vec<BoxedStrategy<QTerm>> = vec![(0usize..4).prop_map(QTerm::Proj).boxed()];
    if !symbols.is_empty() {
        leaves.push(prop::sample::select(symbols).prop_map(|s| QTerm::SymConst(s.to_string())).boxed());
    }
    if !metas.is_empty() {
        leaves.push(prop::sample::select(metas).prop_map(|s| QTerm::MetaVar(s.to_string())).boxed());
    }
    let leaf = proptest::strategy::Union::new(leaves);
    leaf.prop_recursive(4, 16, 3, |inner| {
        (inner.clone(), prop::collection::vec(inner.clone(), 0..3), tail(inner))
            .prop_map(|(f, prefix, t)| QTerm::q(f, QSeq::new(prefix, t)))
    })
    .boxed()
}

pub fn fin_term(sig: &'static [(&'static str, usize)], vars: usize, depth: u32) -> BoxedStrategy<FinTerm> {
    let leaf = (0..vars).prop_map(FinTerm::Var);
    leaf.prop_recursive(depth, 24, 3, move |inner| {
        prop::sample::select(sig).prop_flat_map(move |(f, n)| {
            prop::collection::vec(inner.clone(), n).prop_map(move |cs| FinTerm::app(f, cs))
        })
    })
    .boxed()
}

/// Reads a metaterm back as a q-term without going through the library.
pub fn embed(t: &MetaTerm) -> QTerm {
    match t {
        MetaTerm::Proj(i) => QTerm::Proj(*i),
        MetaTerm::App(h, s) => {
            let head = match h {
                Head::Sym(f) => QTerm::SymConst(f.clone()),
                Head::Meta(x) => QTerm::MetaVar(x.clone()),
            };
            let (prefix, tail) = s.clone().into_parts();
            let tail = match tail {
                Tail::Affine { a, b } => Tail::Affine { a, b },
                Tail::Const(c) => Tail::Const(Box::new(embed(&c))),
            };
            QTerm::q(head, QSeq::new(prefix.iter().map(embed).collect(), tail))
        }
    }
}

pub fn embed_seq(s: &MetaSeq) -> QSeq {
    let (prefix, tail) = s.clone().into_parts();
    let tail = match tail {
        Tail::Affine { a, b } => Tail::Affine { a, b },
        Tail::Const(c) => Tail::Const(Box::new(embed(&c))),
    };
    QSeq::new(prefix.iter().map(embed).collect(), tail)
}

/// Value of a q-term at a point, reading `q` as substitution of points.
pub fn eval_q(a: &FiniteAlgebra, t: &QTerm, eta: &BTreeMap<String, OmegaOp>, s: &PointSeq) -> u32 {
    match t {
        QTerm::Proj(i) => s.at(*i),
        QTerm::SymConst(f) => {
            let table = &a.ops()[f];
            table.get(&s.take(table.arity()))
        }
        QTerm::MetaVar(x) => eta[x].apply(s),
        QTerm::Q(fun, args) => {
            let len = args.prefix().len() + s.prefix().len() + 1;
            let prefix: Vec<u32> = (0..len).map(|k| eval_q(a, &args.at(k), eta, s)).collect();
            let tail = match args.tail() {
                Tail::Affine { a: 0, b } => s.at(*b),
                Tail::Affine { .. } => s.tail(),
                Tail::Const(c) => eval_q(a, c, eta, s),
            };
            eval_q(a, fun, eta, &PointSeq::new(prefix, tail))
        }
    }
}

pub fn eval_meta(a: &FiniteAlgebra, t: &MetaTerm, eta: &BTreeMap<String, OmegaOp>, s: &PointSeq) -> u32 {
    eval_q(a, &embed(t), eta, s)
}

pub fn eval_fin(a: &FiniteAlgebra, t: &FinTerm, x: &[u32]) -> u32 {
    match t {
        FinTerm::Var(i) => x[*i],
        FinTerm::App(f, cs) => {
            let args: Vec<u32> = cs.iter().map(|c| eval_fin(a, c, x)).collect();
            a.ops()[f].get(&args)
        }
    }
}

/// Every point with a prefix of length `len`.
pub fn points(carrier: usize, len: usize) -> Vec<PointSeq> {
    let mut out = Vec::new();
    for x in Tuples::new(len + 1, carrier) {
        out.push(PointSeq::new(x[..len].to_vec(), x[len]));
    }
    out
}

/// The `k`-ary term operations of `a` by naive fixpoint iteration.
pub fn brute_clone(a: &FiniteAlgebra, k: usize) -> BTreeSet<Vec<u32>> {
    let m = a.carrier();
    let rows: Vec<Vec<u32>> = Tuples::new(k, m).collect();
    let mut set: BTreeSet<Vec<u32>> = (0..k).map(|i| rows.iter().map(|r| r[i]).collect()).collect();
    loop {
        let current: Vec<Vec<u32>> = set.iter().cloned().collect();
        let before = set.len();
        for op in a.ops().values() {
            for pick in Tuples::new(op.arity(), current.len()) {
                let table: Vec<u32> = (0..rows.len())
                    .map(|r| {
                        let args: Vec<u32> = pick.iter().map(|&p| current[p as usize][r]).collect();
                        op.get(&args)
                    })
                    .collect();
                set.insert(table);
            }
        }
        if set.len() == before {
            return set;
        }
    }
}

/// All tables of the given arity over the carrier.
pub fn all_tables(arity: usize, carrier: usize) -> impl Iterator<Item = FinOpTable> {
    let len = carrier.pow(arity as u32);
    Tuples::new(len, carrier).map(move |v| FinOpTable::from_values(arity, carrier, v).unwrap())
}

/// Labels of the congruence generated by `pairs`, numbered by first
/// appearance.
pub fn congruence(a: &FiniteAlgebra, pairs: &[(u32, u32)]) -> Vec<u32> {
    let m = a.carrier();
    let mut class: Vec<usize> = (0..m).collect();
    fn find(class: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while class[r] != r {
            r = class[r];
        }
        class[x] = r;
        r
    }
    let union = |class: &mut Vec<usize>, x: u32, y: u32| {
        let (rx, ry) = (find(class, x as usize), find(class, y as usize));
        if rx != ry {
            class[rx.max(ry)] = rx.min(ry);
            true
        } else {
            false
        }
    };
    for &(x, y) in pairs {
        union(&mut class, x, y);
    }
    loop {
        let mut changed = false;
        for op in a.ops().values() {
            for x in Tuples::new(op.arity(), m) {
                for i in 0..x.len() {
                    for v in 0..m as u32 {
                        if find(&mut class, v as usize) == find(&mut class, x[i] as usize) {
                            let mut y = x.clone();
                            y[i] = v;
                            changed |= union(&mut class, op.get(&x), op.get(&y));
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut names = BTreeMap::new();
    (0..m)
        .map(|x| {
            let r = find(&mut class, x);
            let next = names.len() as u32;
            *names.entry(r).or_insert(next)
        })
        .collect()
}
