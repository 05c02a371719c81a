use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::level::clone_gen;
use crate::alg::{omega_q, op_at, op_seq, FinOpTable, FiniteAlgebra, OmegaOp, PointSeq, Tuples};
use crate::error::{Error, Result};
use crate::term::{variable_support, FinTerm, Head, MetaTerm, QTerm, Tail};
use crate::verdict::Verdict;

/// Default cap on the number of metavariable assignments tried.
pub const DEFAULT_HYPER_BUDGET: u64 = 1_000_000;

/// A falsifying assignment for a finitary identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Values keyed by variable name `e<i>`.
    pub assignment: BTreeMap<String, u32>,
    pub lhs: u32,
    pub rhs: u32,
}

impl Counterexample {
    /// The assignment as variable index to value.
    pub fn values(&self) -> BTreeMap<usize, u32> {
        self.assignment
            .iter()
            .map(|(k, v)| (k[1..].parse().expect("variable name"), *v))
            .collect()
    }
}

/// A point at which two ω-ary term operations differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCounterexample {
    pub point: PointSeq,
    pub lhs: u32,
    pub rhs: u32,
}

/// A metavariable assignment separating the two sides of a hyperidentity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperCounterexample {
    pub assignment: BTreeMap<String, OmegaOp>,
    pub lhs: OmegaOp,
    pub rhs: OmegaOp,
    pub point: PointSeq,
}

/// The ω-ary operation of a closed metaterm under top-extension semantics.
pub fn term_op(a: &FiniteAlgebra, t: &MetaTerm) -> Result<OmegaOp> {
    let support = variable_support(t, &a.signature())?;
    let d = support.last().map_or(0, |&i| i + 1);
    let mut err = None;
    let table = FinOpTable::try_from_fn(d, a.carrier(), |x| {
        match a.eval_metaterm(t, &PointSeq::new(x.to_vec(), 0)) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                0
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(OmegaOp::top_extend(&table))
}

/// Checks `v = w` in `A` over all assignments to their joint variables,
/// enumerated row-major in increasing variable order.
pub fn check_identity(a: &FiniteAlgebra, v: &FinTerm, w: &FinTerm) -> Result<Verdict<(), Counterexample>> {
    let vars: Vec<usize> = v
        .variables()
        .into_iter()
        .chain(w.variables())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    crate::alg::table_len(a.carrier(), vars.len())?;
    for x in Tuples::new(vars.len(), a.carrier()) {
        let asg: BTreeMap<usize, u32> = vars.iter().copied().zip(x.iter().copied()).collect();
        let lhs = a.eval_finterm(v, &asg)?;
        let rhs = a.eval_finterm(w, &asg)?;
        if lhs != rhs {
            return Ok(Verdict::Violated(Counterexample {
                assignment: asg.into_iter().map(|(k, v)| (format!("e{k}"), v)).collect(),
                lhs,
                rhs,
            }));
        }
    }
    Ok(Verdict::Holds(()))
}

fn separate(lhs: &OmegaOp, rhs: &OmegaOp) -> Option<PointCounterexample> {
    let d = lhs.dim().max(rhs.dim());
    Tuples::new(d, lhs.carrier()).find_map(|x| {
        let (l, r) = (lhs.apply_prefix(&x), rhs.apply_prefix(&x));
        (l != r).then(|| PointCounterexample {
            point: PointSeq::new(x, 0),
            lhs: l,
            rhs: r,
        })
    })
}

/// Checks `t = u` between closed metaterms in the top-extension algebra.
pub fn check_meta_identity(a: &FiniteAlgebra, t: &MetaTerm, u: &MetaTerm) -> Result<Verdict<(), PointCounterexample>> {
    let lhs = term_op(a, t)?;
    let rhs = term_op(a, u)?;
    Ok(match separate(&lhs, &rhs) {
        None => Verdict::Holds(()),
        Some(p) => Verdict::Violated(p),
    })
}

fn check_carrier(m: usize, op: &OmegaOp) -> Result<()> {
    if op.carrier() != m {
        return Err(Error::CarrierMismatch {
            expected: m,
            found: op.carrier(),
        });
    }
    Ok(())
}

/// Interprets a metaterm in the clone of ω-ary operations on `A`: projections
/// go to `e_i⊤`, symbols to their top extensions, and metavariables to `eta`.
pub fn interpret_metaterm(a: &FiniteAlgebra, t: &MetaTerm, eta: &BTreeMap<String, OmegaOp>) -> Result<OmegaOp> {
    let m = a.carrier();
    match t {
        MetaTerm::Proj(i) => OmegaOp::try_projection(m, *i),
        MetaTerm::App(h, s) => {
            let head = match h {
                Head::Sym(f) => OmegaOp::top_extend(a.op(f)?),
                Head::Meta(x) => {
                    let op = eta
                        .get(x)
                        .ok_or_else(|| Error::MissingAssignment(format!("X{x}")))?;
                    check_carrier(m, op)?;
                    op.clone()
                }
            };
            // Only the first dim(head) arguments are read.
            let args = (0..head.dim())
                .map(|k| interpret_metaterm(a, &s.at(k), eta))
                .collect::<Result<Vec<_>>>()?;
            omega_q(&head, &op_seq(m, args, Tail::Affine { a: 1, b: 0 }))
        }
    }
}

/// Interprets a q-term directly, with `q` read as composition of ω-ary
/// operations.
pub fn interpret_qterm(a: &FiniteAlgebra, t: &QTerm, eta: &BTreeMap<String, OmegaOp>) -> Result<OmegaOp> {
    let m = a.carrier();
    match t {
        QTerm::Proj(i) => OmegaOp::try_projection(m, *i),
        QTerm::SymConst(f) => Ok(OmegaOp::top_extend(a.op(f)?)),
        QTerm::MetaVar(x) => {
            let op = eta
                .get(x)
                .ok_or_else(|| Error::MissingAssignment(format!("X{x}")))?;
            check_carrier(m, op)?;
            Ok(op.clone())
        }
        QTerm::Q(fun, s) => {
            let head = interpret_qterm(a, fun, eta)?;
            let args = (0..head.dim())
                .map(|k| interpret_qterm(a, &s.at(k), eta))
                .collect::<Result<Vec<_>>>()?;
            let seq = op_seq(m, args, Tail::Affine { a: 1, b: 0 });
            debug_assert!((0..head.dim()).all(|k| op_at(&seq, k, m).carrier() == m));
            omega_q(&head, &seq)
        }
    }
}

/// Searches metavariable assignments drawn from the top extensions of
/// `Clo_k(A)` for one separating `t` and `u`.
///
/// Both sides closed: decided outright. Otherwise the quantifier ranges over
/// all term operations, which is infinite, so the best possible answer short
/// of a counterexample is `Inconclusive { bound: k }`.
pub fn check_hyperidentity_bounded(
    a: &FiniteAlgebra,
    t: &MetaTerm,
    u: &MetaTerm,
    k: usize,
    budget: u64,
) -> Result<Verdict<(), HyperCounterexample>> {
    let metas: Vec<String> = t
        .metavariables()
        .into_iter()
        .chain(u.metavariables())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if metas.is_empty() {
        let lhs = term_op(a, t)?;
        let rhs = term_op(a, u)?;
        return Ok(match separate(&lhs, &rhs) {
            None => Verdict::Holds(()),
            Some(p) => Verdict::Violated(HyperCounterexample {
                assignment: BTreeMap::new(),
                lhs,
                rhs,
                point: p.point,
            }),
        });
    }
    let level = clone_gen(a, k, budget.try_into().unwrap_or(usize::MAX))?;
    let mut candidates: Vec<OmegaOp> = Vec::new();
    let mut seen = BTreeSet::new();
    for f in level.functions() {
        let op = OmegaOp::top_extend(f);
        if seen.insert(op.clone()) {
            candidates.push(op);
        }
    }
    if candidates.is_empty() {
        return Ok(Verdict::Inconclusive { bound: k });
    }
    let total = (candidates.len() as u64).checked_pow(metas.len() as u32);
    if total.is_none_or(|n| n > budget) {
        return Err(Error::exhausted("hyperidentity assignments", budget));
    }
    for choice in Tuples::new(metas.len(), candidates.len()) {
        let eta: BTreeMap<String, OmegaOp> = metas
            .iter()
            .cloned()
            .zip(choice.iter().map(|&c| candidates[c as usize].clone()))
            .collect();
        let lhs = interpret_metaterm(a, t, &eta)?;
        let rhs = interpret_metaterm(a, u, &eta)?;
        if let Some(p) = separate(&lhs, &rhs) {
            return Ok(Verdict::Violated(HyperCounterexample {
                assignment: eta,
                lhs,
                rhs,
                point: p.point,
            }));
        }
    }
    Ok(Verdict::Inconclusive { bound: k })
}
