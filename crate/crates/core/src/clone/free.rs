use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::identity::term_op;
use super::level::{clone_gen, CloneLevel};
use crate::alg::{omega_q, table_len, FinOpTable, FiniteAlgebra, OmegaOp, OmegaOpSeq, Tuples};
use crate::error::Result;
use crate::term::{FinTerm, MetaTerm};

/// The free algebra of rank `k` in the variety generated by `A`.
///
/// Element `i` is the term operation `level.functions()[i]`; the generators
/// are the projections, which come first. When `k = 0` and the signature has
/// no constants nothing is generated and `algebra` is `None`.
#[derive(Debug, Clone, Serialize)]
pub struct FreeAlgebra {
    pub level: CloneLevel,
    pub algebra: Option<FiniteAlgebra>,
}

impl FreeAlgebra {
    /// Carrier indices of the generators `e_0, …, e_{k-1}`.
    pub fn generators(&self) -> Vec<u32> {
        let m = self.level.carrier();
        let k = self.level.arity();
        (0..k)
            .map(|i| self.level.position(&FinOpTable::projection(k, i, m)).expect("projection") as u32)
            .collect()
    }

    /// The homomorphism into `A` extending `e_i ↦ values[i]`, as a labelling
    /// of the free carrier.
    pub fn evaluation(&self, values: &[u32]) -> Vec<u32> {
        self.level.functions().iter().map(|t| t.get(values)).collect()
    }
}

pub fn free_algebra(a: &FiniteAlgebra, k: usize, budget: usize) -> Result<FreeAlgebra> {
    let level = clone_gen(a, k, budget)?;
    if level.is_empty() {
        return Ok(FreeAlgebra { level, algebra: None });
    }
    let keys: Vec<&[u32]> = level.functions().iter().map(FinOpTable::values).collect();
    let algebra = pointwise_algebra(a, &keys)?;
    Ok(FreeAlgebra { level, algebra })
}

/// The algebra on a set of vectors over `A` closed under the coordinatewise
/// operations, with element `i` being `members[i]`. `None` when empty.
pub(crate) fn pointwise_algebra(a: &FiniteAlgebra, members: &[&[u32]]) -> Result<Option<FiniteAlgebra>> {
    if members.is_empty() {
        return Ok(None);
    }
    let n = members.len();
    let width = members[0].len();
    let index: HashMap<&[u32], u32> = members.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
    let mut ops = Vec::with_capacity(a.ops().len());
    for (name, op) in a.ops() {
        table_len(n, op.arity())?;
        let mut point = vec![0u32; op.arity()];
        let mut value = vec![0u32; width];
        let table = FinOpTable::try_from_fn(op.arity(), n, |idx| {
            for (row, slot) in value.iter_mut().enumerate() {
                for (p, &i) in point.iter_mut().zip(idx) {
                    *p = members[i as usize][row];
                }
                *slot = op.get(&point);
            }
            *index.get(value.as_slice()).expect("members are closed")
        })?;
        ops.push((name.clone(), table));
    }
    FiniteAlgebra::new(n, ops).map(Some)
}

/// `f̃(s) = q(f, s)` in the value-domain algebra of a functional clone algebra.
pub fn downarrow_eval(f: &OmegaOp, args: &OmegaOpSeq) -> Result<OmegaOp> {
    omega_q(f, args)
}

/// The term clone of `A` by dimension, with levels generated on demand.
#[derive(Debug, Clone)]
pub struct TermOpIndex<'a> {
    algebra: &'a FiniteAlgebra,
    budget: usize,
    levels: BTreeMap<usize, CloneLevel>,
}

impl<'a> TermOpIndex<'a> {
    pub fn new(algebra: &'a FiniteAlgebra, budget: usize) -> Self {
        TermOpIndex {
            algebra,
            budget,
            levels: BTreeMap::new(),
        }
    }

    pub fn level(&mut self, k: usize) -> Result<&CloneLevel> {
        if !self.levels.contains_key(&k) {
            let level = clone_gen(self.algebra, k, self.budget)?;
            self.levels.insert(k, level);
        }
        Ok(&self.levels[&k])
    }

    /// The members of dimension at most `k`.
    pub fn members(&mut self, k: usize) -> Result<Vec<OmegaOp>> {
        let mut out: Vec<OmegaOp> = self.level(k)?.functions().iter().map(OmegaOp::top_extend).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn lookup(&self, t: &MetaTerm) -> Result<OmegaOp> {
        term_op(self.algebra, t)
    }

    /// A finitary term whose top extension is `op`, if `op` is a term
    /// operation.
    pub fn witness(&mut self, op: &OmegaOp) -> Result<Option<FinTerm>> {
        let n = op.dim().max(1);
        let table = op.table_at(n)?;
        Ok(self.level(n)?.witness(&table).cloned())
    }

    pub fn contains(&mut self, op: &OmegaOp) -> Result<bool> {
        Ok(self.witness(op)?.is_some())
    }
}

/// All values of `A^k`, row-major, as used for the free carrier tables.
pub fn rank_points(carrier: usize, k: usize) -> Vec<Vec<u32>> {
    Tuples::new(k, carrier).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::op_seq;
    use crate::clone::DEFAULT_CLONE_BUDGET;
    use crate::term::{Signature, Tail};

    fn meet() -> FiniteAlgebra {
        FiniteAlgebra::from_tables(2, &[("and", 2, vec![0, 0, 0, 1])]).unwrap()
    }

    fn z2() -> FiniteAlgebra {
        FiniteAlgebra::from_tables(2, &[("+", 2, vec![0, 1, 1, 0]), ("zero", 0, vec![0])]).unwrap()
    }

    #[test]
    fn semilattice_rank_two() {
        let f = free_algebra(&meet(), 2, DEFAULT_CLONE_BUDGET).unwrap();
        let alg = f.algebra.as_ref().unwrap();
        assert_eq!(alg.carrier(), 3);
        assert_eq!(f.generators(), vec![0, 1]);
        // e0 ∧ e1 is element 2, and meets are pointwise.
        assert_eq!(alg.op("and").unwrap().get(&[0, 1]), 2);
        assert_eq!(alg.op("and").unwrap().get(&[2, 0]), 2);
        assert_eq!(alg.op("and").unwrap().get(&[1, 1]), 1);
    }

    #[test]
    fn z2_rank_one() {
        let f = free_algebra(&z2(), 1, DEFAULT_CLONE_BUDGET).unwrap();
        let shown: Vec<String> = f.level.witnesses().iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["e0", "(zero)"]);
    }

    #[test]
    fn rank_zero() {
        assert!(free_algebra(&meet(), 0, DEFAULT_CLONE_BUDGET).unwrap().algebra.is_none());
        let f = free_algebra(&z2(), 0, DEFAULT_CLONE_BUDGET).unwrap();
        assert_eq!(f.algebra.unwrap().carrier(), 1);
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let a = meet();
        let f = free_algebra(&a, 2, DEFAULT_CLONE_BUDGET).unwrap();
        let alg = f.algebra.as_ref().unwrap();
        for x in rank_points(2, 2) {
            let labels = f.evaluation(&x);
            alg.hom_image(&a, &labels).unwrap();
        }
    }

    #[test]
    fn downarrow() {
        let plus = z2().top_extensions()["+"].clone();
        let swapped = op_seq(2, vec![OmegaOp::projection(2, 1), OmegaOp::projection(2, 0)], Tail::Affine { a: 1, b: 0 });
        let r = downarrow_eval(&plus, &swapped).unwrap();
        assert_eq!(r, plus);
        assert_eq!(downarrow_eval(&OmegaOp::projection(2, 1), &swapped).unwrap(), OmegaOp::projection(2, 0));
    }

    #[test]
    fn index_membership() {
        let a = meet();
        let mut idx = TermOpIndex::new(&a, DEFAULT_CLONE_BUDGET);
        let and = a.top_extensions()["and"].clone();
        assert!(idx.contains(&and).unwrap());
        assert!(idx.contains(&OmegaOp::projection(2, 3)).unwrap());
        assert!(!idx.contains(&OmegaOp::constant(2, 0)).unwrap());
        assert_eq!(idx.members(2).unwrap().len(), 3);
        let sig = Signature::parse("and/2").unwrap();
        let t = crate::term::syntax::parse_meta("(and e1 e0)", Some(&sig)).unwrap();
        assert_eq!(idx.lookup(&t).unwrap(), and);
    }
}
