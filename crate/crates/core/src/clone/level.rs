use std::collections::HashMap;

use serde::Serialize;

use crate::alg::{table_len, FinOpTable, FiniteAlgebra, Tuples};
use crate::closure::{self, ClosureInput};
use crate::error::Result;
use crate::term::FinTerm;

/// Default cap on the number of members of a generated clone level.
pub const DEFAULT_CLONE_BUDGET: usize = 1_000_000;

/// The `k`-ary term operations of an algebra, each with a shortest witness
/// term (ties broken by term order), in discovery order.
#[derive(Debug, Clone)]
pub struct CloneLevel {
    carrier: usize,
    arity: usize,
    functions: Vec<FinOpTable>,
    witnesses: Vec<FinTerm>,
    index: HashMap<FinOpTable, usize>,
}

#[derive(Serialize)]
struct Entry<'a> {
    table: &'a [u32],
    witness: &'a FinTerm,
}

impl Serialize for CloneLevel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<Entry<'_>> = self
            .functions
            .iter()
            .zip(&self.witnesses)
            .map(|(t, w)| Entry {
                table: t.values(),
                witness: w,
            })
            .collect();
        let mut st = serializer.serialize_struct("CloneLevel", 4)?;
        st.serialize_field("carrier", &self.carrier)?;
        st.serialize_field("arity", &self.arity)?;
        st.serialize_field("size", &self.functions.len())?;
        st.serialize_field("functions", &entries)?;
        st.end()
    }
}

impl CloneLevel {
    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn functions(&self) -> &[FinOpTable] {
        &self.functions
    }

    pub fn witnesses(&self) -> &[FinTerm] {
        &self.witnesses
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FinOpTable, &FinTerm)> + '_ {
        self.functions.iter().zip(&self.witnesses)
    }

    pub fn contains(&self, table: &FinOpTable) -> bool {
        self.index.contains_key(table)
    }

    pub fn position(&self, table: &FinOpTable) -> Option<usize> {
        self.index.get(table).copied()
    }

    pub fn witness(&self, table: &FinOpTable) -> Option<&FinTerm> {
        self.position(table).map(|i| &self.witnesses[i])
    }
}

/// Generates `Clo_k(A)` breadth-first by term size.
pub fn clone_gen(a: &FiniteAlgebra, k: usize, budget: usize) -> Result<CloneLevel> {
    let m = a.carrier();
    let len = table_len(m, k)?;
    let tuples: Vec<Vec<u32>> = Tuples::new(k, m).collect();
    let seeds = (0..k)
        .map(|i| (tuples.iter().map(|t| t[i]).collect(), Vec::new()))
        .collect();
    let input = ClosureInput {
        names: a.ops().keys().cloned().collect(),
        src: a.ops().values().collect(),
        dst: None,
        key_len: len,
        payload_len: 0,
        seeds,
        budget,
    };
    let run = closure::run(&input)?;
    let mut functions = Vec::with_capacity(run.len());
    let mut witnesses = Vec::with_capacity(run.len());
    let mut index = HashMap::with_capacity(run.len());
    for id in 0..run.len() {
        let t = FinOpTable::from_values(k, m, run.key(id).to_vec())?;
        index.insert(t.clone(), id);
        functions.push(t);
        witnesses.push(run.term(id));
    }
    Ok(CloneLevel {
        carrier: m,
        arity: k,
        functions,
        witnesses,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meet() -> FiniteAlgebra {
        FiniteAlgebra::from_tables(2, &[("and", 2, vec![0, 0, 0, 1])]).unwrap()
    }

    #[test]
    fn semilattice_counts() {
        for (k, n) in [(1, 1), (2, 3), (3, 7)] {
            assert_eq!(clone_gen(&meet(), k, DEFAULT_CLONE_BUDGET).unwrap().len(), n);
        }
    }

    #[test]
    fn witnesses_are_shortest_and_ordered() {
        let level = clone_gen(&meet(), 2, DEFAULT_CLONE_BUDGET).unwrap();
        let shown: Vec<String> = level.witnesses().iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["e0", "e1", "(and e0 e1)"]);
    }

    #[test]
    fn pure_set_has_only_projections() {
        let set = FiniteAlgebra::new(3, Vec::<(String, FinOpTable)>::new()).unwrap();
        let level = clone_gen(&set, 1, DEFAULT_CLONE_BUDGET).unwrap();
        assert_eq!(level.len(), 1);
        assert!(level.contains(&FinOpTable::projection(1, 0, 3)));
        assert!(clone_gen(&set, 0, DEFAULT_CLONE_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let z3 = FiniteAlgebra::from_tables(3, &[("+", 2, vec![0, 1, 2, 1, 2, 0, 2, 0, 1])]).unwrap();
        assert!(clone_gen(&z3, 2, 3).is_err());
    }
}
