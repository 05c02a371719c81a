use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::alg::{table_len, FiniteAlgebra, Tuples};
use crate::clone::pointwise_algebra;
use crate::closure::{self, Closure, ClosureInput};
use crate::error::{Error, Result};
use crate::term::FinTerm;
use crate::verdict::Verdict;

/// Two terms that agree in the source algebra but not in the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub left: FinTerm,
    pub right: FinTerm,
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.left, self.right)
    }
}

/// One member of a generated pair clone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairMember {
    pub source: Vec<u32>,
    pub target: Vec<u32>,
    pub witness: FinTerm,
}

/// The map `t^A ↦ t^B` on `k`-ary term operations, as value tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsMap {
    pub arity: usize,
    pub pairs: Vec<PairMember>,
}

pub(crate) fn pair_closure(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    key_len: usize,
    payload_len: usize,
    seeds: Vec<(Vec<u32>, Vec<u32>)>,
    budget: usize,
) -> Result<Closure> {
    a.same_signature(b)?;
    let input = ClosureInput {
        names: a.ops().keys().cloned().collect(),
        src: a.ops().values().collect(),
        dst: Some(b.ops().values().collect()),
        key_len,
        payload_len,
        seeds,
        budget,
    };
    closure::run(&input)
}

fn separation(run: &Closure) -> Option<Separation> {
    run.conflict.as_ref().map(|c| Separation {
        left: c.later.clone(),
        right: c.earlier.clone(),
    })
}

fn projection_columns(m: usize, k: usize) -> Result<Vec<Vec<u32>>> {
    table_len(m, k)?;
    let tuples: Vec<Vec<u32>> = Tuples::new(k, m).collect();
    Ok((0..k).map(|i| tuples.iter().map(|t| t[i]).collect()).collect())
}

/// Decides whether `t^A ↦ t^B` is well defined on `k`-ary term operations.
pub fn eps_map(a: &FiniteAlgebra, b: &FiniteAlgebra, k: usize, budget: usize) -> Result<Verdict<EpsMap, Separation>> {
    let src = projection_columns(a.carrier(), k)?;
    let dst = projection_columns(b.carrier(), k)?;
    let key_len = table_len(a.carrier(), k)?;
    let payload_len = table_len(b.carrier(), k)?;
    let run = pair_closure(a, b, key_len, payload_len, src.into_iter().zip(dst).collect(), budget)?;
    if let Some(sep) = separation(&run) {
        return Ok(Verdict::Violated(sep));
    }
    let pairs = (0..run.len())
        .map(|id| PairMember {
            source: run.key(id).to_vec(),
            target: run.payload(id).to_vec(),
            witness: run.term(id),
        })
        .collect();
    Ok(Verdict::Holds(EpsMap { arity: k, pairs }))
}

/// Adds the least element not yet generated until everything is.
pub fn greedy_generators(b: &FiniteAlgebra) -> Result<Vec<u32>> {
    let mut gens = Vec::new();
    let mut seen = b.subalgebra_gen(&BTreeSet::new())?;
    while seen.len() < b.carrier() {
        let next = (0..b.carrier() as u32).find(|x| !seen.contains(x)).expect("missing element");
        gens.push(next);
        seen = b.subalgebra_gen(&gens.iter().copied().collect())?;
    }
    Ok(gens)
}

/// `B` as a homomorphic image of the subalgebra of `A^(A^g)` generated by the
/// projections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HspWitness {
    pub gens: Vec<u32>,
    /// Elements of the subalgebra, as tables of `g`-ary term operations.
    pub elements: Vec<Vec<u32>>,
    /// Image of each element in `B`.
    pub labels: Vec<u32>,
    pub witnesses: Vec<FinTerm>,
}

impl HspWitness {
    /// The subalgebra of `A^(A^g)` on `elements`, in the same order.
    pub fn subalgebra(&self, a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
        let members: Vec<&[u32]> = self.elements.iter().map(Vec::as_slice).collect();
        pointwise_algebra(a, &members)?.ok_or(Error::EmptyCarrier)
    }
}

/// Decides `B ∈ HSP(A)` through the term operations of arity `|gens|`.
///
/// `gens` defaults to [`greedy_generators`]. If the supplied tuple does not
/// generate `B`, the result is [`Error::NotGenerated`].
pub fn hsp_member(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    gens: Option<&[u32]>,
    budget: usize,
) -> Result<Verdict<HspWitness, Separation>> {
    a.same_signature(b)?;
    let gens = match gens {
        Some(g) => g.to_vec(),
        None => greedy_generators(b)?,
    };
    b.check_elements(gens.iter().copied())?;
    let g = gens.len();
    let key_len = table_len(a.carrier(), g)?;
    let seeds = projection_columns(a.carrier(), g)?
        .into_iter()
        .zip(&gens)
        .map(|(col, &r)| (col, vec![r]))
        .collect();
    let run = pair_closure(a, b, key_len, 1, seeds, budget)?;
    if let Some(sep) = separation(&run) {
        return Ok(Verdict::Violated(sep));
    }
    let labels: Vec<u32> = (0..run.len()).map(|id| run.payload(id)[0]).collect();
    let image: BTreeSet<u32> = labels.iter().copied().collect();
    if image.len() < b.carrier() {
        return Err(Error::NotGenerated { gens });
    }
    Ok(Verdict::Holds(HspWitness {
        gens,
        elements: (0..run.len()).map(|id| run.key(id).to_vec()).collect(),
        labels,
        witnesses: (0..run.len()).map(|id| run.term(id)).collect(),
    }))
}
