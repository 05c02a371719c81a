use std::collections::BTreeSet;

use serde::Serialize;

use super::eps::pair_closure;
use crate::alg::{table_len, FiniteAlgebra, PointSeq, Tuples};
use crate::clone::pointwise_algebra;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// Why the countable-family search reduces to the finite one.
pub const HSPW_RATIONALE: &str = "over a finite carrier there are finitely many g-ary term operations, \
so any family of evaluation points has a finite subfamily separating the same pairs; \
the search is therefore the finite-family search";

/// Points `s_0, …, s_{n-1}` of `A^g` such that `m_i = (s_0[i], …, s_{n-1}[i])`
/// generate a subalgebra of `A^n` mapping onto `B` by `m_i ↦ r_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UcWitness {
    pub n: usize,
    pub witnesses: Vec<PointSeq>,
    pub gens: Vec<u32>,
    /// `m_0, …, m_{g-1}` in `A^n`.
    pub generators: Vec<Vec<u32>>,
    /// The generated subalgebra of `A^n`, in discovery order.
    pub elements: Vec<Vec<u32>>,
    /// Image of each element in `B`.
    pub labels: Vec<u32>,
}

impl UcWitness {
    /// The subalgebra of `A^n` on `elements`, in the same order.
    pub fn subalgebra(&self, a: &FiniteAlgebra) -> Result<FiniteAlgebra> {
        let members: Vec<&[u32]> = self.elements.iter().map(Vec::as_slice).collect();
        pointwise_algebra(a, &members)?.ok_or(Error::EmptyCarrier)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Searches for a finite witness family of size at most `n_bound`.
///
/// Tuples are tried by increasing `n`, then as non-decreasing index sequences
/// into `A^g` in lexicographic order; reordering the points permutes the
/// coordinates of `A^n` and does not change the answer. The search never
/// refutes: failure up to the bound is reported as inconclusive.
pub fn hspfin_member(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    gens: &[u32],
    n_bound: usize,
    budget: usize,
) -> Result<Verdict<UcWitness, ()>> {
    a.same_signature(b)?;
    b.check_elements(gens.iter().copied())?;
    let generated = b.subalgebra_gen(&gens.iter().copied().collect::<BTreeSet<_>>())?;
    if generated.len() < b.carrier() {
        return Err(Error::NotGenerated { gens: gens.to_vec() });
    }
    let m = a.carrier();
    let g = gens.len();
    let points: Vec<Vec<u32>> = {
        table_len(m, g)?;
        Tuples::new(g, m).collect()
    };

    let mut tried = 0u64;
    for n in 1..=n_bound {
        let count = binomial(points.len() as u64 + n as u64 - 1, n as u64);
        if tried.saturating_add(count) > budget as u64 {
            return Err(Error::exhausted("witness tuples", budget));
        }
        tried += count;
        let mut pick = vec![0usize; n];
        loop {
            if let Some(w) = try_witness(a, b, gens, &points, &pick, budget)? {
                return Ok(Verdict::Holds(w));
            }
            let Some(j) = (0..n).rev().find(|&j| pick[j] + 1 < points.len()) else {
                break;
            };
            let v = pick[j] + 1;
            pick[j..].iter_mut().for_each(|p| *p = v);
        }
    }
    Ok(Verdict::Inconclusive { bound: n_bound })
}

fn try_witness(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    gens: &[u32],
    points: &[Vec<u32>],
    pick: &[usize],
    budget: usize,
) -> Result<Option<UcWitness>> {
    let n = pick.len();
    let generators: Vec<Vec<u32>> = (0..gens.len())
        .map(|i| pick.iter().map(|&p| points[p][i]).collect())
        .collect();
    let seeds = generators.iter().cloned().zip(gens.iter().map(|&r| vec![r])).collect();
    let run = pair_closure(a, b, n, 1, seeds, budget)?;
    if run.conflict.is_some() {
        return Ok(None);
    }
    Ok(Some(UcWitness {
        n,
        witnesses: pick.iter().map(|&p| PointSeq::new(points[p].clone(), 0)).collect(),
        gens: gens.to_vec(),
        generators,
        elements: (0..run.len()).map(|id| run.key(id).to_vec()).collect(),
        labels: (0..run.len()).map(|id| run.payload(id)[0]).collect(),
    }))
}

/// The countable-family variant. Over finite carriers it coincides with
/// [`hspfin_member`]; the returned string states why.
pub fn hspw_member(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    gens: &[u32],
    n_bound: usize,
    budget: usize,
) -> Result<(Verdict<UcWitness, ()>, &'static str)> {
    Ok((hspfin_member(a, b, gens, n_bound, budget)?, HSPW_RATIONALE))
}
