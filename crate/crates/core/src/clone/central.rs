//! Central elements of the clone of ω-ary operations on a finite set.
//!
//! For `a` of dimension `d` the three conditions reduce to finite checks:
//!
//! * (C1) `q(a, x, x, …) = x` holds iff `a(c, …, c) = c` for every `c`.
//! * (C2) only rows and columns below `d` of the variable grid are read.
//!   Row `i` enters the left side only through `a(G_i)`, whose possible
//!   values once `G_ii` is fixed are precomputed, so the check costs
//!   `O(m^{2d})` rather than `O(m^{d²})`.
//! * (C3) at a point, argument `i` of the left side is `y_i(Z^i)` and of the
//!   right side `y_i(W)` with `W_j = a(Z^0_j, …, Z^{d-1}_j)`. Let `E` be the
//!   set of coordinates `i` with `a(r) = r_i` for all `r`. For `i ∈ E` the two
//!   arguments coincide; for `i ∉ E` some column makes `Z^i ≠ W`, and `y_i`
//!   can then send the pair anywhere. So (C3) holds iff `a` depends only on
//!   the coordinates in `E`.

use serde::Serialize;

use crate::alg::{omega_q, op_seq, FinOpTable, OmegaOp, Tuples};
use crate::error::Result;
use crate::term::Tail;
use crate::verdict::Verdict;

/// Which condition fails, with data that can be checked by direct evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition")]
pub enum CentralViolation {
    /// `a(c, c, …) = value ≠ c`.
    C1 { c: u32, value: u32 },
    /// `grid[i][j]` is the value of `x_i^j`.
    C2 { grid: Vec<Vec<u32>>, lhs: u32, rhs: u32 },
    /// `grid[i][j]` is the value of `z_j^i`; `ys[i]` interprets `y_i`.
    C3 {
        ys: Vec<OmegaOp>,
        grid: Vec<Vec<u32>>,
        lhs: u32,
        rhs: u32,
    },
}

/// Evaluates the (C2) sides at a grid of values.
pub fn c2_sides(a: &OmegaOp, grid: &[Vec<u32>]) -> (u32, u32) {
    let d = a.dim();
    let rows: Vec<u32> = (0..d).map(|i| a.apply_prefix(&grid[i])).collect();
    let diag: Vec<u32> = (0..d).map(|i| grid[i][i]).collect();
    (a.apply_prefix(&rows), a.apply_prefix(&diag))
}

/// Evaluates the (C3) sides at a grid of values for the `z`s.
pub fn c3_sides(a: &OmegaOp, ys: &[OmegaOp], grid: &[Vec<u32>]) -> (u32, u32) {
    let d = a.dim();
    let width = grid.first().map_or(0, Vec::len);
    let w: Vec<u32> = (0..width)
        .map(|j| {
            let col: Vec<u32> = (0..d).map(|i| grid[i][j]).collect();
            a.apply_prefix(&col)
        })
        .collect();
    let read = |y: &OmegaOp, row: &[u32]| {
        let mut x = row.to_vec();
        x.resize(y.dim().max(x.len()), 0);
        y.apply_prefix(&x)
    };
    let lhs: Vec<u32> = (0..d).map(|i| read(&ys[i], &grid[i])).collect();
    let rhs: Vec<u32> = (0..d).map(|i| read(&ys[i], &w)).collect();
    (a.apply_prefix(&lhs), a.apply_prefix(&rhs))
}

/// Decides whether `a` is central.
pub fn check_central(a: &OmegaOp) -> Result<Verdict<(), CentralViolation>> {
    let m = a.carrier();
    let d = a.dim();

    // (C1): q(a, e_0, e_0, …) against e_0.
    let diag = omega_q(a, &op_seq(m, vec![], Tail::Const(Box::new(OmegaOp::projection(m, 0)))))?;
    if diag != OmegaOp::projection(m, 0) {
        let c = (0..m as u32)
            .find(|&c| a.apply_prefix(&vec![c; d]) != c)
            .expect("diagonal differs from identity somewhere");
        return Ok(Verdict::Violated(CentralViolation::C1 {
            c,
            value: a.apply_prefix(&vec![c; d]),
        }));
    }

    // (C2): row i contributes a(G_i), which ranges over `reach[i][c]` once
    // the diagonal entry G_ii = c is fixed, independently across rows.
    let tuples: Vec<Vec<u32>> = Tuples::new(d, m).collect();
    let mut reach = vec![vec![Vec::<u32>::new(); m]; d];
    for r in &tuples {
        let v = a.apply_prefix(r);
        for (i, slots) in reach.iter_mut().enumerate() {
            let set = &mut slots[r[i] as usize];
            if !set.contains(&v) {
                set.push(v);
            }
        }
    }
    for g in &tuples {
        let want = a.apply_prefix(g);
        let choices: Vec<&[u32]> = (0..d).map(|i| reach[i][g[i] as usize].as_slice()).collect();
        let mut pick = vec![0usize; d];
        loop {
            let v: Vec<u32> = (0..d).map(|i| choices[i][pick[i]]).collect();
            if a.apply_prefix(&v) != want {
                let grid: Vec<Vec<u32>> = (0..d)
                    .map(|i| {
                        tuples
                            .iter()
                            .find(|r| r[i] == g[i] && a.apply_prefix(r) == v[i])
                            .expect("reachable value")
                            .clone()
                    })
                    .collect();
                let (lhs, rhs) = c2_sides(a, &grid);
                return Ok(Verdict::Violated(CentralViolation::C2 { grid, lhs, rhs }));
            }
            let Some(i) = (0..d).rev().find(|&i| pick[i] + 1 < choices[i].len()) else {
                break;
            };
            pick[i] += 1;
            pick[i + 1..].iter_mut().for_each(|p| *p = 0);
        }
    }

    // (C3)
    let fixed: Vec<usize> = (0..d)
        .filter(|&i| tuples.iter().all(|r| a.apply_prefix(r) == r[i]))
        .collect();
    let pair = tuples.iter().find_map(|p| {
        tuples.iter().find(|q| {
            fixed.iter().all(|&i| p[i] == q[i]) && a.apply_prefix(p) != a.apply_prefix(q)
        })
        .map(|q| (p.clone(), q.clone()))
    });
    let Some((p, q)) = pair else {
        return Ok(Verdict::Holds(()));
    };
    // Column i of the grid is a tuple r with r_i ≠ a(r); y_i reads coordinate
    // i and sends r_i to p_i and a(r) to q_i.
    let mut grid = vec![vec![0u32; d]; d];
    let mut ys = Vec::with_capacity(d);
    for i in 0..d {
        if fixed.contains(&i) {
            ys.push(OmegaOp::constant(m, p[i]));
            continue;
        }
        let r = tuples
            .iter()
            .find(|r| r[i] != a.apply_prefix(r))
            .expect("coordinate outside the fixed set");
        for (k, row) in grid.iter_mut().enumerate() {
            row[i] = r[k];
        }
        let (from_z, from_w) = (r[i], a.apply_prefix(r));
        let table = FinOpTable::from_fn(i + 1, m, |x| {
            if x[i] == from_z {
                p[i]
            } else if x[i] == from_w {
                q[i]
            } else {
                0
            }
        });
        ys.push(OmegaOp::top_extend(&table));
    }
    let (lhs, rhs) = c3_sides(a, &ys, &grid);
    debug_assert_ne!(lhs, rhs);
    Ok(Verdict::Violated(CentralViolation::C3 { ys, grid, lhs, rhs }))
}
