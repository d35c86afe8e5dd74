//! Exact rational linear algebra: rank and a small two-phase simplex.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<BigInt>;

/// Rank over `Q` by Gaussian elimination.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(Q::from_integer).collect())
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &prow[col];
            for (x, y) in row[col..width].iter_mut().zip(&prow[col..width]) {
                *x -= &f * y;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(Q),
    Infeasible,
    Unbounded,
}

/// `min c·w` subject to `B w = e`, `w ≥ 0`, with `B` given row-wise.
///
/// Dense tableau, Bland's rule, artificial variables in phase one.
pub fn minimize_standard(b: &[Vec<Q>], e: &[Q], c: &[Q]) -> LpOutcome {
    let rows = b.len();
    let cols = c.len();
    let total = cols + rows;
    // tableau rows: [coefficients | rhs]; artificials occupy columns cols..total
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(rows);
    for (i, row) in b.iter().enumerate() {
        let flip = e[i].is_negative();
        let mut r: Vec<Q> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        r.extend((0..rows).map(|k| if k == i { Q::one() } else { Q::zero() }));
        r.push(if flip { -e[i].clone() } else { e[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (cols..total).collect();

    // phase one: minimize the sum of artificials
    let phase1: Vec<Q> = (0..total)
        .map(|j| if j >= cols { Q::one() } else { Q::zero() })
        .collect();
    if run(&mut t, &mut basis, &phase1, total).is_none() {
        unreachable!("phase one is bounded below by zero");
    }
    let infeasibility: Q = basis
        .iter()
        .zip(&t)
        .filter(|(&j, _)| j >= cols)
        .map(|(_, r)| r[total].clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive remaining (zero-level) artificials out of the basis
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= cols {
            match (0..cols).find(|&j| !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut basis, i, j),
                None => {
                    t.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // phase two: artificial columns are frozen out
    let mut cost: Vec<Q> = c.to_vec();
    cost.extend((0..rows).map(|_| Q::zero()));
    match run(&mut t, &mut basis, &cost, cols) {
        None => LpOutcome::Unbounded,
        Some(()) => {
            let value = basis
                .iter()
                .zip(&t)
                .map(|(&j, r)| &cost[j] * &r[r.len() - 1])
                .sum();
            LpOutcome::Optimal(value)
        }
    }
}

fn pivot(t: &mut [Vec<Q>], basis: &mut [usize], row: usize, col: usize) {
    let p = t[row][col].clone();
    for v in t[row].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    basis[row] = col;
}

/// Simplex iterations with entering columns restricted to `0..allowed`.
/// Returns `None` when the objective is unbounded below.
fn run(t: &mut [Vec<Q>], basis: &mut [usize], cost: &[Q], allowed: usize) -> Option<()> {
    let rhs = t.first().map_or(0, |r| r.len() - 1);
    loop {
        // reduced cost c_j − c_B · column_j, smallest index first (Bland)
        let entering = (0..allowed).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let z: Q = basis
                .iter()
                .zip(t.iter())
                .map(|(&b, r)| &cost[b] * &r[j])
                .sum();
            (&cost[j] - z).is_negative()
        });
        let Some(j) = entering else {
            return Some(());
        };
        let mut leave: Option<(usize, Q)> = None;
        for (i, r) in t.iter().enumerate() {
            if !r[j].is_positive() {
                continue;
            }
            let ratio = &r[rhs] / &r[j];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (i, _) = leave?;
        pivot(t, basis, i, j);
    }
}
