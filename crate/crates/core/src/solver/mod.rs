//! Exact enumeration of every integer solution of a constraint system.
//!
//! The pipeline is: build rows for a character [`Family`], check that the
//! stacked coefficient matrix has full column rank (so the relaxation is
//! bounded), bound each variable by exact rational linear programming, then
//! search the resulting box with interval and congruence propagation.

mod family;
mod linalg;
mod search;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

pub use family::Family;

use crate::help::{
    build_constraints, tabulate, ConstraintSystem, PADistribution, SolutionSet, VariableLayout,
};
use crate::psl2::CyclicFrame;
use crate::{Error, Result, Scalar};
use linalg::{minimize_standard, LpOutcome, Q};
use search::{Control, Problem, Row};

/// Closed integer interval per variable. An empty box (`lo > hi` somewhere)
/// means the relaxation itself is infeasible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsBox {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

impl BoundsBox {
    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.iter().zip(&self.upper).any(|(lo, hi)| lo > hi)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.len()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    /// Number of integer points, saturating.
    pub fn volume(&self) -> u128 {
        if self.is_empty() {
            return 0;
        }
        self.lower
            .iter()
            .zip(&self.upper)
            .fold(1u128, |acc, (lo, hi)| {
                acc.saturating_mul((hi - lo + 1) as u128)
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of search nodes; `None` for no limit.
    pub budget: Option<u64>,
    /// Worker threads; `None` uses all available cores.
    pub workers: Option<usize>,
    /// Add the Brauer characters modulo `p` when the family is rank-deficient.
    pub augment: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            budget: None,
            workers: None,
            augment: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub solutions: SolutionSet,
    pub nodes: u64,
    pub bounds: BoundsBox,
    pub rank: usize,
    pub variables: usize,
    /// Ids of the characters that generated the rows.
    pub characters: Vec<String>,
    /// Whether the requested family had to be extended to reach full rank.
    pub augmented: bool,
}

impl EnumerationReport {
    pub fn family(&self) -> &str {
        &self.solutions.family
    }

    /// Full rank, hence the box and the enumeration cover every solution.
    pub fn is_complete(&self) -> bool {
        self.rank == self.variables
    }
}

/// Exact rank of the stacked row coefficients.
pub fn rank_check<T: Scalar>(system: &ConstraintSystem<T>) -> usize {
    let rows: Vec<Vec<BigInt>> = system
        .rows
        .iter()
        .map(|r| r.coeffs.iter().map(to_bigint).collect())
        .collect();
    linalg::rank(&rows)
}

fn to_bigint<T: Scalar>(v: &T) -> BigInt {
    // every Scalar in use converts losslessly through its decimal form
    v.to_i128()
        .map(BigInt::from)
        .unwrap_or_else(|| v.to_string().parse().expect("integer display"))
}

fn q_of<T: Scalar>(v: &T) -> Q {
    Q::from_integer(to_bigint(v))
}

/// Distinct `(coeffs, constant, upper)` rows, as exact rationals.
fn distinct_rows<T: Scalar>(system: &ConstraintSystem<T>) -> Vec<(Vec<Q>, Q, Q)> {
    let mut rows: Vec<(Vec<Q>, Q, Q)> = system
        .rows
        .iter()
        .map(|r| {
            (
                r.coeffs.iter().map(q_of).collect(),
                q_of(&r.constant),
                q_of(&r.upper),
            )
        })
        .collect();
    rows.sort();
    rows.dedup();
    rows
}

/// Per-variable LP bounds under `0 ≤ a·x + c ≤ n·χ(1)` and the level
/// equalities.
///
/// Each bound `max ±x_i` is computed through the dual program
/// `min b·y s.t. Aᵀy = ±e_i, y ≥ 0`, whose feasibility is guaranteed by
/// full column rank.
pub fn derive_bounds<T: Scalar>(system: &ConstraintSystem<T>) -> Result<BoundsBox> {
    let vars = system.layout.len();
    let rank = rank_check(system);
    if rank < vars {
        return Err(Error::UnboundedRelaxation { rank, vars });
    }
    // primal: A x ≤ b with both sides of each row and both signs of each
    // level equality
    let mut a: Vec<Vec<Q>> = Vec::new();
    let mut b: Vec<Q> = Vec::new();
    for (coeffs, c, upper) in distinct_rows(system) {
        a.push(coeffs.iter().map(|v| -v.clone()).collect());
        b.push(c.clone());
        a.push(coeffs);
        b.push(upper - c);
    }
    for (_, idx) in system.layout.levels() {
        let row: Vec<Q> = (0..vars)
            .map(|j| Q::from_integer(BigInt::from(idx.contains(&j) as i64)))
            .collect();
        a.push(row.iter().map(|v| -v.clone()).collect());
        b.push(-Q::from_integer(BigInt::from(1)));
        a.push(row);
        b.push(Q::from_integer(BigInt::from(1)));
    }
    // dual constraint matrix Aᵀ (vars × rows)
    let at: Vec<Vec<Q>> = (0..vars)
        .map(|i| a.iter().map(|row| row[i].clone()).collect())
        .collect();
    let mut lower = Vec::with_capacity(vars);
    let mut upper = Vec::with_capacity(vars);
    for i in 0..vars {
        let mut extremes = [0i64; 2];
        for (k, sign) in [1i64, -1].into_iter().enumerate() {
            let e: Vec<Q> = (0..vars)
                .map(|j| Q::from_integer(BigInt::from(if j == i { sign } else { 0 })))
                .collect();
            let best = match minimize_standard(&at, &e, &b) {
                LpOutcome::Optimal(v) => v,
                // the dual is unbounded exactly when the primal is empty
                LpOutcome::Unbounded => {
                    return Ok(BoundsBox {
                        lower: vec![1; vars],
                        upper: vec![0; vars],
                    })
                }
                LpOutcome::Infeasible => return Err(Error::UnboundedRelaxation { rank, vars }),
            };
            let rounded = best.floor().to_integer();
            extremes[k] = rounded
                .to_i64()
                .ok_or_else(|| Error::Precondition("variable bound exceeds 64 bits".into()))?;
        }
        upper.push(extremes[0]);
        lower.push(-extremes[1]);
    }
    Ok(BoundsBox { lower, upper })
}

fn to_i128<T: Scalar>(v: &T) -> Result<i128> {
    v.to_i128()
        .ok_or_else(|| Error::Precondition(format!("coefficient {v} exceeds 128 bits")))
}

fn search_problem<T: Scalar>(system: &ConstraintSystem<T>, bounds: &BoundsBox) -> Result<Problem> {
    let n = system.n() as i128;
    let vars = system.layout.len();
    let span = bounds
        .lower
        .iter()
        .chain(&bounds.upper)
        .map(|v| v.unsigned_abs() as i128)
        .max()
        .unwrap_or(0);
    let mut rows = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for r in &system.rows {
        let coeffs = r.coeffs.iter().map(to_i128).collect::<Result<Vec<_>>>()?;
        let constant = to_i128(&r.constant)?;
        let upper = to_i128(&r.upper)?;
        if !seen.insert((coeffs.clone(), constant, upper)) {
            continue;
        }
        let weight = coeffs.iter().try_fold(constant.abs().max(upper), |acc, a| {
            a.checked_abs()?.checked_mul(span)?.checked_add(acc)
        });
        if weight.is_none() || weight > Some(i128::MAX / 4) {
            return Err(Error::Precondition(
                "search range exceeds 128-bit arithmetic".into(),
            ));
        }
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .collect();
        rows.push(Row {
            terms,
            constant,
            lo: 0,
            hi: upper,
            modulus: n,
        });
    }
    for (_, idx) in system.layout.levels() {
        rows.push(Row {
            terms: idx.into_iter().map(|j| (j, 1)).collect(),
            constant: 0,
            lo: 1,
            hi: 1,
            modulus: 1,
        });
    }
    Ok(Problem { vars, rows })
}

/// Every integer point of `bounds` satisfying all rows (non-negative,
/// divisible by `n`, at most `n·χ(1)`) and the level equalities.
pub fn enumerate<T: Scalar>(
    system: &ConstraintSystem<T>,
    bounds: &BoundsBox,
    config: &SolverConfig,
) -> Result<EnumerationReport> {
    let vars = system.layout.len();
    if bounds.len() != vars {
        return Err(Error::Precondition(format!(
            "box has {} coordinates, system has {vars} variables",
            bounds.len()
        )));
    }
    let problem = search_problem(system, bounds)?;
    let root = bounds
        .lower
        .iter()
        .zip(&bounds.upper)
        .map(|(&lo, &hi)| (lo as i128, hi as i128))
        .collect();
    let ctl = Control::new(config.budget);
    let workers = config
        .workers
        .unwrap_or_else(rayon::current_num_threads)
        .max(1);
    let points = if workers == 1 {
        problem.solve(root, &ctl, 1)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
        pool.install(|| problem.solve(root, &ctl, workers))
    };
    if ctl.aborted() {
        return Err(Error::Incomplete {
            budget: config.budget.unwrap_or(u64::MAX),
        });
    }
    let members = points
        .iter()
        .map(|x| system.layout.to_distribution(&system.frame, x))
        .collect();
    Ok(EnumerationReport {
        solutions: SolutionSet::new(system.frame.q(), system.n(), system.family.clone(), members),
        nodes: ctl.nodes(),
        bounds: bounds.clone(),
        rank: rank_check(system),
        variables: vars,
        characters: system.characters.iter().map(|c| c.id()).collect(),
        augmented: false,
    })
}

/// The constraint system of `family` on `frame`, with arbitrary-precision
/// coefficients.
pub fn system_for(frame: &CyclicFrame, family: &Family) -> Result<ConstraintSystem<BigInt>> {
    let layout = VariableLayout::new(frame);
    let tables = tabulate::<BigInt>(frame, &family.characters)?;
    build_constraints(frame, &family.name, &tables, &layout)
}

/// Builds, bounds and enumerates; extends a rank-deficient family with the
/// Brauer characters modulo `p` when `config.augment` is set.
pub fn solve(
    frame: &CyclicFrame,
    family: &Family,
    config: &SolverConfig,
) -> Result<EnumerationReport> {
    let mut system = system_for(frame, family)?;
    let vars = system.layout.len();
    let mut augmented = false;
    if rank_check(&system) < vars && config.augment {
        system = system_for(frame, &family.union(&Family::brauer(frame)))?;
        augmented = true;
    }
    let bounds = derive_bounds(&system)?;
    let mut report = enumerate(&system, &bounds, config)?;
    report.augmented = augmented;
    Ok(report)
}

/// Symmetric difference of two solution sets, compared by canonical JSON.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetDiff {
    /// In `expected` but not found.
    pub missing: Vec<PADistribution>,
    /// Found but not expected.
    pub unexpected: Vec<PADistribution>,
}

impl SetDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }

    pub fn len(&self) -> usize {
        self.missing.len() + self.unexpected.len()
    }
}

impl fmt::Display for SetDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for pa in &self.missing {
            writeln!(f, "- {pa}")?;
        }
        for pa in &self.unexpected {
            writeln!(f, "+ {pa}")?;
        }
        Ok(())
    }
}

pub fn compare_sets(found: &SolutionSet, expected: &SolutionSet) -> Result<SetDiff> {
    if (found.q, found.n) != (expected.q, expected.n) {
        return Err(Error::Precondition(format!(
            "cannot compare solutions for (q, n) = ({}, {}) and ({}, {})",
            found.q, found.n, expected.q, expected.n
        )));
    }
    let key = |s: &SolutionSet| -> std::collections::BTreeMap<String, PADistribution> {
        s.members()
            .iter()
            .map(|pa| (pa.to_json_string(), pa.clone()))
            .collect()
    };
    let (f, e) = (key(found), key(expected));
    Ok(SetDiff {
        missing: e
            .iter()
            .filter(|(k, _)| !f.contains_key(*k))
            .map(|(_, v)| v.clone())
            .collect(),
        unexpected: f
            .iter()
            .filter(|(k, _)| !e.contains_key(*k))
            .map(|(_, v)| v.clone())
            .collect(),
    })
}

#[cfg(test)]
mod tests;
