//! Branch-and-prune over the integer box with interval and congruence
//! propagation.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_integer::Integer;
use rayon::prelude::*;

type Domain = Vec<(i128, i128)>;

/// `lo ≤ Σ a_j x_j + constant ≤ hi` and `≡ 0 (mod modulus)`.
#[derive(Clone, Debug)]
pub(crate) struct Row {
    pub terms: Vec<(usize, i128)>,
    pub constant: i128,
    pub lo: i128,
    pub hi: i128,
    pub modulus: i128,
}

pub(crate) struct Problem {
    pub vars: usize,
    pub rows: Vec<Row>,
}

pub(crate) struct Control {
    nodes: AtomicU64,
    budget: Option<u64>,
    aborted: AtomicBool,
}

impl Control {
    pub fn new(budget: Option<u64>) -> Self {
        Control {
            nodes: AtomicU64::new(0),
            budget,
            aborted: AtomicBool::new(false),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn aborted(&self) -> bool {
        self.aborted.load(Ordering::Relaxed)
    }

    fn tick(&self) -> bool {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| used > b) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted()
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

/// Smallest `v ≥ from` with `v ≡ 0 (mod n)` and `v ≡ s (mod g)`, if any is
/// `≤ to`. `g = 0` means `v = s` exactly.
fn first_allowed(from: i128, to: i128, n: i128, s: i128, g: i128) -> Option<i128> {
    if g == 0 {
        return (from <= s && s <= to && s.mod_floor(&n) == 0).then_some(s);
    }
    let mut v = div_ceil(from, n) * n;
    let period = n.lcm(&g);
    let limit = v + period;
    while v <= to && v < limit {
        if (v - s).mod_floor(&g) == 0 {
            return Some(v);
        }
        v += n;
    }
    None
}

fn last_allowed(from: i128, to: i128, n: i128, s: i128, g: i128) -> Option<i128> {
    if g == 0 {
        return first_allowed(from, to, n, s, g);
    }
    let mut v = div_floor(to, n) * n;
    let period = n.lcm(&g);
    let limit = v - period;
    while v >= from && v > limit {
        if (v - s).mod_floor(&g) == 0 {
            return Some(v);
        }
        v -= n;
    }
    None
}

impl Row {
    /// Tightens `dom` using this row; `false` when the row cannot be met.
    fn propagate(&self, dom: &mut Domain, changed: &mut bool) -> bool {
        let mut fixed = self.constant;
        let mut g = 0i128;
        let (mut min, mut max) = (0i128, 0i128);
        for &(j, a) in &self.terms {
            let (lo, hi) = dom[j];
            if lo == hi {
                fixed += a * lo;
            } else {
                g = g.gcd(&a);
                let (x, y) = (a * lo, a * hi);
                min += x.min(y);
                max += x.max(y);
            }
        }
        let from = self.lo.max(fixed + min);
        let to = self.hi.min(fixed + max);
        if from > to {
            return false;
        }
        let (Some(vlo), Some(vhi)) = (
            first_allowed(from, to, self.modulus, fixed, g),
            last_allowed(from, to, self.modulus, fixed, g),
        ) else {
            return false;
        };
        if g == 0 {
            return true;
        }
        for &(j, a) in &self.terms {
            let (lo, hi) = dom[j];
            if lo == hi {
                continue;
            }
            let (x, y) = (a * lo, a * hi);
            let rest_min = fixed + min - x.min(y);
            let rest_max = fixed + max - x.max(y);
            // a·x_j ∈ [vlo − rest_max, vhi − rest_min]
            let (p, q) = (vlo - rest_max, vhi - rest_min);
            let (nlo, nhi) = if a > 0 {
                (div_ceil(p, a), div_floor(q, a))
            } else {
                (div_ceil(q, a), div_floor(p, a))
            };
            let (nlo, nhi) = (nlo.max(lo), nhi.min(hi));
            if nlo > nhi {
                return false;
            }
            if (nlo, nhi) != (lo, hi) {
                dom[j] = (nlo, nhi);
                *changed = true;
                // later terms in this pass use the stale sums, which only
                // makes their bounds weaker; the outer loop re-runs
            }
        }
        true
    }
}

impl Problem {
    fn propagate(&self, dom: &mut Domain) -> bool {
        loop {
            let mut changed = false;
            for row in &self.rows {
                if !row.propagate(dom, &mut changed) {
                    return false;
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn branch_var(&self, dom: &Domain) -> Option<usize> {
        (0..self.vars)
            .filter(|&j| dom[j].0 < dom[j].1)
            .min_by_key(|&j| (dom[j].1 - dom[j].0, j))
    }

    fn children(&self, dom: &Domain, j: usize) -> Vec<Domain> {
        let (lo, hi) = dom[j];
        let mid = lo + (hi - lo) / 2;
        let mut values = vec![mid];
        let mut step = 1;
        while mid - step >= lo || mid + step <= hi {
            if mid + step <= hi {
                values.push(mid + step);
            }
            if mid - step >= lo {
                values.push(mid - step);
            }
            step += 1;
        }
        values
            .into_iter()
            .map(|v| {
                let mut d = dom.clone();
                d[j] = (v, v);
                d
            })
            .collect()
    }

    fn dfs(&self, mut dom: Domain, ctl: &Control, out: &mut Vec<Vec<i64>>) {
        if !ctl.tick() || !self.propagate(&mut dom) {
            return;
        }
        match self.branch_var(&dom) {
            None => out.push(dom.iter().map(|&(v, _)| v as i64).collect()),
            Some(j) => {
                for child in self.children(&dom, j) {
                    self.dfs(child, ctl, out);
                    if ctl.aborted() {
                        return;
                    }
                }
            }
        }
    }

    /// All integer points of `dom` meeting every row, unsorted.
    pub fn solve(&self, root: Domain, ctl: &Control, workers: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if root.iter().any(|&(lo, hi)| lo > hi) {
            return out;
        }
        // expand breadth-first until there is enough work to share
        let mut frontier = vec![root];
        let target = 8 * workers.max(1);
        while frontier.len() < target && workers > 1 {
            let mut next = Vec::new();
            let mut grew = false;
            for mut dom in frontier {
                if !ctl.tick() {
                    return out;
                }
                if !self.propagate(&mut dom) {
                    continue;
                }
                match self.branch_var(&dom) {
                    None => out.push(dom.iter().map(|&(v, _)| v as i64).collect()),
                    Some(j) => {
                        next.extend(self.children(&dom, j));
                        grew = true;
                    }
                }
            }
            frontier = next;
            if !grew {
                break;
            }
        }
        let found: Vec<Vec<Vec<i64>>> = frontier
            .into_par_iter()
            .map(|dom| {
                let mut local = Vec::new();
                self.dfs(dom, ctl, &mut local);
                local
            })
            .collect();
        out.extend(found.into_iter().flatten());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allowed_values() {
        assert_eq!(first_allowed(1, 20, 5, 0, 3), Some(15));
        assert_eq!(last_allowed(1, 20, 5, 0, 3), Some(15));
        assert_eq!(first_allowed(-7, 20, 5, 1, 2), Some(-5));
        assert_eq!(first_allowed(0, 4, 5, 0, 1), Some(0));
        assert_eq!(first_allowed(1, 4, 5, 0, 1), None);
        assert_eq!(first_allowed(0, 10, 5, 7, 0), None);
        assert_eq!(first_allowed(0, 10, 5, 10, 0), Some(10));
        assert_eq!(first_allowed(0, 100, 4, 1, 2), None);
    }

    #[test]
    fn small_search() {
        // x + y = 1, 0 ≤ 2x + 3 ≤ 30 with 2x + 3 ≡ 0 (mod 5)
        let p = Problem {
            vars: 2,
            rows: vec![
                Row {
                    terms: vec![(0, 1), (1, 1)],
                    constant: 0,
                    lo: 1,
                    hi: 1,
                    modulus: 1,
                },
                Row {
                    terms: vec![(0, 2)],
                    constant: 3,
                    lo: 0,
                    hi: 30,
                    modulus: 5,
                },
            ],
        };
        for workers in [1, 4] {
            let ctl = Control::new(None);
            let mut s = p.solve(vec![(-10, 10); 2], &ctl, workers);
            s.sort();
            assert_eq!(s, vec![vec![1, 0], vec![6, -5]]);
        }
        let ctl = Control::new(Some(0));
        p.solve(vec![(-10, 10); 2], &ctl, 1);
        assert!(ctl.aborted());
    }
}
