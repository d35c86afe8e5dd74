use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::cyclotomic::{divisors, gcd, is_prime, residue};
use crate::psl2::{ClassLabel, CyclicFrame};
use crate::{Error, Result};

/// A family `(ε_d)_{d|n}` of integer class functions, expressed in a frame
/// `<g_0>` of order `n`. Only non-zero values are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PADistribution {
    frame: CyclicFrame,
    values: BTreeMap<(u64, u64), i64>,
}

/// Which of the defining conditions a distribution breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `Σ_x ε_d(x) ≠ 1`.
    V1 { d: u64, sum: i64 },
    /// `ε_d(1) ≠ 0` for `d ≠ n`.
    V2 { d: u64, value: i64 },
    /// `ε_d(x) ≠ 0` although `|x|` does not divide `n/d`.
    V3 {
        d: u64,
        class: ClassLabel,
        value: i64,
    },
}

impl Violation {
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::V1 { .. } => "V1",
            Violation::V2 { .. } => "V2",
            Violation::V3 { .. } => "V3",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::V1 { d, sum } => write!(f, "V1: ε_{d} sums to {sum}, not 1"),
            Violation::V2 { d, value } => write!(f, "V2: ε_{d}(1) = {value}, must be 0"),
            Violation::V3 { d, class, value } => write!(
                f,
                "V3: ε_{d}({class}) = {value} but the order {} does not divide n/d",
                class.order
            ),
        }
    }
}

impl PADistribution {
    /// The all-zero family on `frame`; not a valid distribution until filled.
    pub fn empty(frame: CyclicFrame) -> Self {
        PADistribution {
            frame,
            values: BTreeMap::new(),
        }
    }

    pub fn frame(&self) -> &CyclicFrame {
        &self.frame
    }

    pub fn n(&self) -> u64 {
        self.frame.m()
    }

    pub fn q(&self) -> u64 {
        self.frame.q()
    }

    /// Set `ε_d(g_0^i)`; `i` may be any integer.
    pub fn set(&mut self, d: u64, i: i64, value: i64) -> Result<()> {
        if d == 0 || self.n() % d != 0 {
            return Err(Error::InvalidDistribution(format!(
                "level {d} does not divide n = {}",
                self.n()
            )));
        }
        let key = (d, self.frame.canonical_exp(i));
        if value == 0 {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
        Ok(())
    }

    pub fn with(mut self, d: u64, i: i64, value: i64) -> Result<Self> {
        self.set(d, i, value)?;
        Ok(self)
    }

    /// `ε_d(g_0^i)`.
    pub fn get(&self, d: u64, i: i64) -> i64 {
        let key = (d, self.frame.canonical_exp(i));
        self.values.get(&key).copied().unwrap_or(0)
    }

    /// Non-zero values as `(d, class, value)`, sorted by `(d, exp)`.
    pub fn entries(&self) -> impl Iterator<Item = (u64, ClassLabel, i64)> + '_ {
        self.values
            .iter()
            .map(|(&(d, e), &v)| (d, self.frame.class(e as i64), v))
    }

    pub fn level(&self, d: u64) -> impl Iterator<Item = (ClassLabel, i64)> + '_ {
        self.entries()
            .filter(move |&(dd, _, _)| dd == d)
            .map(|(_, c, v)| (c, v))
    }

    /// The defining linear conditions V1–V3 that fail.
    pub fn violations(&self) -> Vec<Violation> {
        let n = self.n();
        let mut out = Vec::new();
        for d in divisors(n) {
            let sum: i64 = self.level(d).map(|(_, v)| v).sum();
            if sum != 1 {
                out.push(Violation::V1 { d, sum });
            }
        }
        for (d, class, value) in self.entries() {
            if d != n && class.is_identity() {
                out.push(Violation::V2 { d, value });
            }
            if (n / d) % class.order != 0 {
                out.push(Violation::V3 { d, class, value });
            }
        }
        out
    }

    pub fn satisfies_linear_conditions(&self) -> bool {
        self.violations().is_empty()
    }

    /// Whether this is the distribution of an element of the group.
    pub fn is_tpa(&self) -> bool {
        let n = self.n();
        self.frame
            .classes_of_order(n)
            .into_iter()
            .any(|c| tpa(&self.frame, c.exp as i64).is_ok_and(|t| &t == self))
    }

    /// `(ε^{n/m})_d = ε_{d·n/m}`, written in the frame `<g_0^{n/m}>`.
    pub fn power(&self, m: u64) -> Result<PADistribution> {
        let n = self.n();
        if m == 0 || n % m != 0 {
            return Err(Error::NotADivisor { sub: m, m: n });
        }
        let k = n / m;
        let mut out = PADistribution::empty(self.frame.subframe(k)?);
        for (d, class, value) in self.entries().filter(|(d, _, _)| d % k == 0) {
            if class.exp % k != 0 {
                return Err(Error::InvalidDistribution(format!(
                    "ε_{d} is non-zero at {class}, which lies outside <g_0^{k}>"
                )));
            }
            out.set(d / k, (class.exp / k) as i64, value)?;
        }
        Ok(out)
    }

    /// Relabel the frame by `g_0 ↦ g_0^c`, `gcd(c, n) = 1`.
    pub fn relabel(&self, c: i64) -> Result<PADistribution> {
        let n = self.n();
        if gcd(residue(c, n), n) != 1 {
            return Err(Error::Precondition(format!(
                "{c} is not coprime to n = {n}"
            )));
        }
        let mut out = PADistribution::empty(self.frame);
        for (d, class, value) in self.entries() {
            out.set(d, class.exp as i64 * c, value)?;
        }
        Ok(out)
    }

    /// `ε̃_d(m)`: sum of `ε_d` over the classes of elements of order exactly `m`.
    pub fn accumulated(&self, d: u64, m: u64) -> i64 {
        self.level(d)
            .filter(|(c, _)| c.order == m)
            .map(|(_, v)| v)
            .sum()
    }

    fn sort_key(&self) -> (u64, u64, Vec<(u64, u64, i64)>) {
        (
            self.q(),
            self.n(),
            self.values.iter().map(|(&(d, e), &v)| (d, e, v)).collect(),
        )
    }
}

impl PartialOrd for PADistribution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PADistribution {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for PADistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in divisors(self.n()) {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "ε_{d}:")?;
            let mut any = false;
            for (c, v) in self.level(d) {
                write!(f, " {c}↦{v}")?;
                any = true;
            }
            if !any {
                write!(f, " 0")?;
            }
        }
        Ok(())
    }
}

/// Distribution of `g_0^i` (which must have order `n`): `ε_d` is `1` on the
/// class of `g_0^{id}` and `0` elsewhere.
pub fn tpa(frame: &CyclicFrame, i: i64) -> Result<PADistribution> {
    let n = frame.m();
    let class = frame.class(i);
    if class.order != n {
        return Err(Error::Precondition(format!(
            "{class} has order {}, not {n}",
            class.order
        )));
    }
    let mut pa = PADistribution::empty(*frame);
    for d in divisors(n) {
        pa.set(d, i * d as i64, 1)?;
    }
    Ok(pa)
}

/// One distribution per class of elements of order `n`, sorted.
pub fn tpa_set(frame: &CyclicFrame) -> Vec<PADistribution> {
    let mut out: Vec<_> = frame
        .classes_of_order(frame.m())
        .into_iter()
        .map(|c| tpa(frame, c.exp as i64).expect("class of order n"))
        .collect();
    out.sort();
    out
}

/// The non-trivial family for `n = 2t`, `t ≥ 5`, anchored at `g = g_0^i`
/// of order `2t`: value `1` at `(2t, 1)`, `(t, g^t)`, `(2, g^2)`,
/// `(1, g^{(t−1)/2})`, `(1, g^{(t+1)/2})`, value `−1` at `(1, g^{t−1})`.
pub fn exceptional(frame: &CyclicFrame, t: u64, i: i64) -> Result<PADistribution> {
    if t == 3 {
        return Err(Error::ExceptionalNeedsLargeT(t));
    }
    if t < 3 || !is_prime(t) {
        return Err(Error::Precondition(format!("t = {t} must be an odd prime")));
    }
    if frame.m() != 2 * t {
        return Err(Error::Precondition(format!(
            "frame order {} is not 2t = {}",
            frame.m(),
            2 * t
        )));
    }
    let class = frame.class(i);
    if class.order != 2 * t {
        return Err(Error::Precondition(format!(
            "{class} does not have order 2t"
        )));
    }
    let t = t as i64;
    PADistribution::empty(*frame)
        .with(2 * t as u64, 0, 1)?
        .with(t as u64, i * t, 1)?
        .with(2, i * 2, 1)?
        .with(1, i * (t - 1) / 2, 1)?
        .with(1, i * (t + 1) / 2, 1)?
        .with(1, i * (t - 1), -1)
}

/// Every exceptional family, one per class of order `2t`, sorted.
pub fn exceptional_set(frame: &CyclicFrame, t: u64) -> Result<Vec<PADistribution>> {
    let mut out = frame
        .classes_of_order(2 * t)
        .into_iter()
        .map(|c| exceptional(frame, t, c.exp as i64))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// `t | ε̃_1(t)` and `r | ε̃_1(r)`.
pub fn check_wagner(pa: &PADistribution, r: u64, t: u64) -> bool {
    pa.accumulated(1, t) % t as i64 == 0 && pa.accumulated(1, r) % r as i64 == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psl2::GroupContext;

    fn frame(q: u64, m: u64) -> CyclicFrame {
        CyclicFrame::new(GroupContext::new(q).unwrap(), m).unwrap()
    }

    #[test]
    fn tpa_counts() {
        assert_eq!(tpa_set(&frame(19, 10)).len(), 2);
        assert_eq!(tpa_set(&frame(13, 6)).len(), 1);
        assert_eq!(tpa_set(&frame(11, 5)).len(), 2);
        let trivial = tpa_set(&frame(19, 1));
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].get(1, 0), 1);
        for pa in tpa_set(&frame(29, 14)) {
            assert!(pa.violations().is_empty());
            assert!(pa.is_tpa());
        }
    }

    #[test]
    fn exceptional_t5() {
        let f = frame(19, 10);
        let e = exceptional(&f, 5, 1).unwrap();
        let expected = [
            (1, 2, 1),
            (1, 3, 1),
            (1, 4, -1),
            (2, 2, 1),
            (5, 5, 1),
            (10, 0, 1),
        ];
        let got: Vec<_> = e.entries().map(|(d, c, v)| (d, c.exp, v)).collect();
        assert_eq!(got, expected);
        assert!(e.violations().is_empty());
        assert!(!e.is_tpa());
        let level1: i64 = e.level(1).map(|(_, v)| v).sum();
        assert_eq!(level1, 1);

        let e3 = exceptional(&f, 5, 3).unwrap();
        assert_eq!(e3.get(2, 4), 1);
        assert_eq!(e3.level(2).count(), 1);
        assert_eq!(e.relabel(3).unwrap(), e3);
        assert_eq!(
            exceptional(&frame(13, 6), 3, 1),
            Err(Error::ExceptionalNeedsLargeT(3))
        );
        assert!(exceptional(&f, 5, 2).is_err());
    }

    #[test]
    fn accumulated_values() {
        let f = frame(19, 10);
        let e = exceptional(&f, 5, 1).unwrap();
        assert_eq!(e.accumulated(1, 5), 0);
        assert_eq!(e.accumulated(1, 2), 0);
        assert_eq!(e.accumulated(1, 10), 1);
        assert!(check_wagner(&e, 2, 5));
        let t = tpa(&f, 1).unwrap();
        assert_eq!(t.accumulated(1, 10), 1);
        assert!(check_wagner(&t, 2, 5));
        let bad = PADistribution::empty(f)
            .with(1, 2, 1)
            .unwrap()
            .with(2, 2, 1)
            .unwrap();
        assert!(!check_wagner(&bad, 2, 5));
    }

    #[test]
    fn violations_are_named() {
        let f = frame(19, 10);
        let mut e = exceptional(&f, 5, 1).unwrap();
        e.set(1, 4, 0).unwrap();
        assert_eq!(e.violations(), vec![Violation::V1 { d: 1, sum: 2 }]);
        let mut e = tpa(&f, 1).unwrap();
        e.set(1, 1, 0).unwrap();
        e.set(1, 0, 1).unwrap();
        let v = e.violations();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].condition(), "V2");
        let mut e = tpa(&f, 1).unwrap();
        e.set(2, 2, 0).unwrap();
        e.set(2, 1, 1).unwrap();
        assert_eq!(e.violations()[0].condition(), "V3");
    }

    #[test]
    fn powers_and_relabeling() {
        let f = frame(19, 10);
        let t = tpa(&f, 1).unwrap();
        assert_eq!(t.power(10).unwrap(), t);
        let one = t.power(1).unwrap();
        assert_eq!(one.n(), 1);
        assert_eq!(one.get(1, 0), 1);
        let sub = f.subframe(2).unwrap();
        assert_eq!(t.power(5).unwrap(), tpa(&sub, 1).unwrap());
        assert_eq!(t.relabel(1).unwrap(), t);
        assert_eq!(t.relabel(-1).unwrap(), t);
        assert_eq!(t.relabel(3).unwrap(), tpa(&f, 3).unwrap());
        assert!(t.relabel(5).is_err());
        let e = exceptional(&f, 5, 1).unwrap();
        for c in [1, 3, 7, 9] {
            for m in [1, 2, 5, 10] {
                assert_eq!(
                    e.relabel(c).unwrap().power(m).unwrap(),
                    e.power(m).unwrap().relabel(c).unwrap()
                );
            }
        }
    }
}
