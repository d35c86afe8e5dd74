//! Cyclic subgroups of `PSL(2,q)` and character restrictions to them.
//!
//! Everything is expressed inside a fixed cyclic frame `<g_0>` of order `m`
//! coprime to `p`. Two powers `g_0^i`, `g_0^j` are conjugate in `G` iff
//! `i ≡ ±j (mod m)`, so a class is identified by its canonical exponent
//! `min(i mod m, m − i mod m)`. No matrices are ever built; choosing a
//! different `g_0` is an exponent relabeling.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{gcd, prime_power, residue, CycSum};
use crate::{from_i64, Error, Result, Scalar};

/// `q = p^f` with `p` an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupContext {
    q: u64,
    p: u64,
    f: u32,
}

impl GroupContext {
    pub fn new(q: u64) -> Result<Self> {
        match prime_power(q) {
            Some((p, f)) if p != 2 => Ok(GroupContext { q, p, f }),
            _ => Err(Error::NotOddPrimePower(q)),
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// `|PSL(2,q)| = q(q−1)(q+1)/2`.
    pub fn group_order(&self) -> u128 {
        let q = self.q as u128;
        q * (q - 1) * (q + 1) / 2
    }

    /// Whether `G` has an element of order `m` coprime to `p`.
    pub fn has_regular_element(&self, m: u64) -> bool {
        m >= 1 && gcd(m, self.q) == 1 && (m <= 2 || epsilon_for(self.q, m).is_some())
    }
}

pub fn make_context(q: u64) -> Result<GroupContext> {
    GroupContext::new(q)
}

fn epsilon_for(q: u64, m: u64) -> Option<i64> {
    let r = q % (2 * m);
    if r == 1 % (2 * m) {
        Some(1)
    } else if r == 2 * m - 1 {
        Some(-1)
    } else {
        None
    }
}

/// The cyclic group `<g_0>` of order `m`, `gcd(m, q) = 1`, with the sign
/// `ε` such that `q ≡ ε (mod 2m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicFrame {
    ctx: GroupContext,
    m: u64,
    epsilon: i64,
}

impl CyclicFrame {
    pub fn new(ctx: GroupContext, m: u64) -> Result<Self> {
        if m == 0 || gcd(m, ctx.q) != 1 {
            return Err(Error::NotPRegular { q: ctx.q, m });
        }
        let epsilon = if m <= 2 {
            // Every odd q is ±1 mod 4; for m = 1 the sign is never used.
            epsilon_for(ctx.q, 2).expect("odd q")
        } else {
            epsilon_for(ctx.q, m).ok_or(Error::NoElementOfOrder { q: ctx.q, m })?
        };
        Ok(CyclicFrame { ctx, m, epsilon })
    }

    pub fn ctx(&self) -> GroupContext {
        self.ctx
    }

    pub fn q(&self) -> u64 {
        self.ctx.q
    }

    pub fn p(&self) -> u64 {
        self.ctx.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn epsilon(&self) -> i64 {
        self.epsilon
    }

    pub fn canonical_exp(&self, i: i64) -> u64 {
        let r = residue(i, self.m);
        r.min(self.m - r)
    }

    /// Class of `g_0^i`.
    pub fn class(&self, i: i64) -> ClassLabel {
        let exp = self.canonical_exp(i);
        ClassLabel {
            order: self.m / gcd(self.m, exp),
            exp,
        }
    }

    /// All `⌊m/2⌋ + 1` classes meeting `<g_0>`, ordered by exponent.
    pub fn classes(&self) -> Vec<ClassLabel> {
        (0..=self.m / 2).map(|e| self.class(e as i64)).collect()
    }

    pub fn classes_of_order_dividing(&self, sub: u64) -> Result<Vec<ClassLabel>> {
        if sub == 0 || self.m % sub != 0 {
            return Err(Error::NotADivisor { sub, m: self.m });
        }
        Ok(self
            .classes()
            .into_iter()
            .filter(|c| sub % c.order == 0)
            .collect())
    }

    pub fn classes_of_order(&self, order: u64) -> Vec<ClassLabel> {
        self.classes()
            .into_iter()
            .filter(|c| c.order == order)
            .collect()
    }

    /// The frame `<g_0^k>` of order `m / k`.
    pub fn subframe(&self, k: u64) -> Result<CyclicFrame> {
        if k == 0 || self.m % k != 0 {
            return Err(Error::NotADivisor { sub: k, m: self.m });
        }
        CyclicFrame::new(self.ctx, self.m / k)
    }
}

pub fn make_frame(ctx: GroupContext, m: u64) -> Result<CyclicFrame> {
    CyclicFrame::new(ctx, m)
}

/// Conjugacy class of `g_0^exp`; `exp` is canonical for the frame. Orders
/// by exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClassLabel {
    pub exp: u64,
    pub order: u64,
}

impl ClassLabel {
    pub fn is_identity(&self) -> bool {
        self.exp == 0
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exp {
            0 => write!(f, "1"),
            1 => write!(f, "g0"),
            e => write!(f, "g0^{e}"),
        }
    }
}

/// A character of `G` restricted to `<g_0>`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CharRestriction {
    Trivial,
    /// `φ_h(g_0^i) = q+ε` if `m | i`, else `ε(ζ_m^{hi} + ζ_m^{-hi})`.
    Phi(u64),
    /// `ψ_h(g_0^i) = q−ε` if `m | i`, else `0`.
    Psi(u64),
    /// Brauer character modulo `p` attached to `(r_0, …, r_k)` with even sum.
    BrauerChi(Vec<u64>),
}

impl CharRestriction {
    pub fn validate(&self, frame: &CyclicFrame) -> Result<()> {
        match self {
            CharRestriction::Trivial => Ok(()),
            CharRestriction::Phi(h) | CharRestriction::Psi(h) => {
                if h % frame.m == 0 {
                    Err(Error::InvalidCharacter(format!(
                        "{self} needs m ∤ h (m = {})",
                        frame.m
                    )))
                } else {
                    Ok(())
                }
            }
            CharRestriction::BrauerChi(r) => {
                if r.is_empty() || r.iter().sum::<u64>() % 2 != 0 {
                    Err(Error::InvalidCharacter(format!(
                        "{self} needs a non-empty tuple with even sum"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Value at the identity.
    pub fn degree(&self, frame: &CyclicFrame) -> u64 {
        let q = frame.q() as i64;
        match self {
            CharRestriction::Trivial => 1,
            CharRestriction::Phi(_) => (q + frame.epsilon) as u64,
            CharRestriction::Psi(_) => (q - frame.epsilon) as u64,
            CharRestriction::BrauerChi(r) => r.iter().map(|&x| x + 1).product(),
        }
    }

    /// Machine-readable id, also accepted by [`CharRestriction::parse`].
    pub fn id(&self) -> String {
        match self {
            CharRestriction::Trivial => "trivial".into(),
            CharRestriction::Phi(h) => format!("phi:{h}"),
            CharRestriction::Psi(h) => format!("psi:{h}"),
            CharRestriction::BrauerChi(r) => format!(
                "chi:{}",
                r.iter().map(u64::to_string).collect::<Vec<_>>().join(".")
            ),
        }
    }

    /// Parses `trivial`, `phi:H`, `psi:H` or `chi:R0.R1…`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognized character `{s}`"));
        let s = s.trim();
        if s == "trivial" || s == "1" {
            return Ok(CharRestriction::Trivial);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "phi" => Ok(CharRestriction::Phi(arg.parse().map_err(|_| bad())?)),
            "psi" => Ok(CharRestriction::Psi(arg.parse().map_err(|_| bad())?)),
            "chi" => arg
                .split(['.', ','])
                .map(|x| x.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()
                .map(CharRestriction::BrauerChi),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CharRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharRestriction::Trivial => write!(f, "1_G"),
            CharRestriction::Phi(h) => write!(f, "φ_{h}"),
            CharRestriction::Psi(h) => write!(f, "ψ_{h}"),
            CharRestriction::BrauerChi(r) if r.len() == 1 => write!(f, "χ_{}", r[0]),
            CharRestriction::BrauerChi(r) => write!(
                f,
                "χ_({})",
                r.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

/// A class function on `<g_0>`, stored per canonical exponent.
#[derive(Clone, Debug)]
pub struct ClassFunction<T> {
    m: u64,
    values: Vec<CycSum<T>>,
}

impl<T: Scalar> PartialEq for ClassFunction<T> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.values == other.values
    }
}

impl<T: Scalar> Eq for ClassFunction<T> {}

impl<T: Scalar> ClassFunction<T> {
    /// `values[e]` is the value at `g_0^e` for `0 ≤ e ≤ ⌊m/2⌋`.
    pub fn new(m: u64, values: Vec<CycSum<T>>) -> Result<Self> {
        if values.len() as u64 != m / 2 + 1 || values.iter().any(|v| v.order() != m) {
            return Err(Error::Precondition(format!(
                "class function on a frame of order {m} needs {} values of order {m}",
                m / 2 + 1
            )));
        }
        Ok(ClassFunction { m, values })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// Value at `g_0^i` for any integer `i`.
    pub fn at(&self, i: i64) -> &CycSum<T> {
        let r = residue(i, self.m);
        &self.values[r.min(self.m - r) as usize]
    }

    pub fn degree(&self) -> T {
        self.values[0]
            .as_integer()
            .expect("character degree is a rational integer")
    }

    /// Restriction to `<g_0^k>`, re-expressed over `m/k`-th roots of unity.
    pub fn restrict(&self, k: u64) -> Result<ClassFunction<T>> {
        if k == 0 || self.m % k != 0 {
            return Err(Error::NotADivisor { sub: k, m: self.m });
        }
        let sub = self.m / k;
        let values = (0..=sub / 2)
            .map(|j| self.at((j * k) as i64).descend(sub))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction { m: sub, values })
    }

    pub fn linear_combination(terms: &[(T, &ClassFunction<T>)], m: u64) -> Self {
        let mut values = vec![CycSum::zero(m); (m / 2 + 1) as usize];
        for (c, f) in terms {
            assert_eq!(f.m, m, "class functions on different frames");
            for (v, w) in values.iter_mut().zip(&f.values) {
                *v = &*v + &w.scalar_mul(c);
            }
        }
        ClassFunction { m, values }
    }
}

/// Multiset of the half exponents `(Σ s_j p^j)/2 mod m` over `X_R`.
///
/// `X_R` is the set of `(s_0, …, s_k)` with `−r_j ≤ s_j ≤ r_j` and
/// `s_j ≡ r_j (mod 2)`. The first entry of the returned pair counts the zero
/// tuple separately (it exists iff every `r_j` is even).
fn half_exponent_histogram(r: &[u64], p: u64, m: u64) -> (Vec<u64>, u64) {
    let two_m = 2 * m as i64;
    let powers: Vec<i64> = std::iter::successors(Some(1i64), |&x| Some(x * p as i64 % two_m))
        .take(r.len())
        .collect();
    let mut counts = vec![0u64; m as usize];
    let mut zero_tuples = 0;
    let mut s: Vec<i64> = r.iter().map(|&x| -(x as i64)).collect();
    loop {
        let total = s
            .iter()
            .zip(&powers)
            .map(|(&sj, &pj)| sj * pj)
            .sum::<i64>()
            .rem_euclid(two_m);
        assert!(total % 2 == 0, "odd exponent sum: tuple sum must be even");
        counts[(total / 2) as usize] += 1;
        if s.iter().all(|&x| x == 0) {
            zero_tuples += 1;
        }
        // odometer over X_R
        let mut j = 0;
        loop {
            if j == s.len() {
                return (counts, zero_tuples);
            }
            if s[j] < r[j] as i64 {
                s[j] += 2;
                break;
            }
            s[j] = -(r[j] as i64);
            j += 1;
        }
    }
}

/// Value of `chi` at the class `cls`, as a cyclotomic integer of order `m`.
pub fn char_value<T: Scalar>(
    frame: &CyclicFrame,
    chi: &CharRestriction,
    cls: ClassLabel,
) -> Result<CycSum<T>> {
    chi.validate(frame)?;
    let m = frame.m;
    let i = cls.exp as i64;
    if cls.exp > m / 2 || frame.class(i) != cls {
        return Err(Error::Precondition(format!(
            "class {cls:?} does not belong to a frame of order {m}"
        )));
    }
    let eps = from_i64::<T>(frame.epsilon);
    let value = match chi {
        CharRestriction::Trivial => CycSum::one(m),
        CharRestriction::Phi(_) if i == 0 => {
            CycSum::from_int(m, from_i64(frame.q() as i64 + frame.epsilon))
        }
        CharRestriction::Phi(h) => {
            let hi = (*h as i64) * i;
            let mut z = CycSum::zero(m);
            z.add_term(hi, eps.clone());
            z.add_term(-hi, eps);
            z
        }
        CharRestriction::Psi(_) if i == 0 => {
            CycSum::from_int(m, from_i64(frame.q() as i64 - frame.epsilon))
        }
        CharRestriction::Psi(_) => CycSum::zero(m),
        CharRestriction::BrauerChi(r) => {
            let (counts, _) = half_exponent_histogram(r, frame.p(), m);
            let mut z = CycSum::zero(m);
            for (e, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
                z.add_term(e as i64 * i, from_i64(c as i64));
            }
            z
        }
    };
    Ok(value)
}

/// `chi` tabulated on every class of the frame.
pub fn char_table<T: Scalar>(
    frame: &CyclicFrame,
    chi: &CharRestriction,
) -> Result<ClassFunction<T>> {
    let values = frame
        .classes()
        .into_iter()
        .map(|cls| char_value(frame, chi, cls))
        .collect::<Result<Vec<_>>>()?;
    ClassFunction::new(frame.m, values)
}

/// Restrictions of all irreducible Brauer characters modulo `p`: the
/// `χ_{(r_0,…,r_{f−1})}` with `0 ≤ r_j ≤ p−1` and even sum.
pub fn brauer_irreducibles(ctx: &GroupContext) -> Vec<CharRestriction> {
    tuples(ctx.f as usize, ctx.p - 1)
        .into_iter()
        .filter(|r| r.iter().sum::<u64>() % 2 == 0)
        .map(CharRestriction::BrauerChi)
        .collect()
}

/// All `χ_R` with `R` of length `f`, even sum and degree `Π(r_j+1) ≤ max_degree`.
pub fn brauer_up_to_degree(ctx: &GroupContext, max_degree: u64) -> Vec<CharRestriction> {
    if max_degree == 0 {
        return Vec::new();
    }
    tuples(ctx.f as usize, max_degree - 1)
        .into_iter()
        .filter(|r| r.iter().sum::<u64>() % 2 == 0)
        .filter(|r| r.iter().map(|&x| x + 1).product::<u64>() <= max_degree)
        .map(CharRestriction::BrauerChi)
        .collect()
}

// All tuples of length `len` with entries in `0..=max`, lexicographic with
// the first coordinate varying fastest.
fn tuples(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = (0..=max)
            .flat_map(|x| {
                out.iter().map(move |t| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    for t in &mut out {
        t.reverse();
    }
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    out
}

/// `|V_{R;h}|`: non-zero tuples of `X_R` whose half exponent is `≡ ±h (mod m)`.
pub fn v_set_count(r: &[u64], h: u64, frame: &CyclicFrame) -> u64 {
    let m = frame.m;
    let (counts, zero_tuples) = half_exponent_histogram(r, frame.p(), m);
    let h = residue(h as i64, m);
    let hm = (m - h) % m;
    let mut n = counts[h as usize];
    if hm != h {
        n += counts[hm as usize];
    }
    if h == 0 {
        n -= zero_tuples;
    }
    n
}

/// `n_h = |V_{R;h}| / 2`.
pub fn n_h(r: &[u64], h: u64, frame: &CyclicFrame) -> u64 {
    let v = v_set_count(r, h, frame);
    debug_assert!(v % 2 == 0, "|V_R;h| is even by s ↔ −s");
    v / 2
}

/// `χ_R = k_0·1_G + ε Σ_{h=1}^{⌊m/2⌋} n_h (φ_h − ψ_h)` on `<g_0>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiDecomposition {
    pub k0: u64,
    /// Non-zero `n_h` only.
    pub n: BTreeMap<u64, u64>,
}

impl fmt::Display for ChiDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k_0={}", self.k0)?;
        for (h, n) in &self.n {
            write!(f, "; n_{h}={n}")?;
        }
        Ok(())
    }
}

pub fn decompose_chi(r: &[u64], frame: &CyclicFrame) -> Result<ChiDecomposition> {
    CharRestriction::BrauerChi(r.to_vec()).validate(frame)?;
    let n0 = n_h(r, 0, frame);
    let k0 = if r.iter().all(|x| x % 2 == 0) {
        1 + 2 * n0
    } else {
        2 * n0
    };
    let n = (1..=frame.m / 2)
        .map(|h| (h, n_h(r, h, frame)))
        .filter(|&(_, n)| n > 0)
        .collect();
    Ok(ChiDecomposition { k0, n })
}
