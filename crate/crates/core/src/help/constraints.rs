use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::cyclotomic::{divisors, CycSum};
use crate::help::PADistribution;
use crate::psl2::{char_table, CharRestriction, ClassFunction, ClassLabel, CyclicFrame};
use crate::{from_i64, Error, Result, Scalar};

/// A character restriction together with its value table on the frame.
#[derive(Clone, Debug)]
pub struct Tabulated<T> {
    pub chi: CharRestriction,
    pub table: ClassFunction<T>,
}

pub fn tabulate<T: Scalar>(
    frame: &CyclicFrame,
    chars: &[CharRestriction],
) -> Result<Vec<Tabulated<T>>> {
    chars
        .iter()
        .map(|chi| {
            Ok(Tabulated {
                chi: chi.clone(),
                table: char_table(frame, chi)?,
            })
        })
        .collect()
}

/// The free unknowns `ε_d(x)` once V2, V3 and `ε_n(1) = 1` are imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableLayout {
    n: u64,
    vars: Vec<(u64, ClassLabel)>,
}

impl VariableLayout {
    pub fn new(frame: &CyclicFrame) -> Self {
        let n = frame.m();
        let vars = divisors(n)
            .into_iter()
            .filter(|&d| d != n)
            .flat_map(|d| {
                frame
                    .classes()
                    .into_iter()
                    .filter(move |c| !c.is_identity() && (n / d) % c.order == 0)
                    .map(move |c| (d, c))
            })
            .collect();
        VariableLayout { n, vars }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[(u64, ClassLabel)] {
        &self.vars
    }

    /// Index sets of the variables at each level `d ≠ n` (the V1 equalities
    /// `Σ_x ε_d(x) = 1`), ordered by `d`.
    pub fn levels(&self) -> Vec<(u64, Vec<usize>)> {
        divisors(self.n)
            .into_iter()
            .filter(|&d| d != self.n)
            .map(|d| {
                let idx = (0..self.vars.len())
                    .filter(|&i| self.vars[i].0 == d)
                    .collect();
                (d, idx)
            })
            .collect()
    }

    pub fn to_distribution(&self, frame: &CyclicFrame, x: &[i64]) -> PADistribution {
        assert_eq!(x.len(), self.vars.len());
        let mut pa = PADistribution::empty(*frame);
        pa.set(self.n, 0, 1).expect("n divides n");
        for (&(d, c), &v) in self.vars.iter().zip(x) {
            pa.set(d, c.exp as i64, v).expect("layout level divides n");
        }
        pa
    }

    /// Values of the layout variables; `None` if `pa` has mass elsewhere
    /// (other than `ε_n(1) = 1`).
    pub fn from_distribution(&self, pa: &PADistribution) -> Option<Vec<i64>> {
        let x: Vec<i64> = self
            .vars
            .iter()
            .map(|&(d, c)| pa.get(d, c.exp as i64))
            .collect();
        (self.to_distribution(pa.frame(), &x) == *pa).then_some(x)
    }
}

/// One HeLP row: `n·μ(ζ_n^l, ε, χ) = a·x + c`, required to be a
/// non-negative multiple of `n` (and at most `n·χ(1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintRow<T> {
    pub character: String,
    pub l: u64,
    pub coeffs: Vec<T>,
    pub constant: T,
    /// `n·χ(1)`.
    pub upper: T,
}

impl<T: Scalar> ConstraintRow<T> {
    pub fn evaluate(&self, x: &[i64]) -> T {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (a, &v)| {
                acc + a.clone() * from_i64::<T>(v)
            })
    }
}

/// The integer system for one order `n` and one character family.
#[derive(Clone, Debug)]
pub struct ConstraintSystem<T> {
    pub frame: CyclicFrame,
    pub layout: VariableLayout,
    pub rows: Vec<ConstraintRow<T>>,
    pub family: String,
    pub characters: Vec<CharRestriction>,
}

impl<T: Scalar> ConstraintSystem<T> {
    pub fn n(&self) -> u64 {
        self.frame.m()
    }

    /// Whether `x` satisfies every row and the level equalities.
    pub fn is_solution(&self, x: &[i64]) -> bool {
        let n = from_i64::<T>(self.n() as i64);
        let levels_ok = self
            .layout
            .levels()
            .iter()
            .all(|(_, idx)| idx.iter().map(|&i| x[i]).sum::<i64>() == 1);
        levels_ok
            && self.rows.iter().all(|row| {
                let v = row.evaluate(x);
                !v.is_negative() && v <= row.upper && v.is_multiple_of(&n)
            })
    }
}

/// `Tr_{Q(ζ_n^d)/Q}(χ(x)·ζ_n^{−ld})` for a class `x` of order dividing `n/d`.
fn level_trace<T: Scalar>(value: &CycSum<T>, n: u64, d: u64, l: i64) -> Result<T> {
    value.mul_by_root(-l * d as i64).trace_over(n / d)
}

pub fn build_constraints<T: Scalar>(
    frame: &CyclicFrame,
    family_name: &str,
    characters: &[Tabulated<T>],
    layout: &VariableLayout,
) -> Result<ConstraintSystem<T>> {
    let n = frame.m();
    if layout.n() != n {
        return Err(Error::Precondition(format!(
            "layout for n = {} used with a frame of order {n}",
            layout.n()
        )));
    }
    let mut rows = Vec::with_capacity(characters.len() * n as usize);
    for ch in characters {
        if ch.table.m() != n {
            return Err(Error::Precondition(format!(
                "{} is tabulated on a frame of order {}, not {n}",
                ch.chi,
                ch.table.m()
            )));
        }
        let degree = ch.table.degree();
        for l in 0..n {
            let coeffs = layout
                .vars()
                .iter()
                .map(|&(d, c)| level_trace(ch.table.at(c.exp as i64), n, d, l as i64))
                .collect::<Result<Vec<T>>>()?;
            rows.push(ConstraintRow {
                character: ch.chi.id(),
                l,
                coeffs,
                constant: degree.clone(),
                upper: degree.clone() * from_i64::<T>(n as i64),
            });
        }
    }
    Ok(ConstraintSystem {
        frame: *frame,
        layout: layout.clone(),
        rows,
        family: family_name.to_string(),
        characters: characters.iter().map(|c| c.chi.clone()).collect(),
    })
}

fn check_frame<T: Scalar>(pa: &PADistribution, chi: &ClassFunction<T>) -> Result<()> {
    if chi.m() != pa.n() {
        return Err(Error::Precondition(format!(
            "character on a frame of order {} applied to a distribution of order {}",
            chi.m(),
            pa.n()
        )));
    }
    Ok(())
}

/// `μ(ζ_n^l, ε, χ) = (1/n) Σ_x Σ_{d|n} ε_d(x) Tr_{Q(ζ_n^d)/Q}(χ(x) ζ_n^{−ld})`.
pub fn multiplicity<T: Scalar>(
    pa: &PADistribution,
    chi: &ClassFunction<T>,
    l: i64,
) -> Result<Ratio<T>> {
    check_frame(pa, chi)?;
    let n = pa.n();
    let mut sum = T::zero();
    for (d, class, value) in pa.entries() {
        let tr = level_trace(chi.at(class.exp as i64), n, d, l)?;
        sum = sum + from_i64::<T>(value) * tr;
    }
    Ok(Ratio::new(sum, from_i64(n as i64)))
}

/// `μ_m^−(ε, χ)`: the part of `μ(1, ε, χ)` coming from levels `d` with `m | d`.
pub fn mu_minus<T: Scalar>(
    pa: &PADistribution,
    chi: &ClassFunction<T>,
    m: u64,
) -> Result<Ratio<T>> {
    check_frame(pa, chi)?;
    let n = pa.n();
    if m == 0 || n % m != 0 {
        return Err(Error::NotADivisor { sub: m, m: n });
    }
    let mut sum = T::zero();
    for (d, class, value) in pa.entries().filter(|(d, _, _)| d % m == 0) {
        let tr = chi.at(class.exp as i64).trace_over(n / d)?;
        sum = sum + from_i64::<T>(value) * tr;
    }
    Ok(Ratio::new(sum, from_i64(n as i64)))
}

/// `χ(u^d) = Σ_x ε_d(x) χ(x)`.
pub fn char_at_distribution<T: Scalar>(
    pa: &PADistribution,
    chi: &ClassFunction<T>,
    d: u64,
) -> Result<CycSum<T>> {
    check_frame(pa, chi)?;
    let mut z = CycSum::zero(pa.n());
    for (class, value) in pa.level(d) {
        z = &z + &chi.at(class.exp as i64).scalar_mul(&from_i64(value));
    }
    Ok(z)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct V4Entry<T: Clone + num_integer::Integer> {
    pub character: String,
    pub l: u64,
    pub mu: Ratio<T>,
    pub ok: bool,
}

/// Every multiplicity of a distribution against a character family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct V4Report<T: Clone + num_integer::Integer> {
    pub entries: Vec<V4Entry<T>>,
}

impl<T: Scalar> V4Report<T> {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &V4Entry<T>> {
        self.entries.iter().filter(|e| !e.ok)
    }
}

impl<T: Scalar> fmt::Display for V4Report<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(
                f,
                "{:<12} l={:<3} mu={:<8} {}",
                e.character,
                e.l,
                e.mu.to_string(),
                if e.ok { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Evaluate every `μ(ζ_n^l, ε, χ)`; an entry passes when it is a
/// non-negative integer.
pub fn verify_v4<T: Scalar>(pa: &PADistribution, family: &[Tabulated<T>]) -> Result<V4Report<T>> {
    let mut entries = Vec::new();
    for ch in family {
        for l in 0..pa.n() {
            let mu = multiplicity(pa, &ch.table, l as i64)?;
            let ok = is_nonneg_integer(&mu);
            entries.push(V4Entry {
                character: ch.chi.id(),
                l,
                mu,
                ok,
            });
        }
    }
    Ok(V4Report { entries })
}

/// `μ(1, ε, χ)` for `n = rt` from the three accumulated values at level 1,
/// given that `ε_r` and `ε_t` are concentrated on single classes.
pub fn mu1_accumulated_form<T: Scalar>(
    pa: &PADistribution,
    chi: &ClassFunction<T>,
    r: u64,
    t: u64,
) -> Result<Ratio<T>> {
    check_frame(pa, chi)?;
    let n = pa.n();
    if r * t != n || r == t {
        return Err(Error::Precondition(format!("n = {n} is not r·t = {r}·{t}")));
    }
    let concentrated = |d: u64, order: u64| -> Result<u64> {
        let level: Vec<_> = pa.level(d).collect();
        match level.as_slice() {
            [(c, 1)] if c.order == order => Ok(c.exp),
            _ => Err(Error::Precondition(format!(
                "ε_{d} is not concentrated on a class of order {order}"
            ))),
        }
    };
    // ε_r sits on (g_0^{cr}) and ε_t on (g_0^{ct}) for some unit c.
    let a = concentrated(r, t)?;
    let b = concentrated(t, r)?;
    let frame = pa.frame();
    let c = (1..n)
        .filter(|&c| crate::cyclotomic::gcd(c, n) == 1)
        .find(|&c| {
            frame.canonical_exp((c * r) as i64) == a && frame.canonical_exp((c * t) as i64) == b
        })
        .ok_or_else(|| Error::Precondition("no generator matches ε_r and ε_t".into()))?
        as i64;
    let (r_, t_) = (r as i64, t as i64);
    let full = |i: i64| chi.at(i).trace();
    let acc = |m: u64| from_i64::<T>(pa.accumulated(1, m));
    let sum = acc(n) * full(c)
        + acc(t) * full(c * r_)
        + acc(r) * full(c * t_)
        + chi.at(c * t_).trace_over(r)?
        + chi.at(c * r_).trace_over(t)?
        + chi.degree();
    Ok(Ratio::new(sum, from_i64(n as i64)))
}

/// Upper bound `(1/t)(χ(1) + Tr_{Q(ζ_t)/Q}(χ(g_0^r)))` on `μ(1, ε, χ)` for
/// `n = rt`.
pub fn mu1_upper_bound<T: Scalar>(chi: &ClassFunction<T>, r: u64, t: u64) -> Result<Ratio<T>> {
    let sum = chi.degree() + chi.at(r as i64).trace_over(t)?;
    Ok(Ratio::new(sum, from_i64(t as i64)))
}

/// Sorted, duplicate-free set of distributions for one `(q, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub q: u64,
    pub n: u64,
    pub family: String,
    members: Vec<PADistribution>,
}

impl SolutionSet {
    pub fn new(
        q: u64,
        n: u64,
        family: impl Into<String>,
        mut members: Vec<PADistribution>,
    ) -> Self {
        members.sort();
        members.dedup();
        SolutionSet {
            q,
            n,
            family: family.into(),
            members,
        }
    }

    pub fn members(&self) -> &[PADistribution] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, pa: &PADistribution) -> bool {
        self.members.binary_search(pa).is_ok()
    }
}

/// `Σ_l μ(ζ_n^l)` as a rational; equals `χ(1)` for every V1–V3 distribution.
pub fn total_multiplicity<T: Scalar>(
    pa: &PADistribution,
    chi: &ClassFunction<T>,
) -> Result<Ratio<T>> {
    (0..pa.n() as i64).try_fold(Ratio::zero(), |acc, l| Ok(acc + multiplicity(pa, chi, l)?))
}

pub fn is_nonneg_integer<T: Scalar>(x: &Ratio<T>) -> bool {
    x.is_integer() && !x.numer().is_negative()
}
