//! Reproduction of the order-`2t` classification for `PSL(2,q)`.

use helpzc::cyclotomic::is_prime;
use helpzc::help::{
    check_wagner, exceptional_set, multiplicity, tabulate, tpa_set, verify_v4, PADistribution,
    SolutionSet,
};
use helpzc::psl2::{char_table, CharRestriction, CyclicFrame, GroupContext};
use helpzc::solver::{compare_sets, solve, EnumerationReport, Family, SetDiff, SolverConfig};
use helpzc::{BigInt, Error, Ratio, Result};

/// Sufficiency of one exceptional family against the Brauer characters mod `p`.
#[derive(Clone, Debug)]
pub struct Sufficiency {
    pub distribution: PADistribution,
    pub characters: usize,
    /// `character l=… mu=…` for every failing entry.
    pub failures: Vec<String>,
    /// `μ(ζ^l, ε, ψ_h) = (q−ε)/2t` for all `h`, `l`.
    pub psi_ok: bool,
}

impl Sufficiency {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.psi_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceIdentity {
    pub character: &'static str,
    pub l: u64,
    pub value: BigInt,
    pub expected: i64,
}

impl TraceIdentity {
    pub fn holds(&self) -> bool {
        self.value == BigInt::from(self.expected)
    }
}

#[derive(Clone, Debug)]
pub struct MainReport {
    pub q: u64,
    pub t: u64,
    pub epsilon: i64,
    pub enumeration: EnumerationReport,
    pub tpa: Vec<PADistribution>,
    pub exceptional: Vec<PADistribution>,
    pub diff: SetDiff,
    pub sufficiency: Vec<Sufficiency>,
    /// Every solution has `ε̃_1(2) = ε̃_1(t) = 0` and `ε̃_1(2t) = 1`.
    pub accumulated_ok: bool,
    /// Every solution has `t | ε̃_1(t)` and `2 | ε̃_1(2)`.
    pub wagner_ok: bool,
    pub trace_identities: Vec<TraceIdentity>,
}

impl MainReport {
    pub fn n(&self) -> u64 {
        2 * self.t
    }

    pub fn solutions(&self) -> &[PADistribution] {
        self.enumeration.solutions.members()
    }

    pub fn tpa_found(&self) -> usize {
        self.solutions()
            .iter()
            .filter(|pa| self.tpa.contains(pa))
            .count()
    }

    pub fn exceptional_found(&self) -> usize {
        self.solutions()
            .iter()
            .filter(|pa| self.exceptional.contains(pa))
            .count()
    }

    pub fn other_found(&self) -> usize {
        self.solutions().len() - self.tpa_found() - self.exceptional_found()
    }

    pub fn verified(&self) -> bool {
        self.diff.is_empty()
            && self.sufficiency.iter().all(Sufficiency::passed)
            && self.accumulated_ok
            && self.wagner_ok
            && self.trace_identities.iter().all(TraceIdentity::holds)
    }

    /// `VPA_6 = TPA_6` for `t = 3`, else `N = a TPA + b exceptional`.
    pub fn summary(&self) -> String {
        let n = self.n();
        let mut s = if self.t == 3 && self.diff.is_empty() {
            format!(
                "VPA_{n} = TPA_{n} ({} distribution)",
                self.solutions().len()
            )
        } else {
            format!(
                "VPA_{n}: {} = {} TPA + {} exceptional",
                self.solutions().len(),
                self.tpa_found(),
                self.exceptional_found()
            )
        };
        if self.other_found() > 0 {
            s.push_str(&format!(" + {} other", self.other_found()));
        }
        s
    }
}

pub fn check_hypotheses(q: u64, t: u64) -> Result<CyclicFrame> {
    if t < 3 || !is_prime(t) {
        return Err(Error::Precondition(format!("t = {t} must be an odd prime")));
    }
    let ctx = GroupContext::new(q)?;
    if q % (4 * t) != 1 && q % (4 * t) != 4 * t - 1 {
        return Err(Error::Precondition(format!(
            "the classification needs q ≡ ±1 (mod 4t); {q} mod {} = {}",
            4 * t,
            q % (4 * t)
        )));
    }
    CyclicFrame::new(ctx, 2 * t)
}

/// `T(χ_2(g_0^2) ζ_{2t}^{−2l}) = t·w_l − 3` and
/// `T(χ_4(g_0^2) ζ_{2t}^{−2l}) = t·W_l − 5` for `1 ≤ l ≤ t−1`.
pub fn trace_identities(frame: &CyclicFrame, t: u64) -> Result<Vec<TraceIdentity>> {
    let chi2 = char_table::<BigInt>(frame, &CharRestriction::BrauerChi(vec![2]))?;
    let chi4 = char_table::<BigInt>(frame, &CharRestriction::BrauerChi(vec![4]))?;
    let mut out = Vec::new();
    for l in 1..t {
        // counted with multiplicity; the lists overlap only for t = 3
        let w = [1, t - 1].iter().filter(|&&x| x == l).count() as i64;
        let big_w = [1, 2, t - 2, t - 1].iter().filter(|&&x| x == l).count() as i64;
        let shift = -2 * l as i64;
        out.push(TraceIdentity {
            character: "χ_2",
            l,
            value: chi2.at(2).mul_by_root(shift).trace(),
            expected: t as i64 * w - 3,
        });
        out.push(TraceIdentity {
            character: "χ_4",
            l,
            value: chi4.at(2).mul_by_root(shift).trace(),
            expected: t as i64 * big_w - 5,
        });
    }
    Ok(out)
}

fn sufficiency(frame: &CyclicFrame, pa: &PADistribution, t: u64) -> Result<Sufficiency> {
    let brauer = Family::brauer(frame);
    let tables = tabulate::<BigInt>(frame, &brauer.characters)?;
    let report = verify_v4(pa, &tables)?;
    let failures = report
        .failures()
        .map(|e| format!("{} l={} mu={}", e.character, e.l, e.mu))
        .collect();
    let q = frame.q() as i64;
    let expected = Ratio::new(
        BigInt::from(q - frame.epsilon()),
        BigInt::from(2 * t as i64),
    );
    let mut psi_ok = true;
    for h in 1..=t {
        let psi = char_table::<BigInt>(frame, &CharRestriction::Psi(h))?;
        for l in 0..2 * t as i64 {
            psi_ok &= multiplicity(pa, &psi, l)? == expected;
        }
    }
    Ok(Sufficiency {
        distribution: pa.clone(),
        characters: tables.len(),
        failures,
        psi_ok,
    })
}

pub fn verify_main(q: u64, t: u64, config: &SolverConfig) -> Result<MainReport> {
    let frame = check_hypotheses(q, t)?;
    let enumeration = solve(&frame, &Family::paper(&frame), config)?;
    let tpa = tpa_set(&frame);
    let exceptional = if t >= 5 {
        exceptional_set(&frame, t)?
    } else {
        Vec::new()
    };
    let expected = SolutionSet::new(
        q,
        2 * t,
        "expected",
        tpa.iter().chain(&exceptional).cloned().collect(),
    );
    let diff = compare_sets(&enumeration.solutions, &expected)?;
    let sufficiency = exceptional
        .iter()
        .map(|pa| sufficiency(&frame, pa, t))
        .collect::<Result<Vec<_>>>()?;
    let members = enumeration.solutions.members();
    let accumulated_ok = members.iter().all(|pa| {
        pa.accumulated(1, 2) == 0 && pa.accumulated(1, t) == 0 && pa.accumulated(1, 2 * t) == 1
    });
    let wagner_ok = members.iter().all(|pa| check_wagner(pa, 2, t));
    Ok(MainReport {
        q,
        t,
        epsilon: frame.epsilon(),
        enumeration,
        tpa,
        exceptional,
        diff,
        sufficiency,
        accumulated_ok,
        wagner_ok,
        trace_identities: trace_identities(&frame, t)?,
    })
}
