use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::cyclotomic::divisors;
use crate::help::{exceptional_set, tpa_set, verify_v4};
use crate::psl2::{CharRestriction, GroupContext};

fn frame(q: u64, m: u64) -> CyclicFrame {
    CyclicFrame::new(GroupContext::new(q).unwrap(), m).unwrap()
}

fn serial() -> SolverConfig {
    SolverConfig {
        workers: Some(1),
        ..SolverConfig::default()
    }
}

fn run(q: u64, n: u64, family: &str) -> EnumerationReport {
    let f = frame(q, n);
    solve(&f, &Family::parse(family, &f).unwrap(), &serial()).unwrap()
}

fn naive(system: &ConstraintSystem<BigInt>, bounds: &BoundsBox) -> Vec<PADistribution> {
    let mut out = Vec::new();
    let mut x = bounds.lower.clone();
    if bounds.is_empty() {
        return out;
    }
    loop {
        if system.is_solution(&x) {
            out.push(system.layout.to_distribution(&system.frame, &x));
        }
        let mut i = 0;
        loop {
            if i == x.len() {
                out.sort();
                return out;
            }
            if x[i] < bounds.upper[i] {
                x[i] += 1;
                break;
            }
            x[i] = bounds.lower[i];
            i += 1;
        }
    }
}

#[test]
fn main_cases() {
    let r = run(19, 10, "paper");
    assert_eq!(r.rank, 8);
    assert!(r.is_complete());
    assert!(!r.augmented);
    let f = frame(19, 10);
    let mut expected = tpa_set(&f);
    expected.extend(exceptional_set(&f, 5).unwrap());
    let expected = SolutionSet::new(19, 10, "expected", expected);
    assert_eq!(r.solutions.members(), expected.members());
    assert_eq!(r.solutions.len(), 4);

    let r = run(13, 6, "paper");
    assert_eq!(r.solutions.members(), tpa_set(&frame(13, 6)).as_slice());

    let r = run(11, 5, "chi:2");
    assert_eq!(r.solutions.len(), 2);
    assert_eq!(r.solutions.members(), tpa_set(&frame(11, 5)).as_slice());
}

#[test]
fn bounds_contain_known_points() {
    let f = frame(19, 10);
    let sys = system_for(&f, &Family::paper(&f)).unwrap();
    let bounds = derive_bounds(&sys).unwrap();
    for pa in tpa_set(&f).iter().chain(&exceptional_set(&f, 5).unwrap()) {
        assert!(bounds.contains(&sys.layout.from_distribution(pa).unwrap()));
    }
    // the order-2 variable at level d = t
    let j = sys.layout.vars().iter().position(|&(d, _)| d == 5).unwrap();
    assert!(bounds.lower[j] <= 1 && 1 <= bounds.upper[j]);
}

#[test]
fn ranks() {
    let f = frame(19, 10);
    let trivial = system_for(&f, &Family::parse("trivial", &f).unwrap()).unwrap();
    assert!(rank_check(&trivial) <= divisors(10).len());
    let empty = system_for(&f, &Family::new("none", [])).unwrap();
    assert_eq!(rank_check(&empty), 0);
    assert!(matches!(
        derive_bounds(&trivial),
        Err(Error::UnboundedRelaxation { vars: 8, .. })
    ));
    let cfg = SolverConfig {
        augment: false,
        ..serial()
    };
    assert!(matches!(
        solve(&f, &Family::parse("trivial", &f).unwrap(), &cfg),
        Err(Error::UnboundedRelaxation { .. })
    ));
    let r = solve(&f, &Family::parse("trivial", &f).unwrap(), &serial()).unwrap();
    assert!(r.augmented);
    assert_eq!(r.family(), "trivial+brauer-p");
}

#[test]
fn no_element_of_order_seven_in_psl_2_11() {
    let ctx = GroupContext::new(11).unwrap();
    assert!(matches!(
        CyclicFrame::new(ctx, 7),
        Err(Error::NoElementOfOrder { q: 11, m: 7 })
    ));
}

#[test]
fn budget_is_reported() {
    let f = frame(19, 10);
    let cfg = SolverConfig {
        budget: Some(3),
        ..serial()
    };
    assert!(matches!(
        solve(&f, &Family::paper(&f), &cfg),
        Err(Error::Incomplete { budget: 3 })
    ));
}

#[test]
fn deterministic_across_worker_counts() {
    let f = frame(29, 14);
    let fam = Family::parse("chi:2,chi:4,phi:7,phi:1", &f).unwrap();
    let a = solve(&f, &fam, &serial()).unwrap();
    let b = solve(&f, &fam, &serial()).unwrap();
    let c = solve(
        &f,
        &fam,
        &SolverConfig {
            workers: Some(4),
            ..SolverConfig::default()
        },
    )
    .unwrap();
    assert_eq!(a.solutions, b.solutions);
    assert_eq!(a.nodes, b.nodes);
    assert_eq!(a.bounds, b.bounds);
    assert_eq!(a.solutions, c.solutions);
}

#[test]
fn sound_and_contains_tpa() {
    for (q, n, fam) in [
        (19, 10, "paper"),
        (19, 10, "brauer-p"),
        (13, 6, "chi:2,phi:1,phi:2,phi:3"),
        (29, 7, "chi:2,chi:4"),
        (17, 8, "paper"),
        (41, 5, "chi:2"),
    ] {
        let f = frame(q, n);
        let family = Family::parse(fam, &f).unwrap();
        let r = solve(&f, &family, &serial()).unwrap();
        for t in tpa_set(&f) {
            assert!(r.solutions.contains(&t), "q={q} n={n} {fam}: missing {t}");
        }
        let tables = tabulate::<BigInt>(&f, &family.characters).unwrap();
        for pa in r.solutions.members() {
            assert!(pa.violations().is_empty());
            assert!(verify_v4(pa, &tables).unwrap().passed(), "{pa}");
        }
    }
}

#[test]
fn compare() {
    let f = frame(19, 10);
    let t = SolutionSet::new(19, 10, "a", tpa_set(&f));
    let mut all = tpa_set(&f);
    all.extend(exceptional_set(&f, 5).unwrap());
    let all = SolutionSet::new(19, 10, "b", all);
    assert!(compare_sets(&t, &t).unwrap().is_empty());
    let d = compare_sets(&t, &all).unwrap();
    assert_eq!(d.len(), 2);
    assert_eq!(d.missing.len(), 2);
    let ts = tpa_set(&f);
    let a = SolutionSet::new(19, 10, "a", vec![ts[0].clone()]);
    let b = SolutionSet::new(19, 10, "b", vec![ts[1].clone()]);
    assert_eq!(compare_sets(&a, &b).unwrap().len(), 2);
    let other = SolutionSet::new(19, 5, "c", vec![]);
    assert!(compare_sets(&a, &other).is_err());
}

const SMALL: [(u64, u64); 9] = [
    (11, 5),
    (19, 5),
    (7, 4),
    (9, 4),
    (17, 4),
    (13, 7),
    (29, 7),
    (7, 3),
    (13, 3),
];

fn char_pool(f: &CyclicFrame) -> Vec<CharRestriction> {
    let mut pool: Vec<CharRestriction> = (1..=f.m() / 2)
        .flat_map(|h| [CharRestriction::Phi(h), CharRestriction::Psi(h)])
        .collect();
    pool.extend([2, 4, 6].map(|r| CharRestriction::BrauerChi(vec![r])));
    pool.push(CharRestriction::Trivial);
    pool
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn agrees_with_naive_scan(case in 0..SMALL.len(), picks in proptest::collection::vec(any::<bool>(), 16)) {
        let (q, n) = SMALL[case];
        let f = frame(q, n);
        let pool = char_pool(&f);
        let chosen: Vec<_> = pool.iter().zip(&picks).filter(|(_, &p)| p).map(|(c, _)| c.clone()).collect();
        let system = system_for(&f, &Family::new("pick", chosen)).unwrap();
        prop_assume!(rank_check(&system) == system.layout.len());
        let bounds = derive_bounds(&system).unwrap();
        prop_assume!(bounds.volume() <= 1_000_000);
        let report = enumerate(&system, &bounds, &serial()).unwrap();
        let expected = naive(&system, &bounds);
        prop_assert_eq!(report.solutions.members(), expected.as_slice());
    }

    #[test]
    fn more_characters_never_enlarge(case in 0..SMALL.len(), picks in proptest::collection::vec(0u8..3, 16)) {
        let (q, n) = SMALL[case];
        let f = frame(q, n);
        let pool = char_pool(&f);
        // picks: 0 = unused, 1 = in both, 2 = only in the larger family
        let small: Vec<_> = pool.iter().zip(&picks).filter(|(_, &p)| p == 1).map(|(c, _)| c.clone()).collect();
        let large: Vec<_> = pool.iter().zip(&picks).filter(|(_, &p)| p >= 1).map(|(c, _)| c.clone()).collect();
        let small = solve(&f, &Family::new("small", small), &serial());
        let large = solve(&f, &Family::new("large", large), &serial()).unwrap();
        if let Ok(small) = small {
            if !small.augmented && !large.augmented {
                for pa in large.solutions.members() {
                    prop_assert!(small.solutions.contains(pa));
                }
            }
        }
    }
}
