use std::collections::HashSet;

use proptest::prelude::*;
use submod::objectives::{read_edge_list, write_edge_list, Modular};
use submod::parallel::{distribute, prefix_selection, PrefixMark};
use submod::*;

fn maxcut_instance(n: usize, p: f64, seed: u64) -> OracleF64 {
    maxcut_oracle(gen_er(n, p, seed).unwrap())
}

fn revmax_instance(n: usize, p: f64, seed: u64) -> OracleF64 {
    let g = gen_er::<f64>(n, p, seed).unwrap();
    let params = gen_revmax_params(&g, seed + 1);
    revmax_oracle(g, params).unwrap()
}

fn subset_of(n: usize, mask: u64) -> SolutionSet {
    (0..n).filter(|i| mask >> (i % 64) & 1 == 1).map(ElementId).collect()
}

fn both(n: usize, seed: u64) -> [OracleF64; 2] {
    [maxcut_instance(n, 0.3, seed), revmax_instance(n, 0.3, seed)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_pure(n in 2usize..40, seed in any::<u64>(), mask in any::<u64>()) {
        for f in both(n, seed) {
            let s = subset_of(n, mask);
            let reversed: SolutionSet = s.as_slice().iter().rev().copied().collect();
            let a = f.evaluate(&s).unwrap();
            let b = f.evaluate(&s).unwrap();
            let c = f.evaluate(&reversed).unwrap();
            prop_assert_eq!(a.to_bits(), b.to_bits());
            prop_assert_eq!(a.to_bits(), c.to_bits());
            prop_assert!(a >= 0.0);
        }
    }

    #[test]
    fn dummies_are_transparent(n in 2usize..30, d in 0usize..10, seed in any::<u64>(), mask in any::<u64>(), dmask in any::<u64>()) {
        for f in both(n, seed) {
            let padded = f.with_dummies(d);
            let real = subset_of(n, mask);
            let mut with = real.clone();
            with.extend((0..d).filter(|i| dmask >> i & 1 == 1).map(|i| ElementId(n + i)));
            prop_assert_eq!(padded.evaluate(&with).unwrap(), f.evaluate(&real).unwrap());
            for x in padded.dummy_ids().filter(|x| !with.contains(*x)) {
                prop_assert_eq!(padded.marginal_gain(x, &with, None).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn empty_contraction_is_identity(n in 2usize..30, seed in any::<u64>(), masks in proptest::collection::vec(any::<u64>(), 1..10)) {
        for f in both(n, seed) {
            let g = f.contract(&SolutionSet::new(), &f.elements()).unwrap();
            for &m in &masks {
                let s = subset_of(n, m);
                prop_assert_eq!(g.evaluate(&s).unwrap(), f.evaluate(&s).unwrap());
            }
        }
    }

    #[test]
    fn contraction_is_a_shifted_restriction(n in 4usize..20, seed in any::<u64>(), base_mask in any::<u64>(), mask in any::<u64>()) {
        let f = revmax_instance(n, 0.4, seed);
        let base = subset_of(n, base_mask);
        let g = f.contract_excluding(&base, &SolutionSet::new()).unwrap();
        let s: SolutionSet = subset_of(n, mask).iter().filter(|x| !base.contains(*x)).collect();
        let mut union = base.clone();
        union.extend(s.iter());
        let expected = f.evaluate(&union).unwrap() - f.evaluate(&base).unwrap();
        prop_assert!((g.evaluate(&s).unwrap() - expected).abs() < 1e-9);
        for x in base.iter() {
            prop_assert!(g.evaluate(&SolutionSet::from_ids([x])).is_err());
        }
    }

    #[test]
    fn closed_form_gain_matches_definition(n in 2usize..40, seed in any::<u64>(), mask in any::<u64>()) {
        for f in both(n, seed) {
            let s = subset_of(n, mask);
            let value = f.evaluate(&s).unwrap();
            for x in f.elements().into_iter().filter(|x| !s.contains(*x)) {
                let fast = f.marginal_gain(x, &s, Some(value)).unwrap();
                let slow = f.marginal_gain(x, &s, None).unwrap();
                prop_assert!((fast - slow).abs() < 1e-9, "{} vs {}", fast, slow);
            }
        }
    }

    #[test]
    fn maxcut_complement_symmetry(n in 2usize..60, p in 0.0f64..1.0, seed in any::<u64>(), mask in any::<u64>()) {
        let f = maxcut_instance(n, p, seed);
        let s = subset_of(n, mask);
        let complement: SolutionSet = f.elements().into_iter().filter(|x| !s.contains(*x)).collect();
        prop_assert!((f.evaluate(&s).unwrap() - f.evaluate(&complement).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn ledger_never_decreases(n in 2usize..20, seed in any::<u64>(), masks in proptest::collection::vec(any::<u64>(), 1..20)) {
        let f = maxcut_instance(n, 0.5, seed);
        let mut last = f.ledger().snapshot();
        for m in masks {
            let s = subset_of(n, m);
            f.evaluate(&s).unwrap();
            if m % 3 == 0 {
                f.mark_round();
            }
            let now = f.ledger().snapshot();
            prop_assert!(now.queries >= last.queries && now.rounds >= last.rounds);
            prop_assert!(now.rounds <= now.queries);
            last = now;
        }
    }

    #[test]
    fn distribute_is_disjoint_and_large_enough(
        ell in 1usize..6,
        sizes in proptest::collection::vec(0usize..60, 6),
        seed in any::<u64>(),
    ) {
        let mut rng_sets = Vec::new();
        for j in 0..ell {
            let len = 2 * ell + sizes[j];
            let start = (seed as usize + 7 * j) % 50;
            rng_sets.push((start..start + len).map(ElementId).collect::<Vec<_>>());
        }
        let out = distribute(&rng_sets, seed);
        let mut seen = HashSet::new();
        for (j, part) in out.iter().enumerate() {
            prop_assert!(part.len() * 2 * ell >= rng_sets[j].len());
            for x in part {
                prop_assert!(rng_sets[j].contains(x));
                prop_assert!(seen.insert(*x));
            }
        }
    }

    #[test]
    fn prefix_selection_quality(n in 5usize..80, s in 1usize..80, eps in 0.05f64..0.5, seed in any::<u64>()) {
        let f = maxcut_instance(n, 0.2, seed);
        let cand = f.elements();
        let sel = prefix_selection(&f, &cand, s, 1.0, eps, seed);
        let above = sel.marks[..sel.istar].iter().filter(|m| **m == PrefixMark::Above).count();
        prop_assert!(above as f64 >= (1.0 - eps) * sel.istar as f64 - 1e-9);
        prop_assert!(sel.istar <= s.min(n));
        prop_assert_eq!(sel.marks.len(), s.min(n));
    }

    #[test]
    fn records_report_fresh_values(n in 8usize..40, k in 2usize..6, seed in any::<u64>()) {
        let f = maxcut_instance(n, 0.3, seed);
        let k = k.min(n);
        for name in Algorithm::NAMES {
            let alg = Algorithm::from_name(name, 0.2, 2).unwrap();
            let alg = match alg {
                Algorithm::Pitg { .. } if k < 2 => continue,
                Algorithm::FastInterpolatedGreedy { .. } if k < 2 => continue,
                Algorithm::FastInterpolatedGreedy { .. } => Algorithm::FastInterpolatedGreedy { eps: 0.8 },
                a => a,
            };
            let r = alg.run(&f.with_fresh_ledger(), k, seed).unwrap();
            prop_assert!(r.solution.len() <= k, "{}", name);
            prop_assert!(r.solution.iter().all(|x| x.0 < n));
            let distinct: HashSet<_> = r.solution.iter().collect();
            prop_assert_eq!(distinct.len(), r.solution.len());
            let fresh = f.evaluate(&r.solution.iter().copied().collect()).unwrap();
            prop_assert!((fresh - r.value).abs() < 1e-9, "{}: {} vs {}", name, fresh, r.value);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn edge_list_round_trip(n in 2usize..40, p in 0.05f64..1.0, seed in any::<u64>()) {
        let g = gen_er::<f64>(n, p, seed).unwrap();
        prop_assume!(g.edge_count() > 0);
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let loaded = read_edge_list::<f64, _>(buf.as_slice()).unwrap();
        let mut original: Vec<(u64, u64)> = g.edges().map(|(u, v, _)| (u as u64, v as u64)).collect();
        let mut back: Vec<(u64, u64)> = loaded
            .graph
            .edges()
            .map(|(u, v, _)| {
                let (a, b) = (loaded.labels[u], loaded.labels[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        original.sort_unstable();
        back.sort_unstable();
        prop_assert_eq!(original, back);
    }

    #[test]
    fn brute_force_dominates_random_sets(n in 2usize..=12, k in 0usize..5, seed in any::<u64>(), masks in proptest::collection::vec(any::<u64>(), 50)) {
        for f in both(n, seed) {
            let (_, opt) = brute_force_opt(&f, k).unwrap();
            for &m in &masks {
                let s: SolutionSet = subset_of(n, m).iter().take(k).collect();
                prop_assert!(opt >= f.evaluate(&s).unwrap());
            }
        }
    }

    #[test]
    fn cardinality_objective_is_exactly_modular(n in 1usize..15, trials in 1usize..50, seed in any::<u64>()) {
        let f: OracleF64 = ValueOracle::new(Modular::cardinality(n));
        let report = check_submodular(&f, trials, seed).unwrap();
        prop_assert!(report.is_clean());
    }
}

#[test]
fn audits_pass_with_a_thousand_trials() {
    for seed in 0..3 {
        for f in both(25, seed) {
            let report = check_submodular(&f, 1000, seed).unwrap();
            assert!(report.is_clean(), "{}: {:?}", f.objective_name(), report.violations.first());
        }
    }
}

#[test]
fn single_precision_pipeline() {
    let g = gen_er::<f32>(60, 0.1, 3).unwrap();
    let f: OracleF32 = maxcut_oracle(g);
    let r = interlace_greedy(&f, 5).unwrap();
    let fresh = f.evaluate(&r.solution.iter().copied().collect()).unwrap();
    assert!((fresh - r.value).abs() < 1e-3);
    let p = pig(&f, 5, 0.2, 1).unwrap();
    assert!(p.value > 0.0);
}
