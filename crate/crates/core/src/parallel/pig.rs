use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{distribute_with, prefix_selection_with, select_subset, update_counted, PrefixMark};
use crate::error::{domain, Result};
use crate::oracle::{ElementId, SolutionSet, ValueOracle};
use crate::record::{RunMeter, RunRecord, Trace, TraceEvent};
use crate::scalar::Scalar;
use crate::util::{check_budget, check_open};

/// Final state of [`parallel_interlace_greedy`].
#[derive(Clone, Debug, PartialEq)]
pub struct PigOutcome<T> {
    /// The full solutions `A_l`, in insertion order.
    pub solutions: Vec<SolutionSet>,
    /// The filtered solutions `A_l' ⊆ A_l` without negatively marked blocks.
    pub filtered: Vec<SolutionSet>,
    /// `max_x g({x})` of the oracle the routine ran on.
    pub max_singleton: T,
}

/// Grows `ell` disjoint solutions of at most `m` elements each with
/// descending thresholds, adding blocks picked by prefix selection whenever
/// every candidate pool holds at least `2ℓ` elements and single random
/// elements otherwise. A solution retires once its threshold falls below
/// `tau_min`.
pub fn parallel_interlace_greedy<T: Scalar>(
    oracle: &ValueOracle<T>,
    m: usize,
    ell: usize,
    tau_min: T,
    eps: f64,
    seed: u64,
) -> Result<PigOutcome<T>> {
    if m == 0 {
        return domain("block budget m must be at least 1");
    }
    if ell < 2 {
        return domain(format!("ell = {ell} must be at least 2"));
    }
    check_open("epsilon", eps, 0.0, 1.0)?;
    if !(tau_min > T::zero()) {
        return domain(format!("tau_min = {tau_min} must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pig_core(oracle, m, ell, tau_min, eps, None, &mut rng, &mut Trace::disabled(), 0)
}

/// Shared body of the parallel algorithms. `known_max` skips the initial
/// singleton round when the caller has already measured it on `oracle`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn pig_core<T: Scalar>(
    oracle: &ValueOracle<T>,
    m: usize,
    ell: usize,
    tau_min: T,
    eps: f64,
    known_max: Option<T>,
    rng: &mut ChaCha8Rng,
    trace: &mut Trace<T>,
    phase: usize,
) -> Result<PigOutcome<T>> {
    let universe = oracle.universe_len();
    let mut sols = vec![SolutionSet::with_universe(universe); ell];
    let mut filtered = vec![SolutionSet::with_universe(universe); ell];
    let max = match known_max {
        Some(v) => Some(v),
        None => {
            let (_, max) = oracle.singleton_scan();
            oracle.mark_round();
            max
        }
    };
    let max = match max {
        Some(v) if v > T::zero() => v,
        other => {
            return Ok(PigOutcome {
                solutions: sols,
                filtered,
                max_singleton: other.unwrap_or_else(T::zero),
            })
        }
    };

    let ground = oracle.elements();
    let mut pools: Vec<Vec<ElementId>> = vec![ground; ell];
    let mut taus = vec![max; ell];
    let mut active: Vec<usize> = (0..ell).collect();
    let mut taken = SolutionSet::with_universe(universe);
    let mut budget = m;

    while !active.is_empty() && budget > 0 {
        // Candidate refresh for every live solution, one parallel batch.
        let mut widest = 0;
        for &j in &active {
            let g = oracle.contract_excluding(&sols[j], &taken)?;
            let (pool, tau, passes) = update_counted(&g, &pools[j], taus[j], eps, tau_min);
            pools[j] = pool;
            taus[j] = tau;
            widest = widest.max(passes);
        }
        oracle.ledger().mark_rounds(widest);
        active.retain(|&j| taus[j] >= tau_min);
        if active.is_empty() {
            break;
        }

        if active.iter().any(|&j| pools[j].len() < 2 * ell) {
            // One element per solution, in turn.
            for j in active.clone() {
                if pools[j].is_empty() {
                    let g = oracle.contract_excluding(&sols[j], &taken)?;
                    let (pool, tau, passes) = update_counted(&g, &pools[j], taus[j], eps, tau_min);
                    oracle.ledger().mark_rounds(passes);
                    pools[j] = pool;
                    taus[j] = tau;
                }
                if taus[j] < tau_min {
                    active.retain(|&l| l != j);
                    continue;
                }
                let x = pools[j][rng.gen_range(0..pools[j].len())];
                let tau = taus[j];
                trace.push(|| TraceEvent::Added {
                    phase,
                    solution: j,
                    element: x,
                    gain: None,
                    threshold: Some(tau),
                    mark: None,
                    context: sols[j].as_slice().to_vec(),
                });
                sols[j].insert(x);
                filtered[j].insert(x);
                taken.insert(x);
                for pool in pools.iter_mut() {
                    pool.retain(|&y| y != x);
                }
            }
            budget -= 1;
        } else {
            // Equal-size blocks for every solution.
            let live: Vec<Vec<ElementId>> = active.iter().map(|&j| pools[j].clone()).collect();
            let parts = distribute_with(&live, rng);
            let s = parts.iter().map(Vec::len).min().unwrap_or(0).min(budget);
            let mut selections = Vec::with_capacity(active.len());
            for (slot, &j) in active.iter().enumerate() {
                let g = oracle.contract_excluding(&sols[j], &taken)?;
                selections.push(prefix_selection_with(&g, &parts[slot], s, taus[j], eps, rng));
            }
            oracle.mark_round();
            let istar = selections.iter().map(|sel| sel.istar).min().unwrap_or(0);
            if istar == 0 {
                // The first candidate of a stalled solution fell below its
                // threshold; drop it so the next refresh makes progress.
                for (slot, &j) in active.iter().enumerate() {
                    let sel = &selections[slot];
                    if sel.istar == 0 {
                        if let Some(&first) = sel.order.first() {
                            pools[j].retain(|&y| y != first);
                        }
                    }
                }
                continue;
            }
            for (slot, &j) in active.iter().enumerate() {
                let sel = &selections[slot];
                let (block, kept) = select_subset(&sel.order, sel.istar, istar, &sel.marks);
                if trace.is_enabled() {
                    let prefix_len = sel.istar;
                    for &x in &block {
                        let p = sel.order[..prefix_len].iter().position(|&y| y == x).expect("chosen from prefix");
                        let mark: PrefixMark = sel.marks[p];
                        let context: Vec<ElementId> =
                            sols[j].iter().chain(sel.order[..p].iter().copied()).collect();
                        let gain = sel.gains[p];
                        let tau = taus[j];
                        trace.push(|| TraceEvent::Added {
                            phase,
                            solution: j,
                            element: x,
                            gain: Some(gain),
                            threshold: Some(tau),
                            mark: Some(mark),
                            context,
                        });
                    }
                }
                sols[j].extend(block.iter().copied());
                filtered[j].extend(kept);
                taken.extend(block.iter().copied());
                for pool in pools.iter_mut() {
                    pool.retain(|y| !taken.contains(*y));
                }
            }
            budget -= istar;
        }
        trace.push(|| TraceEvent::IterationEnd {
            phase,
            solutions: sols.iter().map(|s| s.as_slice().to_vec()).collect(),
            filtered: filtered.iter().map(|s| s.as_slice().to_vec()).collect(),
            active: active.clone(),
        });
    }
    Ok(PigOutcome {
        solutions: sols,
        filtered,
        max_singleton: max,
    })
}

/// Two-solution parallel interlaced greedy with `τ_min = εM/k`; returns the
/// better filtered solution.
pub fn pig<T: Scalar>(oracle: &ValueOracle<T>, k: usize, eps: f64, seed: u64) -> Result<RunRecord<T>> {
    pig_detailed(oracle, k, eps, seed, &mut Trace::disabled()).map(|(r, _)| r)
}

/// [`pig`] that also returns both solution pairs and fills `trace`.
pub fn pig_detailed<T: Scalar>(
    oracle: &ValueOracle<T>,
    k: usize,
    eps: f64,
    seed: u64,
    trace: &mut Trace<T>,
) -> Result<(RunRecord<T>, PigOutcome<T>)> {
    check_budget(oracle, k)?;
    check_open("epsilon", eps, 0.0, 1.0)?;
    let meter = RunMeter::start(oracle);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (empty_value, max) = oracle.singleton_scan();
    oracle.mark_round();
    let max = max.unwrap_or_else(T::zero);
    let tau_min = T::of(eps) * max / T::of_count(k);
    let outcome = pig_core(oracle, k, 2, tau_min, eps, Some(max), &mut rng, trace, 0)?;
    if max <= T::zero() {
        let empty = SolutionSet::new();
        return Ok((meter.finish(oracle, &empty, empty_value, seed), outcome));
    }
    let values: Vec<T> = outcome.filtered.iter().map(|s| oracle.value_unchecked(s)).collect();
    oracle.mark_round();
    let best = if values[1] > values[0] { 1 } else { 0 };
    let record = meter.finish(oracle, &outcome.filtered[best], values[best], seed);
    Ok((record, outcome))
}
