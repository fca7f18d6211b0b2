//! Interlaced greedy (deterministic) and interpolated greedy (randomized).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::oracle::{ElementId, SolutionSet, ValueOracle};
use crate::record::{RunMeter, RunRecord, Trace, TraceEvent};
use crate::scalar::Scalar;
use crate::util::{argmax, check_budget, padded_ground};

/// Two solutions grown alternately by plain greedy steps over a shared pool.
///
/// The ground set is padded with `2k` dummies so a step whose best real gain
/// is negative adds a dummy instead. Exactly `2k` adaptive rounds.
pub fn interlace_greedy<T: Scalar>(oracle: &ValueOracle<T>, k: usize) -> Result<RunRecord<T>> {
    interlace_greedy_traced(oracle, k, &mut Trace::disabled())
}

pub fn interlace_greedy_traced<T: Scalar>(
    oracle: &ValueOracle<T>,
    k: usize,
    trace: &mut Trace<T>,
) -> Result<RunRecord<T>> {
    check_budget(oracle, k)?;
    let meter = RunMeter::start(oracle);
    let f = oracle.with_dummies(2 * k);
    let ground = padded_ground(&f);
    let empty_value = f.value_unchecked(&SolutionSet::new());

    let mut sols = [
        SolutionSet::with_universe(f.universe_len()),
        SolutionSet::with_universe(f.universe_len()),
    ];
    let mut values = [empty_value; 2];
    for _ in 0..k {
        for side in 0..2 {
            let candidates: Vec<ElementId> = ground
                .iter()
                .copied()
                .filter(|&x| !sols[0].contains(x) && !sols[1].contains(x))
                .collect();
            let gains = f.gains_batch(&candidates, &sols[side]);
            f.mark_round();
            let Some((pos, gain)) = argmax(&gains) else {
                continue;
            };
            let x = candidates[pos];
            trace.push(|| TraceEvent::Added {
                phase: 0,
                solution: side,
                element: x,
                gain: Some(gain),
                threshold: None,
                mark: None,
                context: sols[side].as_slice().to_vec(),
            });
            sols[side].insert(x);
            values[side] = values[side] + gain;
        }
    }
    let best = if values[1] > values[0] { 1 } else { 0 };
    Ok(meter.finish(oracle, &sols[best], values[best], 0))
}

/// `ℓ` rounds of interlaced growth of `ℓ` solutions from a common start `G`,
/// each followed by replacing `G` with one of the solutions at random.
///
/// Elements claimed by any solution leave the shared pool for the rest of
/// the run. Returns `ℓ⌊k/ℓ⌋` elements at most.
pub fn interpolated_greedy<T: Scalar>(
    oracle: &ValueOracle<T>,
    k: usize,
    ell: usize,
    seed: u64,
) -> Result<RunRecord<T>> {
    interpolated_greedy_traced(oracle, k, ell, seed, &mut Trace::disabled())
}

pub fn interpolated_greedy_traced<T: Scalar>(
    oracle: &ValueOracle<T>,
    k: usize,
    ell: usize,
    seed: u64,
    trace: &mut Trace<T>,
) -> Result<RunRecord<T>> {
    check_budget(oracle, k)?;
    if ell == 0 || ell > k {
        return domain(format!("ell = {ell} must satisfy 1 <= ell <= k = {k}"));
    }
    let meter = RunMeter::start(oracle);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = oracle.with_dummies(2 * k);
    let m = k / ell;
    let mut pool = padded_ground(&f);

    let mut g = SolutionSet::with_universe(f.universe_len());
    let mut g_value = f.value_unchecked(&SolutionSet::new());
    for phase in 0..ell {
        let chosen = rng.gen_range(0..ell);
        let mut sols = vec![g.clone(); ell];
        let mut values = vec![g_value; ell];
        for _ in 0..m {
            for l in 0..ell {
                let gains = f.gains_batch(&pool, &sols[l]);
                if !pool.is_empty() {
                    f.mark_round();
                }
                let Some((pos, gain)) = argmax(&gains) else {
                    continue;
                };
                let x = pool.remove(pos);
                trace.push(|| TraceEvent::Added {
                    phase,
                    solution: l,
                    element: x,
                    gain: Some(gain),
                    threshold: None,
                    mark: None,
                    context: sols[l].as_slice().to_vec(),
                });
                sols[l].insert(x);
                values[l] = values[l] + gain;
            }
        }
        trace.push(|| TraceEvent::Chosen {
            phase,
            solution: chosen,
        });
        g = sols.swap_remove(chosen);
        g_value = values[chosen];
    }
    Ok(meter.finish(oracle, &g, g_value, seed))
}
