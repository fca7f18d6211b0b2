//! Random greedy and its subsampled variant, used as reference algorithms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::oracle::{ElementId, SolutionSet, ValueOracle};
use crate::record::{RunMeter, RunRecord};
use crate::scalar::Scalar;
use crate::util::{argmax, check_budget, check_open, padded_ground};

/// `k` steps, each adding a uniformly random member of the `k` candidates
/// with the largest marginal gain (ties to the lower id). The ground set is
/// padded with `k` dummies.
pub fn random_greedy<T: Scalar>(oracle: &ValueOracle<T>, k: usize, seed: u64) -> Result<RunRecord<T>> {
    check_budget(oracle, k)?;
    let meter = RunMeter::start(oracle);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = oracle.with_dummies(k);
    let ground = padded_ground(&f);
    let mut s = SolutionSet::with_universe(f.universe_len());
    let mut value = f.value_unchecked(&SolutionSet::new());
    for _ in 0..k {
        let pick = rng.gen_range(0..k);
        let candidates: Vec<ElementId> = ground.iter().copied().filter(|&x| !s.contains(x)).collect();
        let gains = f.gains_batch(&candidates, &s);
        f.mark_round();
        let mut ranked: Vec<usize> = (0..candidates.len()).collect();
        ranked.sort_by(|&a, &b| gains[b].partial_cmp(&gains[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b)));
        let top = &ranked[..k.min(ranked.len())];
        let Some(&chosen) = top.get(pick.min(top.len().saturating_sub(1))) else {
            continue;
        };
        s.insert(candidates[chosen]);
        value = value + gains[chosen];
    }
    Ok(meter.finish(oracle, &s, value, seed))
}

/// Per-element sampling probability `8 ln(2/ε) / (kε)` of
/// [`fast_random_greedy`].
pub fn sample_probability(k: usize, eps: f64) -> f64 {
    8.0 / (k as f64 * eps) * (2.0 / eps).ln()
}

/// Greedy over a fresh Bernoulli sample of the remaining ground set at every
/// step; a step adds nothing when the sample is empty or its best gain is
/// negative. Falls back to [`random_greedy`] with the same seed when the
/// sampling probability reaches 1.
pub fn fast_random_greedy<T: Scalar>(
    oracle: &ValueOracle<T>,
    k: usize,
    eps: f64,
    seed: u64,
) -> Result<RunRecord<T>> {
    check_budget(oracle, k)?;
    check_open("epsilon", eps, 0.0, 1.0)?;
    let p = sample_probability(k, eps);
    if p >= 1.0 {
        return random_greedy(oracle, k, seed);
    }
    let meter = RunMeter::start(oracle);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ground = oracle.elements();
    let mut s = SolutionSet::with_universe(oracle.universe_len());
    let mut value = oracle.value_unchecked(&SolutionSet::new());
    for _ in 0..k {
        let sample: Vec<ElementId> = ground
            .iter()
            .copied()
            .filter(|&x| !s.contains(x))
            .filter(|_| rng.gen_bool(p))
            .collect();
        if sample.is_empty() {
            continue;
        }
        let gains = oracle.gains_batch(&sample, &s);
        oracle.mark_round();
        if let Some((pos, gain)) = argmax(&gains) {
            if gain >= T::zero() {
                s.insert(sample[pos]);
                value = value + gain;
            }
        }
    }
    Ok(meter.finish(oracle, &s, value, seed))
}
