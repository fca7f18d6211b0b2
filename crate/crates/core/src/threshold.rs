//! Descending-threshold versions of the interlaced and interpolated greedy
//! algorithms with `O(n log k / ε)` queries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::oracle::{ElementId, SolutionSet, ValueOracle};
use crate::record::{RunMeter, RunRecord, Trace, TraceEvent};
use crate::scalar::Scalar;
use crate::util::{check_budget, check_open};

/// One solution with its own threshold and scan position.
///
/// Elements before `cursor` were rejected at the current threshold against a
/// subset of the current solution, so by submodularity they would be rejected
/// again and the next scan may start at `cursor`.
struct Lane<T> {
    set: SolutionSet,
    value: T,
    tau: T,
    cursor: usize,
    added: usize,
}

impl<T: Scalar> Lane<T> {
    fn new(start: &SolutionSet, value: T, tau: T) -> Self {
        Lane {
            set: start.clone(),
            value,
            tau,
            cursor: 0,
            added: 0,
        }
    }

    /// First element at or after the cursor that is not taken and whose gain
    /// clears the threshold. One adaptive round.
    fn scan(&mut self, f: &ValueOracle<T>, order: &[ElementId], taken: &[bool]) -> Option<(ElementId, T)> {
        f.mark_round();
        while self.cursor < order.len() {
            let x = order[self.cursor];
            self.cursor += 1;
            if taken[x.0] {
                continue;
            }
            let gain = f.gain_unchecked(x, &self.set);
            if gain >= self.tau {
                return Some((x, gain));
            }
        }
        None
    }

    fn lower(&mut self, factor: T) {
        self.tau = self.tau * factor;
        self.cursor = 0;
    }
}

/// `M = max_x f({x})`, counted as one round.
fn max_singleton<T: Scalar>(f: &ValueOracle<T>) -> (T, Option<T>) {
    let out = f.singleton_scan();
    f.mark_round();
    out
}

/// Threshold variant of interlaced greedy. Requires `0 < ε < 1/2`.
pub fn fast_interlace_greedy<T: Scalar>(oracle: &ValueOracle<T>, k: usize, eps: f64) -> Result<RunRecord<T>> {
    fast_interlace_greedy_traced(oracle, k, eps, &mut Trace::disabled())
}

pub fn fast_interlace_greedy_traced<T: Scalar>(
    oracle: &ValueOracle<T>,
    k: usize,
    eps: f64,
    trace: &mut Trace<T>,
) -> Result<RunRecord<T>> {
    check_budget(oracle, k)?;
    check_open("epsilon", eps, 0.0, 0.5)?;
    let meter = RunMeter::start(oracle);
    let f = oracle;
    let (empty_value, m) = max_singleton(f);
    let empty = SolutionSet::new();
    let m = match m {
        Some(m) if m > T::zero() => m,
        _ => return Ok(meter.finish(oracle, &empty, empty_value, 0)),
    };
    let floor = T::of(eps) * m / T::of_count(k);
    let factor = T::one() - T::of(eps);
    let order = f.elements();
    let mut taken = vec![false; f.real_len()];
    let mut lanes = [Lane::new(&empty, empty_value, m), Lane::new(&empty, empty_value, m)];

    for _ in 0..k {
        let mut live = false;
        for side in 0..2 {
            let lane = &mut lanes[side];
            while lane.tau >= floor && lane.set.len() < k {
                if let Some((x, gain)) = lane.scan(f, &order, &taken) {
                    trace.push(|| TraceEvent::Added {
                        phase: 0,
                        solution: side,
                        element: x,
                        gain: Some(gain),
                        threshold: Some(lane.tau),
                        mark: None,
                        context: lane.set.as_slice().to_vec(),
                    });
                    lane.set.insert(x);
                    lane.value = lane.value + gain;
                    taken[x.0] = true;
                    break;
                }
                lane.lower(factor);
                trace.push(|| TraceEvent::ThresholdLowered {
                    phase: 0,
                    solution: side,
                    threshold: lane.tau,
                });
            }
            live |= lane.tau >= floor && lane.set.len() < k;
        }
        if !live {
            break;
        }
    }
    let best = if lanes[1].value > lanes[0].value { 1 } else { 0 };
    Ok(meter.finish(oracle, &lanes[best].set, lanes[best].value, 0))
}

/// Number of solutions used by [`fast_interpolated_greedy`]: `⌈4/(eε)⌉`.
pub fn interpolation_width(eps: f64) -> usize {
    (4.0 / (std::f64::consts::E * eps)).ceil() as usize
}

/// Threshold variant of interpolated greedy. Requires `0 < ε < 1` and
/// `k ≥ ⌈4/(eε)⌉`.
pub fn fast_interpolated_greedy<T: Scalar>(
    oracle: &ValueOracle<T>,
    k: usize,
    eps: f64,
    seed: u64,
) -> Result<RunRecord<T>> {
    fast_interpolated_greedy_traced(oracle, k, eps, seed, &mut Trace::disabled())
}

pub fn fast_interpolated_greedy_traced<T: Scalar>(
    oracle: &ValueOracle<T>,
    k: usize,
    eps: f64,
    seed: u64,
    trace: &mut Trace<T>,
) -> Result<RunRecord<T>> {
    check_budget(oracle, k)?;
    check_open("epsilon", eps, 0.0, 1.0)?;
    let ell = interpolation_width(eps);
    if k < ell {
        return domain(format!(
            "epsilon = {eps} needs {ell} solutions, so k must be at least {ell} (got {k})"
        ));
    }
    let meter = RunMeter::start(oracle);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = oracle;
    let half = eps / 2.0;
    let m = k / ell;
    let (empty_value, max) = max_singleton(f);
    let mut g = SolutionSet::new();
    let mut g_value = empty_value;
    let max = match max {
        Some(v) if v > T::zero() => v,
        _ => return Ok(meter.finish(oracle, &g, g_value, seed)),
    };
    let floor = T::of(half) * max / T::of_count(k);
    let factor = T::one() - T::of(half);
    let order = f.elements();

    for phase in 0..ell {
        let chosen = rng.gen_range(0..ell);
        let mut taken = vec![false; f.real_len()];
        for x in g.iter() {
            taken[x.0] = true;
        }
        let mut lanes: Vec<Lane<T>> = (0..ell).map(|_| Lane::new(&g, g_value, max)).collect();
        for _ in 0..m {
            for (l, lane) in lanes.iter_mut().enumerate() {
                while lane.tau >= floor && lane.added < m {
                    if let Some((x, gain)) = lane.scan(f, &order, &taken) {
                        trace.push(|| TraceEvent::Added {
                            phase,
                            solution: l,
                            element: x,
                            gain: Some(gain),
                            threshold: Some(lane.tau),
                            mark: None,
                            context: lane.set.as_slice().to_vec(),
                        });
                        lane.set.insert(x);
                        lane.value = lane.value + gain;
                        lane.added += 1;
                        taken[x.0] = true;
                        break;
                    }
                    lane.lower(factor);
                    trace.push(|| TraceEvent::ThresholdLowered {
                        phase,
                        solution: l,
                        threshold: lane.tau,
                    });
                }
            }
        }
        trace.push(|| TraceEvent::Chosen {
            phase,
            solution: chosen,
        });
        let lane = lanes.swap_remove(chosen);
        g = lane.set;
        g_value = lane.value;
    }
    Ok(meter.finish(oracle, &g, g_value, seed))
}
