use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::pig_core;
use crate::error::{domain, Result};
use crate::oracle::{SolutionSet, ValueOracle};
use crate::record::{RunMeter, RunRecord, Trace, TraceEvent};
use crate::scalar::Scalar;
use crate::util::{check_budget, check_open};

/// Whether `k ≥ (2-ε)²ℓ / (eεℓ - 4)` with a positive denominator, the regime
/// in which [`parallel_interpolated_greedy`] carries its approximation
/// guarantee.
pub fn pitg_size_condition(k: usize, ell: usize, eps: f64) -> bool {
    let denom = std::f64::consts::E * eps * ell as f64 - 4.0;
    denom > 0.0 && k as f64 >= (2.0 - eps).powi(2) * ell as f64 / denom
}

/// `ℓ` rounds of [`parallel_interlace_greedy`](super::parallel_interlace_greedy)
/// with `ℓ` solutions of `⌊k/ℓ⌋` elements on the contraction onto the current
/// set `G`, each followed by adding one of the filtered solutions to `G` at
/// random.
pub fn parallel_interpolated_greedy<T: Scalar>(
    oracle: &ValueOracle<T>,
    k: usize,
    ell: usize,
    eps: f64,
    seed: u64,
) -> Result<RunRecord<T>> {
    parallel_interpolated_greedy_traced(oracle, k, ell, eps, seed, &mut Trace::disabled())
}

pub fn parallel_interpolated_greedy_traced<T: Scalar>(
    oracle: &ValueOracle<T>,
    k: usize,
    ell: usize,
    eps: f64,
    seed: u64,
    trace: &mut Trace<T>,
) -> Result<RunRecord<T>> {
    check_budget(oracle, k)?;
    check_open("epsilon", eps, 0.0, 1.0)?;
    if ell < 2 || ell > k {
        return domain(format!("ell = {ell} must satisfy 2 <= ell <= k = {k}"));
    }
    if !pitg_size_condition(k, ell, eps) {
        log::warn!("k = {k}, ell = {ell}, epsilon = {eps} is outside the guaranteed regime");
    }
    let meter = RunMeter::start(oracle);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = eps / 2.0;
    let m = k / ell;
    let (_, max) = oracle.singleton_scan();
    oracle.mark_round();
    let mut g = SolutionSet::new();
    let max = match max {
        Some(v) if v > T::zero() => v,
        _ => {
            let value = oracle.value_unchecked(&g);
            return Ok(meter.finish(oracle, &g, value, seed));
        }
    };
    let tau_min = T::of(half) * max / T::of_count(k);

    for phase in 0..ell {
        let chosen = rng.gen_range(0..ell);
        let fg = oracle.contract_excluding(&g, &SolutionSet::new())?;
        let out = pig_core(&fg, m, ell, tau_min, half, None, &mut rng, trace, phase)?;
        trace.push(|| TraceEvent::Chosen {
            phase,
            solution: chosen,
        });
        g.extend(out.filtered[chosen].iter());
    }
    let value = oracle.value_unchecked(&g);
    Ok(meter.finish(oracle, &g, value, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{gen_er, maxcut_oracle, Graph, Modular};

    #[test]
    fn reproducible_and_within_budget() {
        let f = maxcut_oracle::<f64>(gen_er(100, 0.05, 1).unwrap());
        let a = parallel_interpolated_greedy(&f, 12, 3, 0.2, 6).unwrap();
        let b = parallel_interpolated_greedy(&f.with_fresh_ledger(), 12, 3, 0.2, 6).unwrap();
        assert!(a.same_outcome(&b));
        assert!(a.solution.len() <= 12);
        assert!((f.evaluate(&SolutionSet::from_ids(a.solution.iter().copied())).unwrap() - a.value).abs() < 1e-9);
    }

    #[test]
    fn star_gets_positive_value() {
        let f = maxcut_oracle::<f64>(Graph::star(9));
        let r = parallel_interpolated_greedy(&f, 4, 2, 0.2, 0).unwrap();
        assert!(r.value > 0.0);
        assert!(r.solution.len() <= 4);
    }

    #[test]
    fn modular_reaches_budget() {
        let f: ValueOracle<f64> = ValueOracle::new(Modular::cardinality(40));
        let r = parallel_interpolated_greedy(&f, 10, 2, 0.2, 0).unwrap();
        assert_eq!(r.value, 10.0);
    }

    #[test]
    fn rejects_bad_width() {
        let f = maxcut_oracle::<f64>(Graph::complete(5));
        assert!(parallel_interpolated_greedy(&f, 2, 3, 0.2, 0).is_err());
        assert!(parallel_interpolated_greedy(&f, 2, 1, 0.2, 0).is_err());
    }

    #[test]
    fn size_condition() {
        assert!(!pitg_size_condition(4, 2, 0.2));
        assert!(pitg_size_condition(1000, 10, 0.2));
    }
}
