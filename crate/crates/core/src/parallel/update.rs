use crate::error::Result;
use crate::oracle::{ElementId, SolutionSet, ValueOracle};
use crate::scalar::Scalar;
use crate::util::check_open;

/// Filters `v` down to elements whose singleton value under `oracle` is at
/// least `tau`. While nothing survives, lowers `tau` by a factor `1 - eps` and
/// refilters the whole (restricted) ground set, giving up once `tau` drops
/// below `tau_min`.
///
/// Returns the surviving candidates in ascending id order and the final
/// threshold. Every filter pass that issues queries is one adaptive round.
pub fn update<T: Scalar>(
    oracle: &ValueOracle<T>,
    v: &[ElementId],
    tau: T,
    eps: f64,
    tau_min: T,
) -> Result<(Vec<ElementId>, T)> {
    check_open("epsilon", eps, 0.0, 1.0)?;
    if !(tau > T::zero()) {
        return crate::error::domain(format!("threshold {tau} must be positive"));
    }
    let (kept, tau, passes) = update_counted(oracle, v, tau, eps, tau_min);
    oracle.ledger().mark_rounds(passes);
    Ok((kept, tau))
}

/// [`update`] without argument checks that reports the number of filter
/// passes instead of marking rounds.
pub(crate) fn update_counted<T: Scalar>(
    oracle: &ValueOracle<T>,
    v: &[ElementId],
    mut tau: T,
    eps: f64,
    tau_min: T,
) -> (Vec<ElementId>, T, u64) {
    let empty = SolutionSet::new();
    let factor = T::one() - T::of(eps);
    let mut passes = 0;
    let filter = |candidates: &[ElementId], tau: T, passes: &mut u64| -> Vec<ElementId> {
        if candidates.is_empty() {
            return Vec::new();
        }
        *passes += 1;
        let gains = oracle.gains_batch(candidates, &empty);
        candidates
            .iter()
            .zip(gains)
            .filter(|&(_, g)| g >= tau)
            .map(|(&x, _)| x)
            .collect()
    };

    let mut start: Vec<ElementId> = v.iter().copied().filter(|&x| oracle.is_allowed(x)).collect();
    start.sort_unstable();
    start.dedup();
    let mut kept = filter(&start, tau, &mut passes);
    if !kept.is_empty() {
        return (kept, tau, passes);
    }
    let universe = oracle.elements();
    while kept.is_empty() {
        tau = tau * factor;
        if tau < tau_min {
            break;
        }
        kept = filter(&universe, tau, &mut passes);
    }
    (kept, tau, passes)
}
