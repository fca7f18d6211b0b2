use crate::error::{domain, Result};
use crate::oracle::{ElementId, ValueOracle};
use crate::scalar::Scalar;

/// Checks `1 ≤ k ≤ n` for the oracle's ground set.
pub(crate) fn check_budget<T: Scalar>(oracle: &ValueOracle<T>, k: usize) -> Result<()> {
    let n = oracle.ground_size();
    if k == 0 || k > n {
        return domain(format!("budget k = {k} must satisfy 1 <= k <= n = {n}"));
    }
    Ok(())
}

/// Checks `lo < eps < hi`.
pub(crate) fn check_open(name: &str, eps: f64, lo: f64, hi: f64) -> Result<()> {
    if !(eps > lo && eps < hi) {
        return domain(format!("{name} = {eps} must lie in ({lo}, {hi})"));
    }
    Ok(())
}

/// Position and value of the largest gain; ties go to the earliest entry.
pub(crate) fn argmax<T: Scalar>(gains: &[T]) -> Option<(usize, T)> {
    let mut best: Option<(usize, T)> = None;
    for (i, &g) in gains.iter().enumerate() {
        match best {
            Some((_, b)) if g <= b => {}
            _ => best = Some((i, g)),
        }
    }
    best
}

/// Real elements followed by the dummy ids, ascending.
pub(crate) fn padded_ground<T: Scalar>(oracle: &ValueOracle<T>) -> Vec<ElementId> {
    let mut v = oracle.elements();
    v.extend(oracle.dummy_ids());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmax_prefers_first_of_ties() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0, 2.0]), Some((1, 3.0)));
        assert_eq!(argmax::<f64>(&[]), None);
        assert_eq!(argmax(&[-1.0, -0.5]), Some((1, -0.5)));
    }
}
