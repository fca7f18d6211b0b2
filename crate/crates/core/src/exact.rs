//! Exhaustive optimum and empirical submodularity audit for small instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::{ElementId, SolutionSet, ValueOracle};
use crate::scalar::Scalar;

/// Largest ground set [`brute_force_opt`] will enumerate.
pub const ENUMERATION_LIMIT: usize = 22;

/// Tolerance of the submodularity and non-negativity audit.
pub const AUDIT_TOLERANCE: f64 = 1e-9;

/// Exact `argmax_{|S| ≤ k} f(S)`.
///
/// Ties are broken towards the lexicographically smallest sorted id sequence,
/// so the empty set wins every tie it takes part in.
pub fn brute_force_opt<T: Scalar>(oracle: &ValueOracle<T>, k: usize) -> Result<(SolutionSet, T)> {
    let elems = oracle.elements();
    if elems.len() > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            size: elems.len(),
            limit: ENUMERATION_LIMIT,
        });
    }
    let k = k.min(elems.len());
    let mut best_ids: Vec<ElementId> = Vec::new();
    let mut best = oracle.evaluate(&SolutionSet::new())?;
    for mask in 1u32..(1u32 << elems.len()) {
        if mask.count_ones() as usize > k {
            continue;
        }
        let ids = subset(&elems, mask);
        let value = oracle.evaluate(&SolutionSet::from_ids(ids.iter().copied()))?;
        if value > best || (value == best && ids < best_ids) {
            best = value;
            best_ids = ids;
        }
    }
    Ok((SolutionSet::from_ids(best_ids), best))
}

/// Members of `mask` in ascending id order.
pub(crate) fn subset(elems: &[ElementId], mask: u32) -> Vec<ElementId> {
    elems
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, &e)| e)
        .collect()
}

/// A diminishing-returns violation found by [`check_submodular`].
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<T> {
    pub small: Vec<ElementId>,
    pub large: Vec<ElementId>,
    pub element: ElementId,
    pub gain_small: T,
    pub gain_large: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubmodularityReport<T> {
    pub trials: usize,
    pub violations: Vec<Violation<T>>,
    /// Sets observed with `f(S) < -tolerance`.
    pub negative_values: Vec<(Vec<ElementId>, T)>,
}

impl<T> SubmodularityReport<T> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.negative_values.is_empty()
    }
}

/// Samples chains `S ⊆ T` and `x ∉ T` and checks `Δ(x|S) ≥ Δ(x|T)` as well as
/// `f ≥ 0` on every evaluated set. Gains are computed from two evaluations
/// each, independently of any closed-form gain the objective provides.
pub fn check_submodular<T: Scalar>(
    oracle: &ValueOracle<T>,
    trials: usize,
    seed: u64,
) -> Result<SubmodularityReport<T>> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    let tol = T::of(AUDIT_TOLERANCE);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elems = oracle.elements();
    let mut report = SubmodularityReport {
        trials,
        violations: Vec::new(),
        negative_values: Vec::new(),
    };
    if elems.is_empty() {
        return Ok(report);
    }
    for _ in 0..trials {
        let x = *elems.choose(&mut rng).expect("non-empty");
        let p_large: f64 = rng.gen();
        let p_small: f64 = rng.gen();
        let large: Vec<ElementId> = elems
            .iter()
            .copied()
            .filter(|&e| e != x && rng.gen::<f64>() < p_large)
            .collect();
        let small: Vec<ElementId> = large
            .iter()
            .copied()
            .filter(|_| rng.gen::<f64>() < p_small)
            .collect();

        let s = SolutionSet::from_ids(small.iter().copied());
        let t = SolutionSet::from_ids(large.iter().copied());
        let mut s_plus = s.clone();
        s_plus.insert(x);
        let mut t_plus = t.clone();
        t_plus.insert(x);

        let values = [
            (&s, oracle.evaluate(&s)?),
            (&s_plus, oracle.evaluate(&s_plus)?),
            (&t, oracle.evaluate(&t)?),
            (&t_plus, oracle.evaluate(&t_plus)?),
        ];
        for (set, v) in values.iter() {
            if *v < -tol {
                report.negative_values.push((set.as_slice().to_vec(), *v));
            }
        }
        let gain_small = values[1].1 - values[0].1;
        let gain_large = values[3].1 - values[2].1;
        if gain_small < gain_large - tol {
            report.violations.push(Violation {
                small,
                large,
                element: x,
                gain_small,
                gain_large,
            });
        }
    }
    Ok(report)
}
