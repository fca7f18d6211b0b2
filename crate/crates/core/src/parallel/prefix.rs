use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::PrefixMark;
use crate::oracle::{ElementId, SetView, ValueOracle};
use crate::scalar::Scalar;

/// The first `len` entries of a permutation, as a set.
struct PrefixView<'a> {
    order: &'a [ElementId],
    position: &'a [usize],
    len: usize,
}

impl SetView for PrefixView<'_> {
    #[inline]
    fn contains(&self, id: ElementId) -> bool {
        self.position.get(id.0).is_some_and(|&p| p < self.len)
    }

    fn for_each(&self, f: &mut dyn FnMut(ElementId)) {
        for &x in &self.order[..self.len] {
            f(x);
        }
    }

    fn count(&self) -> usize {
        self.len
    }
}

/// Outcome of [`prefix_selection`].
#[derive(Clone, Debug, PartialEq)]
pub struct PrefixSelection<T> {
    /// The random permutation of the candidates.
    pub order: Vec<ElementId>,
    /// Marks of the first `min(s, |𝒱|)` positions.
    pub marks: Vec<PrefixMark>,
    /// `g(v_i | {v_1, …, v_{i-1}})` for the same positions.
    pub gains: Vec<T>,
    /// Longest prefix in which at least a `1 - ε` fraction is marked
    /// [`PrefixMark::Above`]; 0 if there is none.
    pub istar: usize,
}

/// Randomly permutes `candidates`, measures every prefix marginal
/// `g(v_i | v_1..v_{i-1})` for `i ≤ min(s, |𝒱|)` in one adaptive round, and
/// returns the longest prefix that is mostly above `tau`.
pub fn prefix_selection<T: Scalar>(
    oracle: &ValueOracle<T>,
    candidates: &[ElementId],
    s: usize,
    tau: T,
    eps: f64,
    seed: u64,
) -> PrefixSelection<T> {
    let sel = prefix_selection_with(oracle, candidates, s, tau, eps, &mut ChaCha8Rng::seed_from_u64(seed));
    oracle.mark_round();
    sel
}

/// [`prefix_selection`] drawing from a shared generator; the caller marks
/// the round.
pub(crate) fn prefix_selection_with<T: Scalar>(
    oracle: &ValueOracle<T>,
    candidates: &[ElementId],
    s: usize,
    tau: T,
    eps: f64,
    rng: &mut ChaCha8Rng,
) -> PrefixSelection<T> {
    let mut order = candidates.to_vec();
    order.shuffle(rng);
    let len = s.min(order.len());
    let mut position = vec![usize::MAX; oracle.universe_len()];
    for (p, x) in order.iter().enumerate() {
        position[x.0] = p;
    }
    let gain_at = |i: usize| {
        let prefix = PrefixView {
            order: &order,
            position: &position,
            len: i,
        };
        oracle.gain_unchecked(order[i], &prefix)
    };
    let gains: Vec<T> = if len < 128 {
        (0..len).map(gain_at).collect()
    } else {
        (0..len).into_par_iter().map(gain_at).collect()
    };
    let marks: Vec<PrefixMark> = gains.iter().map(|&g| PrefixMark::classify(g, tau)).collect();
    let istar = longest_good_prefix(&marks, eps);
    PrefixSelection {
        order,
        marks,
        gains,
        istar,
    }
}

/// `max{i : #Above in marks[..i] ≥ (1 - ε) i}`, or 0.
fn longest_good_prefix(marks: &[PrefixMark], eps: f64) -> usize {
    let mut above = 0usize;
    let mut best = 0;
    for (idx, m) in marks.iter().enumerate() {
        if *m == PrefixMark::Above {
            above += 1;
        }
        let i = idx + 1;
        // Integer form of above ≥ (1 - ε)·i, robust to rounding of 1 - ε.
        if ((i - above) as f64) <= eps * i as f64 + 1e-12 {
            best = i;
        }
    }
    best
}

/// Chooses `istar` positions among the first `istar_j` of `order`: all
/// [`PrefixMark::Above`] positions first, then [`PrefixMark::Neutral`], then
/// [`PrefixMark::Negative`], each in position order.
///
/// Returns the chosen elements in position order, and the same list without
/// the negatively marked ones.
pub fn select_subset(
    order: &[ElementId],
    istar_j: usize,
    istar: usize,
    marks: &[PrefixMark],
) -> (Vec<ElementId>, Vec<ElementId>) {
    assert!(
        istar <= istar_j && istar_j <= order.len() && istar_j <= marks.len(),
        "select_subset needs istar <= istar_j <= |order|"
    );
    let mut picked = vec![false; istar_j];
    let mut count = 0;
    for pass in [PrefixMark::Above, PrefixMark::Neutral, PrefixMark::Negative] {
        for p in 0..istar_j {
            if count == istar {
                break;
            }
            if marks[p] == pass {
                picked[p] = true;
                count += 1;
            }
        }
    }
    let chosen: Vec<usize> = (0..istar_j).filter(|&p| picked[p]).collect();
    let all = chosen.iter().map(|&p| order[p]).collect();
    let kept = chosen
        .iter()
        .filter(|&&p| marks[p] != PrefixMark::Negative)
        .map(|&p| order[p])
        .collect();
    (all, kept)
}
