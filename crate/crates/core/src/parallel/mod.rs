//! Low-adaptivity algorithms built on threshold sampling.
//!
//! [`pig`] grows two interlaced solutions in blocks chosen by
//! [`prefix_selection`]; [`parallel_interpolated_greedy`] repeats the same
//! machinery on contracted oracles. Queries that the algorithms issue as one
//! parallel batch are counted as a single adaptive round.

mod distribute;
mod pig;
mod pitg;
mod prefix;
mod update;

pub use distribute::distribute;
pub use pig::{parallel_interlace_greedy, pig, pig_detailed, PigOutcome};
pub use pitg::{parallel_interpolated_greedy, parallel_interpolated_greedy_traced, pitg_size_condition};
pub use prefix::{prefix_selection, select_subset, PrefixSelection};
pub use update::update;

pub(crate) use distribute::distribute_with;
pub(crate) use pig::pig_core;
pub(crate) use prefix::prefix_selection_with;
pub(crate) use update::update_counted;

/// Classification of one prefix position during prefix selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrefixMark {
    /// Marginal gain at least the threshold.
    Above,
    /// Non-negative but below the threshold.
    Neutral,
    /// Negative marginal gain.
    Negative,
}

impl PrefixMark {
    pub(crate) fn classify<T: crate::Scalar>(gain: T, tau: T) -> Self {
        if gain >= tau {
            PrefixMark::Above
        } else if gain < T::zero() {
            PrefixMark::Negative
        } else {
            PrefixMark::Neutral
        }
    }
}
