use std::collections::HashSet;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::oracle::ElementId;

/// Pairwise disjoint random subsets `𝒱_j ⊆ V_j` of size `⌊|V_j|/ℓ⌋` where
/// `ℓ = sets.len()`.
///
/// Sets are served from smallest to largest (ties by index), each sampling
/// uniformly among elements not yet claimed by an earlier one.
pub fn distribute(sets: &[Vec<ElementId>], seed: u64) -> Vec<Vec<ElementId>> {
    distribute_with(sets, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub(crate) fn distribute_with(sets: &[Vec<ElementId>], rng: &mut ChaCha8Rng) -> Vec<Vec<ElementId>> {
    let ell = sets.len();
    let mut out = vec![Vec::new(); ell];
    if ell == 0 {
        return out;
    }
    let mut order: Vec<usize> = (0..ell).collect();
    order.sort_by_key(|&j| (sets[j].len(), j));
    let mut claimed: HashSet<ElementId> = HashSet::new();
    for j in order {
        let available: Vec<ElementId> = sets[j].iter().copied().filter(|x| !claimed.contains(x)).collect();
        let want = (sets[j].len() / ell).min(available.len());
        let picked: Vec<ElementId> = index::sample(rng, available.len(), want)
            .into_iter()
            .map(|i| available[i])
            .collect();
        claimed.extend(picked.iter().copied());
        out[j] = picked;
    }
    out
}
