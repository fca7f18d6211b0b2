use crate::oracle::{ElementId, Objective, SetView};
use crate::scalar::Scalar;

/// Additive function `f(S) = Σ_{i∈S} w_i`.
#[derive(Clone, Debug)]
pub struct Modular<T> {
    weights: Vec<T>,
}

impl<T: Scalar> Modular<T> {
    pub fn new(weights: Vec<T>) -> Self {
        Modular { weights }
    }

    /// `f(S) = |S|`.
    pub fn cardinality(n: usize) -> Self {
        Modular {
            weights: vec![T::one(); n],
        }
    }
}

impl<T: Scalar> Objective<T> for Modular<T> {
    fn universe(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, set: &dyn SetView) -> T {
        let mut ids = set.to_vec();
        ids.sort_unstable();
        ids.into_iter().map(|i| self.weights[i.0]).sum()
    }

    fn gain(&self, x: ElementId, _set: &dyn SetView) -> T {
        self.weights[x.0]
    }

    fn name(&self) -> &str {
        "modular"
    }
}
