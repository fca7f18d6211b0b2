use std::sync::Arc;

use crate::objectives::Graph;
use crate::oracle::{ElementId, Objective, SetView, ValueOracle};
use crate::scalar::Scalar;

/// Cut function `f(S) = Σ_{i∈S} Σ_{j∉S} w_ij`.
#[derive(Clone, Debug)]
pub struct MaxCut<T> {
    graph: Arc<Graph<T>>,
}

impl<T: Scalar> MaxCut<T> {
    pub fn new(graph: Arc<Graph<T>>) -> Self {
        MaxCut { graph }
    }

    pub fn graph(&self) -> &Graph<T> {
        &self.graph
    }
}

impl<T: Scalar> Objective<T> for MaxCut<T> {
    fn universe(&self) -> usize {
        self.graph.vertex_count()
    }

    fn value(&self, set: &dyn SetView) -> T {
        let mut members = set.to_vec();
        members.sort_unstable();
        let mut total = T::zero();
        for u in members {
            for &(v, w) in self.graph.neighbors(u) {
                if !set.contains(v) {
                    total = total + w;
                }
            }
        }
        total
    }

    fn gain(&self, x: ElementId, set: &dyn SetView) -> T {
        // Edges to S stop crossing, edges to V∖S start crossing.
        self.graph
            .neighbors(x)
            .iter()
            .fold(T::zero(), |acc, &(v, w)| if set.contains(v) { acc - w } else { acc + w })
    }

    fn name(&self) -> &str {
        "maxcut"
    }
}

pub fn maxcut_oracle<T: Scalar>(graph: Graph<T>) -> ValueOracle<T> {
    ValueOracle::new(MaxCut::new(Arc::new(graph)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::SolutionSet;

    fn set(ids: &[usize]) -> SolutionSet {
        ids.iter().map(|&i| ElementId(i)).collect()
    }

    #[test]
    fn triangle_values() {
        let f = maxcut_oracle::<f64>(Graph::complete(3));
        assert_eq!(f.evaluate(&set(&[])).unwrap(), 0.0);
        assert_eq!(f.evaluate(&set(&[0])).unwrap(), 2.0);
        assert_eq!(f.evaluate(&set(&[0, 1, 2])).unwrap(), 0.0);
    }

    #[test]
    fn path_centre() {
        let f = maxcut_oracle::<f64>(Graph::path(3));
        assert_eq!(f.evaluate(&set(&[1])).unwrap(), 2.0);
        assert_eq!(f.evaluate(&set(&[0, 2])).unwrap(), 2.0);
    }

    #[test]
    fn closed_form_gain_matches_definition() {
        let f = maxcut_oracle::<f64>(Graph::complete(5));
        let s = set(&[0, 3]);
        for x in [1, 2, 4] {
            let by_def = f.marginal_gain(ElementId(x), &s, None).unwrap();
            let fast = f.marginal_gain(ElementId(x), &s, Some(0.0)).unwrap();
            assert_eq!(by_def, fast);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let f = maxcut_oracle::<f32>(Graph::complete(4));
        assert_eq!(f.evaluate(&set(&[0, 1])).unwrap(), 4.0f32);
    }
}
