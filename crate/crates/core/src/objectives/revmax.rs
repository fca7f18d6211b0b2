use std::sync::Arc;

use crate::error::{Error, Result};
use crate::objectives::Graph;
use crate::oracle::{ElementId, Objective, SetView, ValueOracle};
use crate::scalar::Scalar;

/// Influence weights and concavity exponents of the revenue model.
///
/// `influence[i][r]` is `w_ij` for the `r`-th neighbour `j` of `i` in the
/// graph's adjacency order: the weight with which owner `j` raises buyer
/// `i`'s valuation. The two directions of an edge are independent.
#[derive(Clone, Debug, PartialEq)]
pub struct RevMaxParams<T> {
    pub influence: Vec<Vec<T>>,
    pub alpha: Vec<T>,
}

impl<T: Scalar> RevMaxParams<T> {
    /// Builds parameters from `w(i, j)` evaluated on every directed edge.
    pub fn from_fn(graph: &Graph<T>, mut w: impl FnMut(usize, usize) -> T, alpha: Vec<T>) -> Self {
        let influence = (0..graph.vertex_count())
            .map(|i| {
                graph
                    .neighbors(ElementId(i))
                    .iter()
                    .map(|&(j, _)| w(i, j.0))
                    .collect()
            })
            .collect();
        RevMaxParams { influence, alpha }
    }

    /// `w_ij`, if `{i, j}` is an edge.
    pub fn weight(&self, graph: &Graph<T>, i: usize, j: usize) -> Option<T> {
        graph
            .neighbors(ElementId(i))
            .iter()
            .position(|&(v, _)| v.0 == j)
            .map(|r| self.influence[i][r])
    }

    fn validate(&self, graph: &Graph<T>) -> Result<()> {
        let n = graph.vertex_count();
        if self.alpha.len() != n {
            return Err(Error::Parameter(format!(
                "expected {n} exponents, got {}",
                self.alpha.len()
            )));
        }
        if self.influence.len() != n {
            return Err(Error::Parameter(format!(
                "expected influence rows for {n} vertices, got {}",
                self.influence.len()
            )));
        }
        let open = |x: T| x > T::zero() && x < T::one();
        for i in 0..n {
            if self.influence[i].len() != graph.degree(ElementId(i)) {
                return Err(Error::Parameter(format!("influence row {i} does not match its degree")));
            }
            if let Some(w) = self.influence[i].iter().find(|&&w| !open(w)) {
                return Err(Error::Parameter(format!("weight {w} at vertex {i} is outside (0, 1)")));
            }
            if !open(self.alpha[i]) {
                return Err(Error::Parameter(format!(
                    "exponent {} at vertex {i} is outside (0, 1)",
                    self.alpha[i]
                )));
            }
        }
        Ok(())
    }
}

/// Revenue `f(S) = Σ_{i∉S} (Σ_{j∈S} w_ij)^{α_i}` with `0^α = 0`.
#[derive(Clone, Debug)]
pub struct RevMax<T> {
    graph: Arc<Graph<T>>,
    params: Arc<RevMaxParams<T>>,
}

impl<T: Scalar> RevMax<T> {
    pub fn new(graph: Arc<Graph<T>>, params: RevMaxParams<T>) -> Result<Self> {
        params.validate(&graph)?;
        Ok(RevMax {
            graph,
            params: Arc::new(params),
        })
    }

    #[inline]
    fn concave(&self, i: usize, x: T) -> T {
        if x > T::zero() {
            x.powf(self.params.alpha[i])
        } else {
            T::zero()
        }
    }

    /// `Σ_{j∈S} w_ij`, plus the weight of `extra` if it is a neighbour.
    fn influence_sum(&self, i: usize, set: &dyn SetView) -> T {
        let mut s = T::zero();
        for (r, &(j, _)) in self.graph.neighbors(ElementId(i)).iter().enumerate() {
            if set.contains(j) {
                s = s + self.params.influence[i][r];
            }
        }
        s
    }
}

impl<T: Scalar> Objective<T> for RevMax<T> {
    fn universe(&self) -> usize {
        self.graph.vertex_count()
    }

    fn value(&self, set: &dyn SetView) -> T {
        let mut buyers = Vec::new();
        set.for_each(&mut |j| {
            for &(i, _) in self.graph.neighbors(j) {
                if !set.contains(i) {
                    buyers.push(i);
                }
            }
        });
        buyers.sort_unstable();
        buyers.dedup();
        buyers
            .into_iter()
            .map(|i| self.concave(i.0, self.influence_sum(i.0, set)))
            .fold(T::zero(), |a, b| a + b)
    }

    fn gain(&self, x: ElementId, set: &dyn SetView) -> T {
        // x stops being a buyer; each neighbouring buyer gains w_ix.
        let mut delta = -self.concave(x.0, self.influence_sum(x.0, set));
        for &(i, _) in self.graph.neighbors(x) {
            if set.contains(i) {
                continue;
            }
            let mut before = T::zero();
            let mut w_ix = T::zero();
            for (r, &(j, _)) in self.graph.neighbors(i).iter().enumerate() {
                if j == x {
                    w_ix = self.params.influence[i.0][r];
                } else if set.contains(j) {
                    before = before + self.params.influence[i.0][r];
                }
            }
            delta = delta + self.concave(i.0, before + w_ix) - self.concave(i.0, before);
        }
        delta
    }

    fn name(&self) -> &str {
        "revmax"
    }
}

pub fn revmax_oracle<T: Scalar>(graph: Graph<T>, params: RevMaxParams<T>) -> Result<ValueOracle<T>> {
    Ok(ValueOracle::new(RevMax::new(Arc::new(graph), params)?))
}
