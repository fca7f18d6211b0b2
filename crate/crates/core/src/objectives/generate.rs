use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::objectives::{Graph, RevMaxParams};
use crate::scalar::Scalar;

/// Erdős–Rényi `G(n, p)` with unit weights, deterministic per seed.
///
/// Uses geometric skipping over the lower-triangular pair sequence, so the
/// cost is proportional to `n + m` rather than `n²`.
pub fn gen_er<T: Scalar>(n: usize, p: f64, seed: u64) -> Result<Graph<T>> {
    if n == 0 {
        return domain("graph needs at least one vertex");
    }
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("edge probability {p} is outside [0, 1]"));
    }
    if p == 0.0 {
        return Graph::unweighted(n, std::iter::empty());
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.gen();
        w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Graph::unweighted(n, edges)
}

/// Draws a sample from the open interval (0, 1).
fn open_unit<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let x: f64 = rng.gen();
        if x > 0.0 {
            return x;
        }
    }
}

/// Independent `w_ij ~ U(0,1)` per directed edge and `α_i ~ U(0,1)` per vertex.
///
/// Weights are drawn vertex by vertex in adjacency order, then the exponents.
pub fn gen_revmax_params<T: Scalar>(graph: &Graph<T>, seed: u64) -> RevMaxParams<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || {
        // Narrowing to f32 may round onto an endpoint; redraw in that case.
        loop {
            let x = T::of(open_unit(&mut rng));
            if x > T::zero() && x < T::one() {
                return x;
            }
        }
    };
    let influence: Vec<Vec<T>> = (0..graph.vertex_count())
        .map(|i| {
            (0..graph.degree(crate::oracle::ElementId(i)))
                .map(|_| draw())
                .collect()
        })
        .collect();
    let alpha = (0..graph.vertex_count()).map(|_| draw()).collect();
    RevMaxParams { influence, alpha }
}
