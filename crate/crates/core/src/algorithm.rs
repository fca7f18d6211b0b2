//! Name-addressable catalogue of the algorithms in this crate.

use std::fmt;

use crate::error::{domain, Result};
use crate::oracle::ValueOracle;
use crate::record::RunRecord;
use crate::scalar::Scalar;

/// An algorithm together with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Algorithm {
    InterlaceGreedy,
    InterpolatedGreedy { ell: usize },
    FastInterlaceGreedy { eps: f64 },
    FastInterpolatedGreedy { eps: f64 },
    Pig { eps: f64 },
    Pitg { ell: usize, eps: f64 },
    RandomGreedy,
    FastRandomGreedy { eps: f64 },
}

impl Algorithm {
    pub const NAMES: [&'static str; 8] = [
        "interlace_greedy",
        "interpolated_greedy",
        "fast_interlace_greedy",
        "fast_interpolated_greedy",
        "pig",
        "pitg",
        "random_greedy",
        "fast_random_greedy",
    ];

    /// Builds an algorithm from its name, taking `eps` and `ell` where the
    /// algorithm has such a parameter.
    pub fn from_name(name: &str, eps: f64, ell: usize) -> Result<Self> {
        Ok(match name {
            "interlace_greedy" => Algorithm::InterlaceGreedy,
            "interpolated_greedy" => Algorithm::InterpolatedGreedy { ell },
            "fast_interlace_greedy" => Algorithm::FastInterlaceGreedy { eps },
            "fast_interpolated_greedy" => Algorithm::FastInterpolatedGreedy { eps },
            "pig" => Algorithm::Pig { eps },
            "pitg" => Algorithm::Pitg { ell, eps },
            "random_greedy" => Algorithm::RandomGreedy,
            "fast_random_greedy" => Algorithm::FastRandomGreedy { eps },
            other => return domain(format!("unknown algorithm '{other}'")),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::InterlaceGreedy => "interlace_greedy",
            Algorithm::InterpolatedGreedy { .. } => "interpolated_greedy",
            Algorithm::FastInterlaceGreedy { .. } => "fast_interlace_greedy",
            Algorithm::FastInterpolatedGreedy { .. } => "fast_interpolated_greedy",
            Algorithm::Pig { .. } => "pig",
            Algorithm::Pitg { .. } => "pitg",
            Algorithm::RandomGreedy => "random_greedy",
            Algorithm::FastRandomGreedy { .. } => "fast_random_greedy",
        }
    }

    pub fn is_randomized(&self) -> bool {
        !matches!(self, Algorithm::InterlaceGreedy | Algorithm::FastInterlaceGreedy { .. })
    }

    /// Proven approximation ratio: worst case for the deterministic
    /// algorithms, in expectation or with high probability for the others.
    pub fn ratio_bound(&self) -> f64 {
        let inv_e = 1.0 / std::f64::consts::E;
        match *self {
            Algorithm::InterlaceGreedy => 0.25,
            Algorithm::InterpolatedGreedy { .. } | Algorithm::RandomGreedy => inv_e,
            Algorithm::FastInterlaceGreedy { eps } | Algorithm::Pig { eps } => 0.25 - eps,
            Algorithm::FastInterpolatedGreedy { eps }
            | Algorithm::Pitg { eps, .. }
            | Algorithm::FastRandomGreedy { eps } => (inv_e - eps).max(0.0),
        }
    }

    /// Runs on `oracle` with budget `k`. Deterministic algorithms ignore the
    /// seed and report 0.
    pub fn run<T: Scalar>(&self, oracle: &ValueOracle<T>, k: usize, seed: u64) -> Result<RunRecord<T>> {
        match *self {
            Algorithm::InterlaceGreedy => crate::greedy::interlace_greedy(oracle, k),
            Algorithm::InterpolatedGreedy { ell } => crate::greedy::interpolated_greedy(oracle, k, ell, seed),
            Algorithm::FastInterlaceGreedy { eps } => crate::threshold::fast_interlace_greedy(oracle, k, eps),
            Algorithm::FastInterpolatedGreedy { eps } => {
                crate::threshold::fast_interpolated_greedy(oracle, k, eps, seed)
            }
            Algorithm::Pig { eps } => crate::parallel::pig(oracle, k, eps, seed),
            Algorithm::Pitg { ell, eps } => {
                crate::parallel::parallel_interpolated_greedy(oracle, k, ell, eps, seed)
            }
            Algorithm::RandomGreedy => crate::baselines::random_greedy(oracle, k, seed),
            Algorithm::FastRandomGreedy { eps } => crate::baselines::fast_random_greedy(oracle, k, eps, seed),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{maxcut_oracle, Graph};

    #[test]
    fn names_round_trip() {
        for name in Algorithm::NAMES {
            assert_eq!(Algorithm::from_name(name, 0.1, 2).unwrap().name(), name);
        }
        assert!(Algorithm::from_name("atg", 0.1, 2).is_err());
    }

    #[test]
    fn every_algorithm_solves_the_triangle() {
        let f = maxcut_oracle::<f64>(Graph::complete(3));
        for name in Algorithm::NAMES {
            let alg = Algorithm::from_name(name, 0.1, 1).unwrap_or(Algorithm::InterlaceGreedy);
            let alg = match alg {
                Algorithm::Pitg { .. } | Algorithm::FastInterpolatedGreedy { .. } => continue,
                a => a,
            };
            let r = alg.run(&f, 1, 4).unwrap();
            assert_eq!(r.value, 2.0, "{name}");
            if !alg.is_randomized() {
                assert_eq!(r.seed, 0);
            }
        }
    }
}
