//! TOML experiment description.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use submod::Algorithm;

use crate::error::BenchError;

/// Budget grid used when `k_values` is omitted, clipped to the ground set.
pub const DEFAULT_K_GRID: [usize; 5] = [25, 50, 100, 200, 400];

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DatasetConfig {
    Er { n: usize, p: f64, seed: u64 },
    EdgeList { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectiveConfig {
    Maxcut,
    Revmax { seed: u64 },
}

impl ObjectiveConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ObjectiveConfig::Maxcut => "maxcut",
            ObjectiveConfig::Revmax { .. } => "revmax",
        }
    }
}

/// One algorithm of the sweep; unset parameters fall back to the
/// experiment-wide `epsilon` and `ell`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmEntry {
    pub name: String,
    pub epsilon: Option<f64>,
    pub ell: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset: DatasetConfig,
    pub objective: ObjectiveConfig,
    pub algorithms: Vec<AlgorithmEntry>,
    #[serde(default)]
    pub k_values: Option<Vec<usize>>,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_ell")]
    pub ell: usize,
    #[serde(default)]
    pub base_seed: u64,
    pub output: PathBuf,
    /// Algorithm whose mean value normalizes the summary.
    #[serde(default = "default_reference")]
    pub reference: String,
    /// Write measured wall time; switch off for byte-reproducible output.
    #[serde(default = "default_true")]
    pub record_timing: bool,
    /// Also write every returned solution to `<stem>.solutions.csv`.
    #[serde(default)]
    pub record_solutions: bool,
}

fn default_repetitions() -> usize {
    5
}

fn default_epsilon() -> f64 {
    0.1
}

fn default_ell() -> usize {
    5
}

fn default_reference() -> String {
    "fast_random_greedy".to_owned()
}

fn default_true() -> bool {
    true
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, BenchError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; relative dataset and output paths are resolved
    /// against the file's directory.
    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = fs::read_to_string(path)
            .map_err(|e| BenchError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        let dir = path.parent().unwrap_or(Path::new(""));
        if cfg.output.is_relative() {
            cfg.output = dir.join(&cfg.output);
        }
        if let DatasetConfig::EdgeList { path } = &mut cfg.dataset {
            if path.is_relative() {
                *path = dir.join(&*path);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: String| Err(BenchError::Config(m));
        if self.repetitions == 0 {
            return bad("repetitions must be at least 1".into());
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon = {} must lie in (0, 1)", self.epsilon));
        }
        if self.algorithms.is_empty() {
            return bad("at least one algorithm is required".into());
        }
        if let Some(ks) = &self.k_values {
            if ks.is_empty() || ks.contains(&0) {
                return bad("k_values must be non-empty and positive".into());
            }
            if ks.windows(2).any(|w| w[0] >= w[1]) {
                return bad("k_values must be strictly ascending".into());
            }
        }
        if let DatasetConfig::Er { n, p, .. } = self.dataset {
            if n == 0 || !(0.0..=1.0).contains(&p) {
                return bad(format!("invalid ER parameters n = {n}, p = {p}"));
            }
        }
        for entry in &self.algorithms {
            self.build_algorithm(entry)?;
        }
        Ok(())
    }

    pub fn build_algorithm(&self, entry: &AlgorithmEntry) -> Result<Algorithm, BenchError> {
        let eps = entry.epsilon.unwrap_or(self.epsilon);
        let ell = entry.ell.unwrap_or(self.ell);
        Algorithm::from_name(&entry.name, eps, ell).map_err(|e| BenchError::Config(e.to_string()))
    }

    /// Budgets for a ground set of `n` elements.
    pub fn budgets(&self, n: usize) -> Result<Vec<usize>, BenchError> {
        match &self.k_values {
            Some(ks) => match ks.iter().find(|&&k| k > n) {
                Some(k) => Err(BenchError::Config(format!("k = {k} exceeds the ground set size {n}"))),
                None => Ok(ks.clone()),
            },
            None => {
                let ks: Vec<usize> = DEFAULT_K_GRID.iter().copied().filter(|&k| k <= n).collect();
                Ok(if ks.is_empty() { vec![n] } else { ks })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
        output = "out.csv"
        algorithms = [{ name = "interlace_greedy" }]
        [dataset]
        kind = "er"
        n = 100
        p = 0.05
        seed = 7
        [objective]
        kind = "maxcut"
    "#;

    #[test]
    fn defaults_follow_the_experimental_protocol() {
        let cfg = ExperimentConfig::from_toml(MINIMAL).unwrap();
        assert_eq!(cfg.repetitions, 5);
        assert_eq!(cfg.epsilon, 0.1);
        assert_eq!(cfg.ell, 5);
        assert_eq!(cfg.reference, "fast_random_greedy");
        assert!(cfg.record_timing);
        assert!(!cfg.record_solutions);
        assert_eq!(cfg.budgets(100).unwrap(), vec![25, 50, 100]);
        assert_eq!(cfg.budgets(10).unwrap(), vec![10]);
    }

    #[test]
    fn rejects_invalid_settings() {
        let with = |extra: &str| ExperimentConfig::from_toml(&format!("{extra}\n{MINIMAL}"));
        assert!(with("repetitions = 0").is_err());
        assert!(with("epsilon = 1.5").is_err());
        assert!(with("k_values = [10, 5]").is_err());
        assert!(with("colour = 3").is_err());
        let bad_alg = MINIMAL.replace("interlace_greedy", "atg");
        assert!(ExperimentConfig::from_toml(&bad_alg).is_err());
    }

    #[test]
    fn explicit_budgets_must_fit() {
        let cfg = ExperimentConfig::from_toml(&format!("k_values = [10, 200]\n{MINIMAL}")).unwrap();
        assert!(cfg.budgets(100).is_err());
    }

    #[test]
    fn revmax_and_edge_list_parse() {
        let text = r#"
            output = "o.csv"
            algorithms = [{ name = "pitg", ell = 2, epsilon = 0.2 }]
            [dataset]
            kind = "edge_list"
            path = "g.txt"
            [objective]
            kind = "revmax"
            seed = 3
        "#;
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        assert_eq!(cfg.objective, ObjectiveConfig::Revmax { seed: 3 });
        assert_eq!(
            cfg.build_algorithm(&cfg.algorithms[0]).unwrap(),
            Algorithm::Pitg { ell: 2, eps: 0.2 }
        );
    }
}
