//! Config-driven sweeps producing the run CSV and its summary.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use log::info;
use serde::Serialize;
use submod::record::write_csv;
use submod::{gen_er, gen_revmax_params, load_edge_list, maxcut_oracle, revmax_oracle, GraphF64, OracleF64, RunRow};

use crate::config::{DatasetConfig, ExperimentConfig, ObjectiveConfig};
use crate::error::BenchError;

/// Paths written by one experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    pub runs: PathBuf,
    pub summary: PathBuf,
    /// Present when `record_solutions` is set.
    pub solutions: Option<PathBuf>,
    pub rows: Vec<RunRow>,
    pub summary_rows: Vec<SummaryRow>,
}

/// Per-(algorithm, k) statistics over repetitions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub dataset: String,
    pub objective: String,
    pub algorithm: String,
    pub k: usize,
    pub reps: usize,
    pub mean_value: f64,
    pub std_value: f64,
    /// Mean value divided by the reference algorithm's mean at the same k;
    /// empty when the reference was not run or its mean is zero.
    pub normalized_value: Option<f64>,
    pub mean_queries: f64,
    pub mean_rounds: f64,
    pub mean_wall_ms: f64,
}

/// FNV-1a, stable across platforms and releases unlike `DefaultHasher`.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Seed of one cell: `base ⊕ hash("algorithm|k|rep")`.
pub fn derive_seed(base: u64, algorithm: &str, k: usize, rep: usize) -> u64 {
    base ^ fnv1a(format!("{algorithm}|{k}|{rep}").as_bytes())
}

/// Label used in the `dataset` column.
pub fn dataset_label(dataset: &DatasetConfig) -> String {
    match dataset {
        DatasetConfig::Er { n, p, seed } => format!("er(n={n};p={p};seed={seed})"),
        DatasetConfig::EdgeList { path } => path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string()),
    }
}

pub fn load_graph(dataset: &DatasetConfig) -> Result<GraphF64, BenchError> {
    match dataset {
        DatasetConfig::Er { n, p, seed } => Ok(gen_er(*n, *p, *seed)?),
        DatasetConfig::EdgeList { path } => {
            if !path.exists() {
                return Err(BenchError::Config(format!("dataset {} does not exist", path.display())));
            }
            Ok(load_edge_list(path)?)
        }
    }
}

pub fn build_oracle(graph: GraphF64, objective: &ObjectiveConfig) -> Result<OracleF64, BenchError> {
    Ok(match objective {
        ObjectiveConfig::Maxcut => maxcut_oracle(graph),
        ObjectiveConfig::Revmax { seed } => {
            let params = gen_revmax_params(&graph, *seed);
            revmax_oracle(graph, params)?
        }
    })
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// `runs.csv` → `runs.summary.csv`.
pub fn summary_path(output: &Path) -> PathBuf {
    sibling(output, "summary")
}

/// `runs.csv` → `runs.solutions.csv`.
pub fn solutions_path(output: &Path) -> PathBuf {
    sibling(output, "solutions")
}

fn sibling(output: &Path, tag: &str) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    output.with_file_name(format!("{stem}.{tag}.csv"))
}

#[derive(Serialize)]
struct SolutionRow<'a> {
    algorithm: &'a str,
    k: usize,
    rep: usize,
    seed: u64,
    /// Element ids in insertion order, space separated.
    solution: String,
}

/// Runs every (algorithm, k, rep) cell and writes the run CSV plus summary.
///
/// Data rows come first in sweep order, followed by one `mean` row per
/// (algorithm, k). Cells run one after another so the CSV order never
/// depends on scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput, BenchError> {
    cfg.validate()?;
    let graph = load_graph(&cfg.dataset)?;
    let oracle = build_oracle(graph, &cfg.objective)?;
    let n = oracle.ground_size();
    let ks = cfg.budgets(n)?;
    let dataset = dataset_label(&cfg.dataset);
    let objective = cfg.objective.name();

    let mut rows = Vec::new();
    let mut aggregates = Vec::new();
    let mut summary = Vec::new();
    let mut solutions = Vec::new();
    for entry in &cfg.algorithms {
        let alg = cfg.build_algorithm(entry)?;
        let label = alg.to_string();
        for &k in &ks {
            let mut cell = Vec::with_capacity(cfg.repetitions);
            for rep in 0..cfg.repetitions {
                let seed = derive_seed(cfg.base_seed, &label, k, rep);
                let mut record = alg.run(&oracle.with_fresh_ledger(), k, seed)?;
                record.seed = seed;
                if !cfg.record_timing {
                    record.wall_ms = 0.0;
                }
                info!("{label} k={k} rep={rep}: value {} in {} rounds", record.value, record.rounds);
                if cfg.record_solutions {
                    let ids: Vec<String> = record.solution.iter().map(|x| x.0.to_string()).collect();
                    solutions.push((label.clone(), k, rep, seed, ids.join(" ")));
                }
                cell.push(RunRow::from_record(&dataset, objective, &label, k, rep, &record));
            }
            let col = |f: fn(&RunRow) -> f64| cell.iter().map(f).collect::<Vec<_>>();
            let (mean_value, std_value) = mean_std(&col(|r| r.value));
            let (mean_queries, _) = mean_std(&col(|r| r.queries.parse().unwrap_or(0.0)));
            let (mean_rounds, _) = mean_std(&col(|r| r.rounds.parse().unwrap_or(0.0)));
            let (mean_wall_ms, _) = mean_std(&col(|r| r.wall_ms));
            aggregates.push(RunRow {
                dataset: dataset.clone(),
                objective: objective.to_owned(),
                algorithm: label.clone(),
                k,
                rep: "mean".to_owned(),
                seed: String::new(),
                value: mean_value,
                queries: format!("{mean_queries}"),
                rounds: format!("{mean_rounds}"),
                wall_ms: mean_wall_ms,
            });
            summary.push(SummaryRow {
                dataset: dataset.clone(),
                objective: objective.to_owned(),
                algorithm: label.clone(),
                k,
                reps: cfg.repetitions,
                mean_value,
                std_value,
                normalized_value: None,
                mean_queries,
                mean_rounds,
                mean_wall_ms,
            });
            rows.extend(cell);
        }
    }
    normalize(&mut summary, &cfg.reference);
    rows.extend(aggregates);

    let runs = cfg.output.clone();
    let summary_file = summary_path(&runs);
    write_csv(BufWriter::new(create(&runs)?), &rows)?;
    let mut w = csv::Writer::from_writer(BufWriter::new(create(&summary_file)?));
    for row in &summary {
        w.serialize(row)?;
    }
    w.flush()?;
    let solutions_file = if cfg.record_solutions {
        let path = solutions_path(&runs);
        let mut w = csv::Writer::from_writer(BufWriter::new(create(&path)?));
        for (algorithm, k, rep, seed, solution) in solutions {
            w.serialize(SolutionRow {
                algorithm: &algorithm,
                k,
                rep,
                seed,
                solution,
            })?;
        }
        w.flush()?;
        Some(path)
    } else {
        None
    };
    Ok(ExperimentOutput {
        runs,
        summary: summary_file,
        solutions: solutions_file,
        rows,
        summary_rows: summary,
    })
}

fn create(path: &Path) -> Result<File, BenchError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    Ok(File::create(path)?)
}

fn normalize(summary: &mut [SummaryRow], reference: &str) {
    let reference_means: Vec<(usize, f64)> = summary
        .iter()
        .filter(|r| r.algorithm == reference)
        .map(|r| (r.k, r.mean_value))
        .collect();
    for row in summary.iter_mut() {
        row.normalized_value = reference_means
            .iter()
            .find(|(k, m)| *k == row.k && *m != 0.0)
            .map(|(_, m)| row.mean_value / m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::AlgorithmEntry;

    fn config(dir: &Path, names: &[&str], ks: Vec<usize>, reps: usize) -> ExperimentConfig {
        ExperimentConfig {
            dataset: DatasetConfig::Er { n: 60, p: 0.1, seed: 7 },
            objective: ObjectiveConfig::Maxcut,
            algorithms: names
                .iter()
                .map(|n| AlgorithmEntry {
                    name: (*n).to_owned(),
                    epsilon: None,
                    ell: None,
                })
                .collect(),
            k_values: Some(ks),
            repetitions: reps,
            epsilon: 0.1,
            ell: 2,
            base_seed: 11,
            output: dir.join("runs.csv"),
            reference: "fast_random_greedy".to_owned(),
            record_timing: false,
            record_solutions: true,
        }
    }

    #[test]
    fn seeds_differ_per_cell() {
        let a = derive_seed(0, "pig", 10, 0);
        assert_ne!(a, derive_seed(0, "pig", 10, 1));
        assert_ne!(a, derive_seed(0, "pig", 11, 0));
        assert_ne!(a, derive_seed(0, "pitg", 10, 0));
        assert_eq!(derive_seed(5, "pig", 10, 0), a ^ 5);
        assert_eq!(fnv1a(b""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(fnv1a(b"a"), 0xaf63_dc4c_8601_ec8c);
    }

    #[test]
    fn one_data_row_and_one_aggregate_per_cell() {
        let dir = tempfile::tempdir().unwrap();
        let out = run_experiment(&config(dir.path(), &["interlace_greedy"], vec![10], 1)).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert_eq!(out.rows[1].rep, "mean");
        assert_eq!(out.rows[1].value, out.rows[0].value);
        assert_eq!(out.summary_rows[0].std_value, 0.0);
    }

    #[test]
    fn std_uses_every_repetition() {
        let dir = tempfile::tempdir().unwrap();
        let out = run_experiment(&config(dir.path(), &["random_greedy"], vec![5], 5)).unwrap();
        let values: Vec<f64> = out.rows[..5].iter().map(|r| r.value).collect();
        let (mean, std) = mean_std(&values);
        assert_eq!(out.summary_rows[0].mean_value, mean);
        assert_eq!(out.summary_rows[0].std_value, std);
        assert_eq!(out.summary_rows[0].reps, 5);
    }

    #[test]
    fn normalizes_against_the_reference() {
        let dir = tempfile::tempdir().unwrap();
        let out = run_experiment(&config(dir.path(), &["fast_random_greedy", "pig"], vec![5, 10], 2)).unwrap();
        for row in &out.summary_rows {
            let norm = row.normalized_value.unwrap();
            if row.algorithm == "fast_random_greedy" {
                assert_eq!(norm, 1.0);
            }
        }
        assert!(out.summary.exists());
        let text = std::fs::read_to_string(out.solutions.unwrap()).unwrap();
        assert_eq!(text.lines().count(), 1 + 2 * 2 * 2);
    }

    #[test]
    fn budget_above_ground_set_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let err = run_experiment(&config(dir.path(), &["pig"], vec![61], 1)).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn summary_path_keeps_directory() {
        assert_eq!(summary_path(Path::new("a/b/runs.csv")), PathBuf::from("a/b/runs.summary.csv"));
    }
}
