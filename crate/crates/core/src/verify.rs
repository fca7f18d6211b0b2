//! Harnesses that compare algorithms with exhaustive optima on generated
//! small instances, and measure query and round scaling on larger ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithm::Algorithm;
use crate::error::{Error, Result};
use crate::exact::{brute_force_opt, subset};
use crate::objectives::{gen_er, gen_revmax_params, maxcut_oracle, revmax_oracle, Modular};
use crate::oracle::{ElementId, SolutionSet, ValueOracle};
use crate::record::RunRow;

/// Largest ground set [`ratio_suite`] accepts.
pub const SUITE_LIMIT: usize = 12;

/// Tolerance of the ratio comparisons.
pub const RATIO_TOLERANCE: f64 = 1e-9;

/// A named oracle.
#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub objective: &'static str,
    pub oracle: ValueOracle<f64>,
}

/// Kind of generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// Alternating maximum cut on ER graphs (`n ∈ 6..=12`, `p ∈ {0.3, 0.5}`)
    /// and revenue maximization (`n ∈ 6..=10`).
    Mixed,
    MaxCut,
    RevMax,
    /// `f(S) = |S|` with `n ∈ 6..=12`.
    Cardinality,
}

/// Recipe for a family of small instances.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub count: usize,
    pub ks: Vec<usize>,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, count: usize, ks: &[usize], seed: u64) -> Self {
        FamilySpec {
            kind,
            count,
            ks: ks.to_vec(),
            seed,
        }
    }

    /// Generates the instances, deterministically in `seed`.
    pub fn build(&self) -> Result<Vec<Instance>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.count);
        for i in 0..self.count {
            let kind = match self.kind {
                FamilyKind::Mixed if i % 2 == 0 => FamilyKind::MaxCut,
                FamilyKind::Mixed => FamilyKind::RevMax,
                k => k,
            };
            let s: u64 = rng.gen();
            let inst = match kind {
                FamilyKind::MaxCut => {
                    let n = rng.gen_range(6..=12);
                    let p = if rng.gen_bool(0.5) { 0.3 } else { 0.5 };
                    Instance {
                        label: format!("er_n{n}_p{p}_s{s}"),
                        objective: "maxcut",
                        oracle: maxcut_oracle(gen_er(n, p, s)?),
                    }
                }
                FamilyKind::RevMax => {
                    let n = rng.gen_range(6..=10);
                    let g = gen_er::<f64>(n, 0.5, s)?;
                    let params = gen_revmax_params(&g, s ^ 0x5eed);
                    Instance {
                        label: format!("revmax_n{n}_s{s}"),
                        objective: "revmax",
                        oracle: revmax_oracle(g, params)?,
                    }
                }
                FamilyKind::Cardinality => {
                    let n = rng.gen_range(6..=12);
                    Instance {
                        label: format!("card_n{n}"),
                        objective: "modular",
                        oracle: ValueOracle::new(Modular::cardinality(n)),
                    }
                }
                FamilyKind::Mixed => unreachable!(),
            };
            out.push(inst);
        }
        Ok(out)
    }
}

/// Exhaustive optimum by enumerating masks from the full set downwards, used
/// to cross-check [`brute_force_opt`].
pub fn brute_force_reverse(oracle: &ValueOracle<f64>, k: usize) -> Result<(SolutionSet, f64)> {
    let elems = oracle.elements();
    if elems.len() > crate::exact::ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            size: elems.len(),
            limit: crate::exact::ENUMERATION_LIMIT,
        });
    }
    let mut best: Option<(Vec<ElementId>, f64)> = None;
    for mask in (0u32..(1u32 << elems.len())).rev() {
        if mask.count_ones() as usize > k {
            continue;
        }
        let ids = subset(&elems, mask);
        let v = oracle.evaluate(&SolutionSet::from_ids(ids.iter().copied()))?;
        let better = match &best {
            None => true,
            Some((b_ids, b)) => v > *b || (v == *b && ids < *b_ids),
        };
        if better {
            best = Some((ids, v));
        }
    }
    let (ids, v) = best.expect("the empty set is always enumerated");
    Ok((SolutionSet::from_ids(ids), v))
}

/// Outcome of one (instance, k) cell of [`ratio_suite`].
#[derive(Clone, Debug, PartialEq)]
pub struct RatioEntry {
    pub instance: String,
    pub k: usize,
    pub opt: f64,
    pub values: Vec<f64>,
    /// `value / OPT` per run, 1 when OPT is 0.
    pub ratios: Vec<f64>,
    /// Runs with `value < bound · OPT - tolerance`.
    pub violations: usize,
    pub mean: f64,
    pub std_err: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioReport {
    pub algorithm: String,
    pub bound: f64,
    pub entries: Vec<RatioEntry>,
    pub rows: Vec<RunRow>,
}

impl RatioReport {
    pub fn runs(&self) -> usize {
        self.entries.iter().map(|e| e.values.len()).sum()
    }

    pub fn violations(&self) -> usize {
        self.entries.iter().map(|e| e.violations).sum()
    }

    pub fn min_ratio(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|e| e.ratios.iter().copied())
            .fold(f64::INFINITY, f64::min)
    }

    /// Fraction of runs meeting the bound.
    pub fn success_rate(&self) -> f64 {
        let runs = self.runs();
        if runs == 0 {
            return 1.0;
        }
        1.0 - self.violations() as f64 / runs as f64
    }

    /// Entries whose mean value falls below `target · OPT` by more than
    /// three standard errors.
    pub fn mean_shortfalls(&self, target: f64) -> Vec<&RatioEntry> {
        self.entries
            .iter()
            .filter(|e| e.mean < target * e.opt - 3.0 * e.std_err - RATIO_TOLERANCE)
            .collect()
    }
}

fn mean_and_std_err(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Runs `algorithm` on every instance of `family` and every admissible `k`
/// (`runs` seeds for randomized algorithms, one run otherwise) and compares
/// against the exhaustive optimum, which is itself checked against a second
/// enumeration order.
pub fn ratio_suite(family: &FamilySpec, algorithm: &Algorithm, runs: usize, seed: u64) -> Result<RatioReport> {
    let instances = family.build()?;
    if let Some(big) = instances.iter().find(|i| i.oracle.ground_size() > SUITE_LIMIT) {
        return Err(Error::TooLarge {
            size: big.oracle.ground_size(),
            limit: SUITE_LIMIT,
        });
    }
    let bound = algorithm.ratio_bound();
    let runs = if algorithm.is_randomized() { runs.max(1) } else { 1 };
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for inst in &instances {
        for &k in &family.ks {
            if k == 0 || k > inst.oracle.ground_size() {
                continue;
            }
            let (opt_set, opt) = brute_force_opt(&inst.oracle, k)?;
            let (rev_set, rev) = brute_force_reverse(&inst.oracle, k)?;
            if opt != rev || opt_set != rev_set {
                return Err(Error::Verification(format!(
                    "{}: forward optimum {opt} differs from reverse optimum {rev}",
                    inst.label
                )));
            }
            let mut values = Vec::with_capacity(runs);
            let mut ratios = Vec::with_capacity(runs);
            let mut violations = 0;
            for r in 0..runs {
                let run_seed = seed ^ (r as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
                let record = algorithm.run(&inst.oracle.with_fresh_ledger(), k, run_seed)?;
                let v = record.value;
                if v < bound * opt - RATIO_TOLERANCE {
                    violations += 1;
                }
                values.push(v);
                ratios.push(if opt > 0.0 { v / opt } else { 1.0 });
                rows.push(RunRow::from_record(&inst.label, inst.objective, algorithm.name(), k, r, &record));
            }
            let (mean, std_err) = mean_and_std_err(&values);
            entries.push(RatioEntry {
                instance: inst.label.clone(),
                k,
                opt,
                values,
                ratios,
                violations,
                mean,
                std_err,
            });
        }
    }
    Ok(RatioReport {
        algorithm: algorithm.name().to_owned(),
        bound,
        entries,
        rows,
    })
}

/// Queries and rounds of one run of [`adaptivity_probe`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbePoint {
    pub n: usize,
    pub k: usize,
    pub queries: u64,
    pub rounds: u64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub algorithm: String,
    pub points: Vec<ProbePoint>,
    /// Query-count ratios between consecutive sizes.
    pub query_growth: Vec<f64>,
    /// Round-count ratios between consecutive sizes.
    pub round_growth: Vec<f64>,
}

/// Runs `algorithm` on maximum cut over `G(n, 5/n)` for each `n` in `sizes`
/// with budget `k_rule(n)`.
pub fn adaptivity_probe(
    algorithm: &Algorithm,
    sizes: &[usize],
    k_rule: impl Fn(usize) -> usize,
    seed: u64,
) -> Result<ProbeReport> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("sizes must be strictly ascending".into()));
    }
    let mut points = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let f = maxcut_oracle::<f64>(gen_er(n, (5.0 / n as f64).min(1.0), seed ^ n as u64)?);
        let k = k_rule(n);
        let r = algorithm.run(&f, k, seed)?;
        points.push(ProbePoint {
            n,
            k,
            queries: r.queries,
            rounds: r.rounds,
            value: r.value,
        });
    }
    let growth = |get: fn(&ProbePoint) -> u64| -> Vec<f64> {
        points
            .windows(2)
            .map(|w| get(&w[1]) as f64 / get(&w[0]).max(1) as f64)
            .collect()
    };
    Ok(ProbeReport {
        algorithm: algorithm.name().to_owned(),
        query_growth: growth(|p| p.queries),
        round_growth: growth(|p| p.rounds),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_deterministic_and_small() {
        let family = FamilySpec::new(FamilyKind::Mixed, 10, &[2, 3], 1);
        let a = family.build().unwrap();
        let b = family.build().unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.label, y.label);
            assert!(x.oracle.ground_size() <= SUITE_LIMIT);
        }
        assert_eq!(a.iter().filter(|i| i.objective == "revmax").count(), 5);
    }

    #[test]
    fn reverse_enumeration_agrees() {
        let family = FamilySpec::new(FamilyKind::Mixed, 6, &[], 4);
        for inst in family.build().unwrap() {
            for k in 1..=3 {
                let a = brute_force_opt(&inst.oracle, k).unwrap();
                let b = brute_force_reverse(&inst.oracle, k).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn cardinality_family_is_solved_exactly() {
        // Two disjoint solutions both reach size k only when 2k ≤ n.
        let family = FamilySpec::new(FamilyKind::Cardinality, 4, &[2, 3], 0);
        for alg in [
            Algorithm::InterlaceGreedy,
            Algorithm::FastInterlaceGreedy { eps: 0.1 },
            Algorithm::Pig { eps: 0.1 },
            Algorithm::RandomGreedy,
        ] {
            let report = ratio_suite(&family, &alg, 3, 0).unwrap();
            assert_eq!(report.min_ratio(), 1.0, "{alg}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let family = FamilySpec::new(FamilyKind::Mixed, 4, &[2, 3], 8);
        let alg = Algorithm::Pig { eps: 0.1 };
        let a = ratio_suite(&family, &alg, 3, 5).unwrap();
        let b = ratio_suite(&family, &alg, 3, 5).unwrap();
        assert_eq!(a.entries, b.entries);
    }

    #[test]
    fn interlace_ratio_on_mixed_family() {
        let family = FamilySpec::new(FamilyKind::Mixed, 20, &[2, 3, 4], 3);
        let report = ratio_suite(&family, &Algorithm::InterlaceGreedy, 1, 0).unwrap();
        assert_eq!(report.violations(), 0);
        assert!(report.min_ratio() >= 0.25);
    }

    #[test]
    fn probe_requires_ascending_sizes() {
        assert!(adaptivity_probe(&Algorithm::InterlaceGreedy, &[100, 50], |_| 5, 0).is_err());
        let r = adaptivity_probe(&Algorithm::InterlaceGreedy, &[60, 120], |_| 5, 0).unwrap();
        assert_eq!(r.points[0].rounds, 10);
        assert_eq!(r.points[1].rounds, 10);
        assert_eq!(r.round_growth, vec![1.0]);
    }
}
