//! Result envelopes, optional execution traces and the CSV row schema.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::oracle::{ElementId, LedgerSnapshot, SolutionSet, ValueOracle};
use crate::parallel::PrefixMark;
use crate::scalar::Scalar;

/// Outcome of one algorithm execution.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord<T> {
    /// Solution without dummy elements, in insertion order.
    pub solution: Vec<ElementId>,
    pub value: T,
    pub queries: u64,
    pub rounds: u64,
    /// Seed the run was started with; 0 for deterministic algorithms.
    pub seed: u64,
    pub wall_ms: f64,
}

impl<T: Scalar> RunRecord<T> {
    /// Equality of everything except the wall-clock time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        self.solution == other.solution
            && self.value == other.value
            && self.queries == other.queries
            && self.rounds == other.rounds
            && self.seed == other.seed
    }
}

/// Measures ledger deltas and wall time for one run.
pub(crate) struct RunMeter {
    start: LedgerSnapshot,
    clock: Instant,
}

impl RunMeter {
    pub(crate) fn start<T: Scalar>(oracle: &ValueOracle<T>) -> Self {
        RunMeter {
            start: oracle.ledger().snapshot(),
            clock: Instant::now(),
        }
    }

    pub(crate) fn finish<T: Scalar>(
        self,
        oracle: &ValueOracle<T>,
        solution: &SolutionSet,
        value: T,
        seed: u64,
    ) -> RunRecord<T> {
        let used = oracle.ledger().snapshot().since(self.start);
        RunRecord {
            solution: solution
                .iter()
                .filter(|&id| !oracle.is_dummy(id) && id.0 < oracle.real_len())
                .collect(),
            value,
            queries: used.queries,
            rounds: used.rounds,
            seed,
            wall_ms: self.clock.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// One step of an algorithm, recorded only when tracing is enabled.
#[derive(Clone, Debug, PartialEq)]
pub enum TraceEvent<T> {
    /// `element` joined solution `solution`.
    Added {
        phase: usize,
        solution: usize,
        element: ElementId,
        /// Marginal gain measured at acceptance, when one was measured.
        gain: Option<T>,
        /// Threshold in force at acceptance, for threshold-based algorithms.
        threshold: Option<T>,
        mark: Option<PrefixMark>,
        /// Set the gain was measured against.
        context: Vec<ElementId>,
    },
    ThresholdLowered {
        phase: usize,
        solution: usize,
        threshold: T,
    },
    /// State at the end of a loop iteration.
    IterationEnd {
        phase: usize,
        solutions: Vec<Vec<ElementId>>,
        filtered: Vec<Vec<ElementId>>,
        active: Vec<usize>,
    },
    /// Random choice of the solution carried into the next phase.
    Chosen { phase: usize, solution: usize },
}

/// Execution trace. A disabled trace records nothing and costs nothing.
#[derive(Clone, Debug, Default)]
pub struct Trace<T> {
    enabled: bool,
    pub events: Vec<TraceEvent<T>>,
}

impl<T: Scalar> Trace<T> {
    pub fn enabled() -> Self {
        Trace {
            enabled: true,
            events: Vec::new(),
        }
    }

    pub fn disabled() -> Self {
        Trace {
            enabled: false,
            events: Vec::new(),
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    /// Records the event built by `f` if tracing is on.
    pub fn push(&mut self, f: impl FnOnce() -> TraceEvent<T>) {
        if self.enabled {
            self.events.push(f());
        }
    }
}

/// Column order of every CSV this crate and the runner write.
pub const CSV_HEADER: [&str; 10] = [
    "dataset",
    "objective",
    "algorithm",
    "k",
    "rep",
    "seed",
    "value",
    "queries",
    "rounds",
    "wall_ms",
];

/// One CSV line. Aggregate lines reuse the schema with textual `rep`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRow {
    pub dataset: String,
    pub objective: String,
    pub algorithm: String,
    pub k: usize,
    pub rep: String,
    pub seed: String,
    pub value: f64,
    pub queries: String,
    pub rounds: String,
    pub wall_ms: f64,
}

impl RunRow {
    pub fn from_record<T: Scalar>(
        dataset: &str,
        objective: &str,
        algorithm: &str,
        k: usize,
        rep: usize,
        record: &RunRecord<T>,
    ) -> Self {
        RunRow {
            dataset: dataset.to_owned(),
            objective: objective.to_owned(),
            algorithm: algorithm.to_owned(),
            k,
            rep: rep.to_string(),
            seed: record.seed.to_string(),
            value: record.value.as_f64(),
            queries: record.queries.to_string(),
            rounds: record.rounds.to_string(),
            wall_ms: record.wall_ms,
        }
    }
}

/// Writes the header followed by `rows`.
pub fn write_csv<W: Write>(out: W, rows: &[RunRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
