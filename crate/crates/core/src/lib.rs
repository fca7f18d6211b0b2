//! Non-monotone submodular maximization under a cardinality constraint.
//!
//! The crate provides
//!
//! * a [`ValueOracle`] through which every algorithm reads the objective,
//!   with a [`QueryLedger`] counting evaluations and adaptive rounds;
//! * interlaced and interpolated greedy algorithms ([`greedy`]) and their
//!   descending-threshold variants ([`threshold`]);
//! * low-adaptivity versions built on threshold sampling ([`parallel`]);
//! * the random greedy baselines ([`baselines`]);
//! * maximum cut and revenue maximization objectives with graph generation
//!   and edge-list loading ([`objectives`]);
//! * exhaustive search and audits for small instances ([`exact`], [`verify`]).
//!
//! Everything is generic over the [`Scalar`] type. `f64` aliases are exported
//! at the crate root for the common case.

pub mod algorithm;
pub mod baselines;
pub mod error;
pub mod exact;
pub mod greedy;
pub mod objectives;
pub mod oracle;
pub mod parallel;
pub mod record;
pub mod scalar;
pub mod threshold;
pub mod verify;

mod util;

pub use algorithm::Algorithm;
pub use baselines::{fast_random_greedy, random_greedy, sample_probability};
pub use error::{Error, Result};
pub use exact::{brute_force_opt, check_submodular, SubmodularityReport};
pub use greedy::{interlace_greedy, interpolated_greedy};
pub use objectives::{gen_er, gen_revmax_params, load_edge_list, maxcut_oracle, revmax_oracle, Graph};
pub use oracle::{ElementId, LedgerSnapshot, Objective, QueryLedger, SetView, SolutionSet, ValueOracle};
pub use parallel::{parallel_interlace_greedy, parallel_interpolated_greedy, pig, PrefixMark};
pub use record::{RunRecord, RunRow, Trace, TraceEvent, CSV_HEADER};
pub use scalar::Scalar;
pub use threshold::{fast_interlace_greedy, fast_interpolated_greedy};

pub type OracleF64 = ValueOracle<f64>;
pub type OracleF32 = ValueOracle<f32>;
pub type GraphF64 = Graph<f64>;
pub type GraphF32 = Graph<f32>;
pub type RecordF64 = RunRecord<f64>;
pub type RecordF32 = RunRecord<f32>;
