//! Graph data and the experimental objectives built on it.

mod edge_list;
mod generate;
mod graph;
mod maxcut;
mod modular;
mod revmax;

pub use edge_list::{load_edge_list, read_edge_list, write_edge_list, LoadedGraph};
pub use generate::{gen_er, gen_revmax_params};
pub use graph::Graph;
pub use maxcut::{maxcut_oracle, MaxCut};
pub use modular::Modular;
pub use revmax::{revmax_oracle, RevMax, RevMaxParams};
