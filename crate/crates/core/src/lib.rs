pub mod cli;
pub mod cycle_packing;
pub mod error;
pub mod hardness;
pub mod ilp;
pub mod token_graph;
pub mod tokens;
pub mod tree_search;
pub mod verify;

pub use error::{Error, Result};
