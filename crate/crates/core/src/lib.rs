//! Constraint models, CNF compilation, SAT solving and the problem family registry.

pub mod certify;
pub mod cnf;
pub mod encode;
pub mod error;
pub mod families;
pub mod graph;
pub mod model;
pub mod rng;
pub mod solver;
