//! CNF encodings for the constraint vocabulary.

pub mod card;
mod compile;
pub mod totalizer;

pub use compile::{
    compile_to_cnf, compile_with, decode_model, decode_true_atoms, encode_constraint,
    CompileOptions, VarMap,
};
