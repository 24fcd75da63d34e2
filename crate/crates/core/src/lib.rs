//! Convexity of combinatorial neural codes with few maximal codewords.
//!
//! The pipeline parses a code, classifies the nerve of its maximal
//! codewords, scans for local obstructions and sprockets, and issues a
//! verdict with certificates that can be replayed. For the families with an
//! explicit construction, [`realize`] builds a planar or linear realization
//! in exact rational coordinates and checks it by recomputing its code.

pub mod atlas;
pub mod cli;
pub mod code;
pub mod decider;
pub mod error;
pub mod realize;
pub mod report;
pub mod topology;
pub mod wheels;

pub use code::{parse_code, Codeword, NeuralCode, NeuronId};
pub use error::{Error, Result};
