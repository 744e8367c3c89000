//! Tree edit distance toolkit: parsing, cost models, relevant-subforest
//! enumeration, four dynamic-programming engines with step counters, an
//! exhaustive oracle, and a per-subproblem strategy optimizer.

pub mod corpus;
pub mod cost;
pub mod engines;
pub mod enumerate;
pub mod instrument;
pub mod oracle;
pub mod strategy;
pub mod subforest;
pub mod tree;
