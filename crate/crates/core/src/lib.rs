//! Exact solver, bounds and constructions for domination of the rectangular
//! queens graph.

pub mod board;
pub mod bounds;
pub mod constructions;
pub mod reference;
pub mod solver;
pub mod symmetry;

pub use board::{BoardDims, LineId, LineKind, QueenSet, Square};
pub use solver::{SearchBudget, Solver, SolverConfig, Status};
