//! Command-line front end: solving, enumeration, bound tables,
//! constructions and solution files.

pub mod commands;
pub mod html;
pub mod solution;

pub use commands::{census, run, Census, Cli};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const BUDGET_EXCEEDED: i32 = 2;
    pub const MISMATCH: i32 = 3;
    pub const CONSTRUCTION_FAILED: i32 = 4;
}
