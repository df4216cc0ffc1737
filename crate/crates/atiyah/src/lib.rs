//! Problem files, reports and the command-line front end for `atiyah-core`.
//!
//! A problem file is a JSON object whose `kind` is `"amp1"` (a section of a
//! trivial bundle over `R^n`) or `"derived"` (two parametrized submanifolds
//! of `R^d`). See the README for the schema.

pub mod cli;
pub mod commands;
pub mod problem;
pub mod report;

pub use commands::{Bounds, CommandError, Route, Which};
pub use problem::{parse_problem, ProblemError, ProblemFile};
pub use report::{Format, Outcome, Report};
