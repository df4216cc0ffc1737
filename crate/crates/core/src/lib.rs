//! Exact engine for the Atiyah class of `(E[-1], ι_s)` with `E` a trivial
//! bundle over `R^n` and `s` a polynomial section.
//!
//! ```
//! use atiyah_core::atiyah::{decide, Amp1Problem, Verdict};
//! use atiyah_core::graded::Section;
//! use atiyah_core::ring::{int, parse_poly};
//!
//! let s = Section::new(1, vec![parse_poly("x^2", &["x"]).unwrap()]).unwrap();
//! let problem = Amp1Problem::new(s, vec![vec![int(0)]]).unwrap();
//! assert!(matches!(decide(&problem).unwrap(), Verdict::NonVanishing { jet_order: 0, .. }));
//! ```

#![no_std]
extern crate alloc;

pub mod atiyah;
pub mod change;
pub mod clean;
pub mod connection;
pub mod derived;
pub mod graded;
pub mod linalg;
pub mod ring;
