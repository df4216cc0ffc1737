//! The Atiyah cocycle of `(E[-1], ι_s)`, the operators `d1`, `d2`, `d3`
//! whose combined image is the coboundary module, and a decision procedure
//! for the vanishing of the class.

mod cocycle;
mod operators;
mod search;
mod tensor;

use alloc::vec::Vec;

use thiserror::Error;

use crate::connection::{ConnectionTriple, Violation};
use crate::graded::Section;
use crate::ring::Rational;

pub use cocycle::{cocycle_closed_form, cocycle_definitional, Cocycle};
pub use operators::{
    build_d1, build_d2, build_d3, pair_index, pairs, row_index, row_labels, ColLabel, Operator,
    OperatorMatrix, Operators, RowLabel, Symbol,
};
pub use search::{
    apply_certificate, certificate_search, jet_obstruction, replay_certificate, Certificate,
    ColumnRef, JetOutcome,
};
pub use tensor::{lie_derivative_tensor, DegreeZeroTensor};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AtiyahError {
    #[error("connection violates {} constraint(s)", .0.len())]
    InvalidConnection(Vec<Violation>),
    #[error("connection and section have different dimensions")]
    Dimension,
    #[error("operation needs the trivial connection")]
    NontrivialConnection,
    #[error("At(X{}, X{}) is not a contraction by a section", .i + 1, .j + 1)]
    NotAContraction { i: usize, j: usize },
    #[error("At(i{}, -) does not vanish", .a + 1)]
    OddPart { a: usize },
    #[error("zero point {index} has {found} coordinates, expected {expected}")]
    PointLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("section does not vanish at zero point {index}")]
    NotAZero { index: usize },
}

/// A section of a trivial bundle over `R^n` together with the data `decide`
/// needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amp1Problem {
    pub section: Section,
    pub connection: ConnectionTriple,
    pub zero_points: Vec<Vec<Rational>>,
    pub degree_bound: u32,
    pub jet_order: u32,
}

pub const DEFAULT_JET_ORDER: u32 = 4;

/// `2 * deg(s) + 2`, with the zero section counted as degree 0.
pub fn default_degree_bound(s: &Section) -> u32 {
    2 * s.max_degree().unwrap_or(0) + 2
}

impl Amp1Problem {
    /// Trivial connection and default bounds.
    pub fn new(section: Section, zero_points: Vec<Vec<Rational>>) -> Result<Self, AtiyahError> {
        Self::with_options(section, None, zero_points, None, None)
    }

    pub fn with_options(
        section: Section,
        connection: Option<ConnectionTriple>,
        zero_points: Vec<Vec<Rational>>,
        degree_bound: Option<u32>,
        jet_order: Option<u32>,
    ) -> Result<Self, AtiyahError> {
        let (n, m) = (section.n(), section.m());
        let connection = connection.unwrap_or_else(|| ConnectionTriple::trivial(n, m));
        if connection.n() != n || connection.m() != m {
            return Err(AtiyahError::Dimension);
        }
        for (index, p) in zero_points.iter().enumerate() {
            if p.len() != n {
                return Err(AtiyahError::PointLength {
                    index,
                    expected: n,
                    found: p.len(),
                });
            }
            if !section.vanishes_at(p).expect("length checked") {
                return Err(AtiyahError::NotAZero { index });
            }
        }
        Ok(Amp1Problem {
            degree_bound: degree_bound.unwrap_or_else(|| default_degree_bound(&section)),
            jet_order: jet_order.unwrap_or(DEFAULT_JET_ORDER),
            section,
            connection,
            zero_points,
        })
    }

    pub fn n(&self) -> usize {
        self.section.n()
    }

    pub fn m(&self) -> usize {
        self.section.m()
    }

    pub fn operators(&self) -> Operators {
        Operators::build(&self.section)
    }

    pub fn cocycle(&self) -> Result<Cocycle, AtiyahError> {
        cocycle_closed_form(&self.section, &self.connection)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Vanishes {
        certificate: Certificate,
    },
    NonVanishing {
        witness_point: Vec<Rational>,
        jet_order: u32,
    },
    Unknown {
        degree_bound_tried: u32,
        jet_order_tried: u32,
    },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Vanishes { .. } => "Vanishes",
            Verdict::NonVanishing { .. } => "NonVanishing",
            Verdict::Unknown { .. } => "Unknown",
        }
    }
}

/// Jet tests at each zero point (file order, ascending order), then
/// certificate searches at ascending degree; first success wins.
pub fn decide(problem: &Amp1Problem) -> Result<Verdict, AtiyahError> {
    let cocycle = problem.cocycle()?;
    let ops = problem.operators();
    Ok(decide_with(problem, &cocycle, &ops))
}

pub fn decide_with(problem: &Amp1Problem, cocycle: &Cocycle, ops: &Operators) -> Verdict {
    for point in &problem.zero_points {
        for order in 0..=problem.jet_order {
            if jet_obstruction(cocycle, ops, point, order) == JetOutcome::Infeasible {
                return Verdict::NonVanishing {
                    witness_point: point.clone(),
                    jet_order: order,
                };
            }
        }
    }
    for degree in 0..=problem.degree_bound {
        if let Some(certificate) = certificate_search(cocycle, ops, degree) {
            return Verdict::Vanishes { certificate };
        }
    }
    Verdict::Unknown {
        degree_bound_tried: problem.degree_bound,
        jet_order_tried: problem.jet_order,
    }
}

/// Re-checks a verdict from scratch: certificates are multiplied through,
/// witnesses re-solved. `Unknown` replays trivially.
pub fn replay_verdict(problem: &Amp1Problem, verdict: &Verdict) -> Result<bool, AtiyahError> {
    let cocycle = problem.cocycle()?;
    let ops = problem.operators();
    Ok(match verdict {
        Verdict::Vanishes { certificate } => replay_certificate(&cocycle, &ops, certificate),
        Verdict::NonVanishing {
            witness_point,
            jet_order,
        } => {
            witness_point.len() == problem.n()
                && jet_obstruction(&cocycle, &ops, witness_point, *jet_order) == JetOutcome::Infeasible
        }
        Verdict::Unknown { .. } => true,
    })
}
