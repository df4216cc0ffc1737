//! Derived intersections of parametrized submanifolds `X, Y ⊂ R^d` in the
//! flat chart model: the base is `(t, u)`, the bundle is trivial of rank
//! `d`, and the section is `s(t, u) = Y(u) - X(t)`.

use alloc::vec::Vec;

use thiserror::Error;

use crate::atiyah::{AtiyahError, Amp1Problem};
use crate::clean::{evaluate_matrix, map_jacobian, CleanVerdict, NotCleanReason};
use crate::graded::Section;
use crate::linalg;
use crate::ring::{Poly, Rational};

/// `t -> map(t)`, `d` polynomials in `k` parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmanifoldParam {
    pub ambient_dim: usize,
    pub nparams: usize,
    pub map: Vec<Poly>,
}

impl SubmanifoldParam {
    pub fn new(ambient_dim: usize, nparams: usize, map: Vec<Poly>) -> Result<Self, DerivedError> {
        if map.len() != ambient_dim {
            return Err(DerivedError::MapLength {
                expected: ambient_dim,
                found: map.len(),
            });
        }
        if let Some(p) = map.iter().find(|p| p.nvars() != nparams) {
            return Err(DerivedError::MapArity {
                expected: nparams,
                found: p.nvars(),
            });
        }
        Ok(SubmanifoldParam {
            ambient_dim,
            nparams,
            map,
        })
    }

    pub fn evaluate(&self, params: &[Rational]) -> Vec<Rational> {
        self.map.iter().map(|p| p.evaluate(params).expect("arity")).collect()
    }

    /// Tangent vectors at `params` as columns of a `d x k` matrix.
    pub fn jacobian_at(&self, params: &[Rational]) -> Vec<Vec<Rational>> {
        evaluate_matrix(&map_jacobian(&self.map, self.nparams), params)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub x_params: Vec<Rational>,
    pub y_params: Vec<Rational>,
}

impl Intersection {
    /// `(t, u)` as one base point.
    pub fn joined(&self) -> Vec<Rational> {
        self.x_params.iter().chain(&self.y_params).cloned().collect()
    }
}

/// Corpus metadata for one intersection point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionWitness {
    pub claimed_dim: usize,
    pub manifold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedProblem {
    pub x: SubmanifoldParam,
    pub y: SubmanifoldParam,
    pub intersections: Vec<Intersection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DerivedError {
    #[error("map has {found} components, expected {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("map component has {found} parameters, expected {expected}")]
    MapArity { expected: usize, found: usize },
    #[error("X and Y live in different ambient spaces")]
    AmbientMismatch,
    #[error("intersection {index}: parameter vector has the wrong length")]
    ParamLength { index: usize },
    #[error("intersection {index}: X and Y parametrize different points")]
    NotAnIntersection { index: usize },
    #[error("intersection {index}: {which} is not immersed there (rank {rank} < {expected})")]
    NotImmersed {
        index: usize,
        which: char,
        rank: usize,
        expected: usize,
    },
    #[error("expected {expected} intersection witnesses, found {found}")]
    MissingWitness { expected: usize, found: usize },
    #[error(transparent)]
    Amp1(#[from] AtiyahError),
}

impl DerivedProblem {
    pub fn new(
        x: SubmanifoldParam,
        y: SubmanifoldParam,
        intersections: Vec<Intersection>,
    ) -> Result<Self, DerivedError> {
        let dp = DerivedProblem { x, y, intersections };
        dp.validate()?;
        Ok(dp)
    }

    pub fn validate(&self) -> Result<(), DerivedError> {
        if self.x.ambient_dim != self.y.ambient_dim {
            return Err(DerivedError::AmbientMismatch);
        }
        for (index, ix) in self.intersections.iter().enumerate() {
            if ix.x_params.len() != self.x.nparams || ix.y_params.len() != self.y.nparams {
                return Err(DerivedError::ParamLength { index });
            }
            if self.x.evaluate(&ix.x_params) != self.y.evaluate(&ix.y_params) {
                return Err(DerivedError::NotAnIntersection { index });
            }
            for (which, param, point) in [('X', &self.x, &ix.x_params), ('Y', &self.y, &ix.y_params)] {
                let rank = linalg::rank(&param.jacobian_at(point));
                if rank < param.nparams {
                    return Err(DerivedError::NotImmersed {
                        index,
                        which,
                        rank,
                        expected: param.nparams,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.x.ambient_dim
    }

    /// The section `Y(u) - X(t)` on `R^{k+l}`.
    pub fn section(&self) -> Section {
        let (k, l) = (self.x.nparams, self.y.nparams);
        let comps = self
            .x
            .map
            .iter()
            .zip(&self.y.map)
            .map(|(px, py)| &py.embed(k + l, k) - &px.embed(k + l, 0))
            .collect();
        Section::new(k + l, comps).expect("shape")
    }
}

/// Amplitude +1 model with default search bounds.
pub fn build_amp1(dp: &DerivedProblem) -> Result<Amp1Problem, DerivedError> {
    dp.validate()?;
    let points = dp.intersections.iter().map(Intersection::joined).collect();
    Ok(Amp1Problem::new(dp.section(), points)?)
}

/// `dim(T X ∩ T Y) = k + l - rank [DX | DY]` against the declared dimension
/// of `X ∩ Y`, at every declared intersection.
pub fn tangent_clean_check(
    dp: &DerivedProblem,
    witness: &[IntersectionWitness],
) -> Result<CleanVerdict, DerivedError> {
    dp.validate()?;
    if witness.len() != dp.intersections.len() {
        return Err(DerivedError::MissingWitness {
            expected: dp.intersections.len(),
            found: witness.len(),
        });
    }
    let (k, l) = (dp.x.nparams, dp.y.nparams);
    for (ix, w) in dp.intersections.iter().zip(witness) {
        let dx = dp.x.jacobian_at(&ix.x_params);
        let dy = dp.y.jacobian_at(&ix.y_params);
        let joined: Vec<Vec<Rational>> = dx
            .into_iter()
            .zip(dy)
            .map(|(mut a, b)| {
                a.extend(b);
                a
            })
            .collect();
        let tangent_dim = k + l - linalg::rank(&joined);
        if !w.manifold {
            return Ok(CleanVerdict::NotClean {
                witness_point: ix.joined(),
                reason: NotCleanReason::DeclaredNonManifold,
            });
        }
        if w.claimed_dim != tangent_dim {
            return Ok(CleanVerdict::NotClean {
                witness_point: ix.joined(),
                reason: NotCleanReason::TangentIntersection {
                    claimed_dim: w.claimed_dim,
                    tangent_dim,
                },
            });
        }
    }
    Ok(CleanVerdict::Clean)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoMismatch {
    /// Intersection `index` is not among the zero points.
    MissingZeroPoint { index: usize },
    /// Zero point `index` does not come from a declared intersection.
    UnmatchedZeroPoint { index: usize },
    /// The section does not vanish at zero point `index`.
    NotAZero { index: usize },
}

/// Checks `s^{-1}(0) ≅ X ∩ Y` on the declared data.
pub fn zero_locus_iso_check(dp: &DerivedProblem, amp1: &Amp1Problem) -> Vec<IsoMismatch> {
    let s = dp.section();
    let joined: Vec<Vec<Rational>> = dp.intersections.iter().map(Intersection::joined).collect();
    let mut out = Vec::new();
    for (index, p) in joined.iter().enumerate() {
        if !amp1.zero_points.contains(p) {
            out.push(IsoMismatch::MissingZeroPoint { index });
        }
    }
    for (index, p) in amp1.zero_points.iter().enumerate() {
        if p.len() != s.n() || !s.vanishes_at(p).unwrap_or(false) {
            out.push(IsoMismatch::NotAZero { index });
        } else if !joined.contains(p) {
            out.push(IsoMismatch::UnmatchedZeroPoint { index });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, parse_poly};
    use alloc::vec;

    fn param(d: usize, vars: &[&str], comps: &[&str]) -> SubmanifoldParam {
        let map = comps.iter().map(|c| parse_poly(c, vars).unwrap()).collect();
        SubmanifoldParam::new(d, vars.len(), map).unwrap()
    }

    fn at_origin(x: SubmanifoldParam, y: SubmanifoldParam) -> DerivedProblem {
        let ix = Intersection {
            x_params: vec![int(0); x.nparams],
            y_params: vec![int(0); y.nparams],
        };
        DerivedProblem::new(x, y, vec![ix]).unwrap()
    }

    const TU: [&str; 2] = ["t", "u"];

    #[test]
    fn built_sections() {
        let axes = at_origin(param(2, &["t"], &["t", "0"]), param(2, &["u"], &["0", "u"]));
        let amp1 = build_amp1(&axes).unwrap();
        let expected = Section::new(
            2,
            vec![parse_poly("-t", &TU).unwrap(), parse_poly("u", &TU).unwrap()],
        )
        .unwrap();
        assert_eq!(amp1.section, expected);
        assert_eq!(amp1.zero_points, vec![vec![int(0), int(0)]]);
        assert!(zero_locus_iso_check(&axes, &amp1).is_empty());

        let same = at_origin(param(2, &["t"], &["t", "0"]), param(2, &["u"], &["u", "0"]));
        assert_eq!(
            same.section().components(),
            &[parse_poly("u - t", &TU).unwrap(), Poly::zero(2)]
        );

        let parabola = at_origin(param(2, &["t"], &["t", "t^2"]), param(2, &["u"], &["u", "0"]));
        assert_eq!(
            parabola.section().components(),
            &[parse_poly("u - t", &TU).unwrap(), parse_poly("-t^2", &TU).unwrap()]
        );
    }

    #[test]
    fn tangent_checks() {
        let yes = |dim| [IntersectionWitness { claimed_dim: dim, manifold: true }];
        let axes = at_origin(param(2, &["t"], &["t", "0"]), param(2, &["u"], &["0", "u"]));
        assert_eq!(tangent_clean_check(&axes, &yes(0)).unwrap(), CleanVerdict::Clean);

        let parabola = at_origin(param(2, &["t"], &["t", "t^2"]), param(2, &["u"], &["u", "0"]));
        assert_eq!(
            tangent_clean_check(&parabola, &yes(0)).unwrap(),
            CleanVerdict::NotClean {
                witness_point: vec![int(0), int(0)],
                reason: NotCleanReason::TangentIntersection { claimed_dim: 0, tangent_dim: 1 }
            }
        );

        let same = at_origin(param(2, &["t"], &["t", "0"]), param(2, &["u"], &["u", "0"]));
        assert_eq!(tangent_clean_check(&same, &yes(1)).unwrap(), CleanVerdict::Clean);
        assert!(tangent_clean_check(&same, &[]).is_err());
    }

    #[test]
    fn iso_mismatches() {
        let x = param(2, &["t"], &["t", "0"]);
        let y = param(2, &["u"], &["0", "u + 1"]);
        let disjoint = DerivedProblem::new(x, y, vec![]).unwrap();
        let amp1 = build_amp1(&disjoint).unwrap();
        assert!(zero_locus_iso_check(&disjoint, &amp1).is_empty());

        let axes = at_origin(param(2, &["t"], &["t", "0"]), param(2, &["u"], &["0", "u"]));
        let mut corrupted = build_amp1(&axes).unwrap();
        corrupted.zero_points = vec![vec![int(1), int(0)]];
        assert_eq!(
            zero_locus_iso_check(&axes, &corrupted),
            vec![
                IsoMismatch::MissingZeroPoint { index: 0 },
                IsoMismatch::NotAZero { index: 0 }
            ]
        );
        let bogus = DerivedProblem::new(
            param(2, &["t"], &["t", "0"]),
            param(2, &["u"], &["0", "u"]),
            vec![Intersection {
                x_params: vec![int(1)],
                y_params: vec![int(0)],
            }],
        );
        assert_eq!(bogus, Err(DerivedError::NotAnIntersection { index: 0 }));
    }
}
