//! Clean-intersection oracle: the zero section meets `s` cleanly at `p`
//! iff `dim T_p Z + rank Ds_p = n`, checked on declared charts of `Z`.

use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::graded::Section;
use crate::linalg;
use crate::ring::{Poly, Rational};

/// A polynomial parametrization of a piece of the zero locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub base_point: Vec<Rational>,
    /// `n` polynomials in the chart parameters.
    pub param_map: Vec<Poly>,
    pub param_point: Vec<Rational>,
    pub claimed_dim: usize,
}

impl Chart {
    pub fn nparams(&self) -> usize {
        self.param_point.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZeroLocusWitness {
    pub points: Vec<Vec<Rational>>,
    pub charts: Vec<Chart>,
    /// Corpus metadata: the zero locus is not a manifold somewhere.
    pub declared_singular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("point {index} has {found} coordinates, expected {expected}")]
    PointLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("section does not vanish at point {index}")]
    PointNotZero { index: usize },
    #[error("chart {chart}: {what} has length {found}, expected {expected}")]
    ChartShape {
        chart: usize,
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("chart {chart}: parameter map does not send the parameter point to the base point")]
    BasePointMismatch { chart: usize },
    #[error("chart {chart}: component {component} of s does not vanish on the chart")]
    NotInZeroLocus { chart: usize, component: usize },
    #[error("chart {chart}: Jacobian rank {rank} differs from claimed dimension {claimed}")]
    NotAnImmersion {
        chart: usize,
        claimed: usize,
        rank: usize,
    },
    #[error("ds_matrix needs a zero of the section")]
    NotAZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotCleanReason {
    /// `dim_z + rank_ds != n`.
    RankEquation { dim_z: usize, rank_ds: usize, n: usize },
    /// Two charts through the point with different dimensions.
    DeclaredSingular { chart_a: usize, chart_b: usize, dims: (usize, usize) },
    /// Declared intersection dimension differs from that of the tangent
    /// spaces' intersection.
    TangentIntersection { claimed_dim: usize, tangent_dim: usize },
    /// Intersection declared non-manifold in the corpus.
    DeclaredNonManifold,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CleanVerdict {
    Clean,
    NotClean {
        witness_point: Vec<Rational>,
        reason: NotCleanReason,
    },
    Unknown,
}

impl CleanVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            CleanVerdict::Clean => "Clean",
            CleanVerdict::NotClean { .. } => "NotClean",
            CleanVerdict::Unknown => "Unknown",
        }
    }
}

/// Evaluates a matrix of polynomials at a point.
pub fn evaluate_matrix(m: &[Vec<Poly>], point: &[Rational]) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|row| row.iter().map(|p| p.evaluate(point).expect("arity")).collect())
        .collect()
}

/// `Ds_p`, the `m x n` Jacobian of `s` at a zero `p`.
pub fn ds_matrix(s: &Section, p: &[Rational]) -> Result<Vec<Vec<Rational>>, WitnessError> {
    if p.len() != s.n() || !s.vanishes_at(p).unwrap_or(false) {
        return Err(WitnessError::NotAZero);
    }
    Ok(evaluate_matrix(&s.jacobian(), p))
}

/// Jacobian `(∂ map_i / ∂ t_j)` of a polynomial map in `k` variables.
pub fn map_jacobian(map: &[Poly], k: usize) -> Vec<Vec<Poly>> {
    map.iter().map(|p| (0..k).map(|j| p.d(j)).collect()).collect()
}

pub fn validate_witness(s: &Section, w: &ZeroLocusWitness) -> Result<(), WitnessError> {
    let n = s.n();
    for (index, p) in w.points.iter().enumerate() {
        if p.len() != n {
            return Err(WitnessError::PointLength {
                index,
                expected: n,
                found: p.len(),
            });
        }
        if !s.vanishes_at(p).expect("length checked") {
            return Err(WitnessError::PointNotZero { index });
        }
    }
    for (ci, chart) in w.charts.iter().enumerate() {
        let k = chart.nparams();
        let shape = |what, expected, found| WitnessError::ChartShape {
            chart: ci,
            what,
            expected,
            found,
        };
        if chart.base_point.len() != n {
            return Err(shape("base point", n, chart.base_point.len()));
        }
        if chart.param_map.len() != n {
            return Err(shape("parameter map", n, chart.param_map.len()));
        }
        if let Some(p) = chart.param_map.iter().find(|p| p.nvars() != k) {
            return Err(shape("parameter list", k, p.nvars()));
        }
        let image: Vec<Rational> = chart
            .param_map
            .iter()
            .map(|p| p.evaluate(&chart.param_point).expect("arity checked"))
            .collect();
        if image != chart.base_point {
            return Err(WitnessError::BasePointMismatch { chart: ci });
        }
        for (component, sk) in s.components().iter().enumerate() {
            if !sk.compose(&chart.param_map).expect("arity checked").is_zero() {
                return Err(WitnessError::NotInZeroLocus {
                    chart: ci,
                    component,
                });
            }
        }
        let jac = evaluate_matrix(&map_jacobian(&chart.param_map, k), &chart.param_point);
        let rank = linalg::rank(&jac);
        if rank != chart.claimed_dim {
            return Err(WitnessError::NotAnImmersion {
                chart: ci,
                claimed: chart.claimed_dim,
                rank,
            });
        }
    }
    Ok(())
}

/// Rank criterion at every chart base point, charts in order.
pub fn clean_check(s: &Section, w: &ZeroLocusWitness) -> Result<CleanVerdict, WitnessError> {
    validate_witness(s, w)?;
    let n = s.n();
    for (ci, chart) in w.charts.iter().enumerate() {
        let rank_ds = linalg::rank(&ds_matrix(s, &chart.base_point)?);
        if chart.claimed_dim + rank_ds != n {
            return Ok(CleanVerdict::NotClean {
                witness_point: chart.base_point.clone(),
                reason: NotCleanReason::RankEquation {
                    dim_z: chart.claimed_dim,
                    rank_ds,
                    n,
                },
            });
        }
        if let Some((cj, other)) = w.charts[..ci].iter().enumerate().find(|(_, o)| {
            o.base_point == chart.base_point && o.claimed_dim != chart.claimed_dim
        }) {
            return Ok(CleanVerdict::NotClean {
                witness_point: chart.base_point.clone(),
                reason: NotCleanReason::DeclaredSingular {
                    chart_a: cj,
                    chart_b: ci,
                    dims: (other.claimed_dim, chart.claimed_dim),
                },
            });
        }
    }
    let uncovered = w
        .points
        .iter()
        .any(|p| !w.charts.iter().any(|c| &c.base_point == p));
    if uncovered || w.declared_singular {
        return Ok(CleanVerdict::Unknown);
    }
    Ok(CleanVerdict::Clean)
}

/// `r` if `s` is, up to a constant frame change and a permutation of the
/// variables, `(x1, ..., xr, 0, ..., 0)`.
pub fn linear_normal_form_detect(s: &Section) -> Option<usize> {
    let n = s.n();
    let mut rows = Vec::with_capacity(s.m());
    for p in s.components() {
        if p.terms().any(|(mono, _)| mono.degree() != 1) {
            return None;
        }
        rows.push(
            (0..n)
                .map(|i| p.coeff(&crate::ring::Monomial::var(n, i)))
                .collect::<Vec<Rational>>(),
        );
    }
    let (reduced, pivots) = linalg::rref(&rows);
    for row in reduced.iter().take(pivots.len()) {
        if row.iter().filter(|v| !v.is_zero()).count() != 1 {
            return None;
        }
    }
    Some(pivots.len())
}

/// `s = (x1, ..., xr, 0, ..., 0)` on `R^n` with rank-`m` bundle, with the
/// chart `t -> (0, ..., 0, t)` through the origin.
pub fn linear_normal_form(n: usize, m: usize, r: usize) -> (Section, ZeroLocusWitness) {
    assert!(r <= n.min(m));
    let comps = (0..m)
        .map(|k| if k < r { Poly::var(n, k) } else { Poly::zero(n) })
        .collect();
    let k = n - r;
    let param_map = (0..n)
        .map(|i| if i < r { Poly::zero(k) } else { Poly::var(k, i - r) })
        .collect();
    let origin: Vec<Rational> = (0..n).map(|_| Rational::zero()).collect();
    let witness = ZeroLocusWitness {
        points: alloc::vec![origin.clone()],
        charts: alloc::vec![Chart {
            base_point: origin,
            param_map,
            param_point: (0..k).map(|_| Rational::zero()).collect(),
            claimed_dim: k,
        }],
        declared_singular: false,
    };
    (Section::new(n, comps).expect("shape"), witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, parse_poly};
    use alloc::vec;

    fn section(vars: &[&str], comps: &[&str]) -> Section {
        Section::new(
            vars.len(),
            comps.iter().map(|c| parse_poly(c, vars).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn jacobians_at_zeros() {
        let v = ["x1", "x2"];
        let s = section(&v, &["x1", "x1*x2"]);
        assert_eq!(
            ds_matrix(&s, &[int(0), int(0)]).unwrap(),
            vec![vec![int(1), int(0)], vec![int(0), int(0)]]
        );
        let s = section(&["x"], &["x^2"]);
        assert_eq!(ds_matrix(&s, &[int(0)]).unwrap(), vec![vec![int(0)]]);
        let s = section(&v, &["x1 - x2", "0"]);
        assert_eq!(
            ds_matrix(&s, &[int(1), int(1)]).unwrap(),
            vec![vec![int(1), int(-1)], vec![int(0), int(0)]]
        );
        assert_eq!(ds_matrix(&s, &[int(1), int(0)]), Err(WitnessError::NotAZero));
    }

    #[test]
    fn clean_examples() {
        let s = section(&["x1", "x2"], &["x1"]);
        let line = ZeroLocusWitness {
            points: vec![vec![int(0), int(0)]],
            charts: vec![Chart {
                base_point: vec![int(0), int(0)],
                param_map: vec![Poly::zero(1), Poly::var(1, 0)],
                param_point: vec![int(0)],
                claimed_dim: 1,
            }],
            declared_singular: false,
        };
        assert_eq!(clean_check(&s, &line).unwrap(), CleanVerdict::Clean);

        let s = section(&["x"], &["x^2"]);
        let point = ZeroLocusWitness {
            points: vec![vec![int(0)]],
            charts: vec![Chart {
                base_point: vec![int(0)],
                param_map: vec![Poly::zero(0)],
                param_point: vec![],
                claimed_dim: 0,
            }],
            declared_singular: false,
        };
        assert_eq!(
            clean_check(&s, &point).unwrap(),
            CleanVerdict::NotClean {
                witness_point: vec![int(0)],
                reason: NotCleanReason::RankEquation { dim_z: 0, rank_ds: 0, n: 1 }
            }
        );

        let s = Section::zero(1, 1);
        let everything = ZeroLocusWitness {
            points: vec![vec![int(0)]],
            charts: vec![Chart {
                base_point: vec![int(0)],
                param_map: vec![Poly::var(1, 0)],
                param_point: vec![int(0)],
                claimed_dim: 1,
            }],
            declared_singular: false,
        };
        assert_eq!(clean_check(&s, &everything).unwrap(), CleanVerdict::Clean);

        let no_charts = ZeroLocusWitness {
            points: vec![vec![int(0)]],
            ..Default::default()
        };
        assert_eq!(clean_check(&s, &no_charts).unwrap(), CleanVerdict::Unknown);
    }

    #[test]
    fn witness_errors() {
        let s = section(&["x1", "x2"], &["x1"]);
        let bad = ZeroLocusWitness {
            points: vec![],
            charts: vec![Chart {
                base_point: vec![int(0), int(0)],
                param_map: vec![Poly::var(1, 0), Poly::zero(1)],
                param_point: vec![int(0)],
                claimed_dim: 1,
            }],
            declared_singular: false,
        };
        assert_eq!(
            clean_check(&s, &bad),
            Err(WitnessError::NotInZeroLocus { chart: 0, component: 0 })
        );
    }

    #[test]
    fn normal_forms() {
        let v = ["x1", "x2"];
        assert_eq!(linear_normal_form_detect(&section(&v, &["x1", "0"])), Some(1));
        assert_eq!(linear_normal_form_detect(&section(&v, &["x1 + x2", "x1 - x2"])), Some(2));
        assert_eq!(linear_normal_form_detect(&section(&v, &["x1*x2"])), None);
        assert_eq!(linear_normal_form_detect(&section(&v, &["x1 + x2"])), None);
        assert_eq!(linear_normal_form_detect(&Section::zero(2, 3)), Some(0));
        for n in 0..4 {
            for m in 0..4 {
                for r in 0..=n.min(m) {
                    let (s, w) = linear_normal_form(n, m, r);
                    assert_eq!(linear_normal_form_detect(&s), Some(r));
                    assert_eq!(clean_check(&s, &w).unwrap(), CleanVerdict::Clean);
                }
            }
        }
    }
}
