//! Constant linear changes of base coordinates and of frame.
//!
//! In the new coordinates `x = A y` and frame, a section `s` has components
//! `s'(y) = P s(A y)`, so zeros map by `y = A^{-1} x`.

use alloc::vec::Vec;

use crate::atiyah::{AtiyahError, Amp1Problem};
use crate::clean::{Chart, ZeroLocusWitness};
use crate::graded::Section;
use crate::linalg;
use crate::ring::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    a: Vec<Vec<Rational>>,
    a_inv: Vec<Vec<Rational>>,
    p: Vec<Vec<Rational>>,
}

fn linear_combination(row: &[Rational], polys: &[Poly], nvars: usize) -> Poly {
    row.iter().zip(polys).fold(Poly::zero(nvars), |acc, (c, p)| &acc + &p.scale(c))
}

impl LinearChange {
    /// `None` unless both matrices are square and invertible.
    pub fn new(a: Vec<Vec<Rational>>, p: Vec<Vec<Rational>>) -> Option<Self> {
        let a_inv = linalg::inverse(&a)?;
        linalg::inverse(&p)?;
        Some(LinearChange { a, a_inv, p })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn m(&self) -> usize {
        self.p.len()
    }

    /// `y = A^{-1} x`.
    pub fn point(&self, x: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.a_inv, x)
    }

    /// `s'(y) = P s(A y)`.
    pub fn section(&self, s: &Section) -> Section {
        let n = self.n();
        assert_eq!((s.n(), s.m()), (n, self.m()));
        let ys: Vec<Poly> = (0..n).map(|j| Poly::var(n, j)).collect();
        let ay: Vec<Poly> = self.a.iter().map(|row| linear_combination(row, &ys, n)).collect();
        let pulled: Vec<Poly> = s
            .components()
            .iter()
            .map(|c| c.compose(&ay).expect("arity"))
            .collect();
        let comps = self.p.iter().map(|row| linear_combination(row, &pulled, n)).collect();
        Section::new(n, comps).expect("shape")
    }

    pub fn witness(&self, w: &ZeroLocusWitness) -> ZeroLocusWitness {
        ZeroLocusWitness {
            points: w.points.iter().map(|x| self.point(x)).collect(),
            charts: w
                .charts
                .iter()
                .map(|c| Chart {
                    base_point: self.point(&c.base_point),
                    param_map: self
                        .a_inv
                        .iter()
                        .map(|row| linear_combination(row, &c.param_map, c.nparams()))
                        .collect(),
                    param_point: c.param_point.clone(),
                    claimed_dim: c.claimed_dim,
                })
                .collect(),
            declared_singular: w.declared_singular,
        }
    }

    /// Transforms a problem carrying the trivial connection.
    pub fn problem(&self, problem: &Amp1Problem) -> Result<Amp1Problem, AtiyahError> {
        if !problem.connection.is_trivial() {
            return Err(AtiyahError::NontrivialConnection);
        }
        Amp1Problem::with_options(
            self.section(&problem.section),
            None,
            problem.zero_points.iter().map(|x| self.point(x)).collect(),
            Some(problem.degree_bound),
            Some(problem.jet_order),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, parse_poly};
    use alloc::vec;

    #[test]
    fn zeros_follow_the_inverse() {
        let v = ["x1", "x2"];
        let s = Section::new(2, vec![parse_poly("x1 - 1", &v).unwrap(), parse_poly("x2^2", &v).unwrap()]).unwrap();
        let a = vec![vec![int(1), int(1)], vec![int(0), int(1)]];
        let p = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        let ch = LinearChange::new(a, p).unwrap();
        let t = ch.section(&s);
        let y = ch.point(&[int(1), int(0)]);
        assert_eq!(y, vec![int(1), int(0)]);
        assert!(t.vanishes_at(&y).unwrap());
        assert!(LinearChange::new(vec![vec![int(1), int(1)], vec![int(1), int(1)]], vec![vec![int(1)]]).is_none());
    }
}
