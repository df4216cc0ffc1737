//! Torsion-free affine connections on `E[-1]`, presented as triples
//! `(∇^E, ∇^M, β)` of polynomial coefficient arrays on `R^n`.
//!
//! Index conventions (all zero-based):
//! - `∇^M_{∂i} ∂j = Σ_k gamma_m(i, j, k) ∂k`
//! - `∇^E_{∂i} e_a = Σ_k gamma_e(i, a, k) e_k`
//! - `β(∂i, ∂j) e_a = Σ_k beta(i, j, a, k) e_k`
//!
//! The horizontal lift of `∂i` is `X̂_i = ∂/∂x^i - Σ_{a,k} gamma_e(i, a, k) xi^a ∂/∂xi^k`,
//! i.e. the dual connection acts on the odd coordinates by
//! `∇^E_{∂i} xi^k = -Σ_a gamma_e(i, a, k) xi^a`.

use alloc::vec::Vec;

use thiserror::Error;

use crate::graded::{GradedVectorField, Section, SuperFunction};
use crate::ring::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("{array} has {found} entries, expected {expected}")]
    Shape {
        array: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{array} entry has {found} variables, expected {expected}")]
    Arity {
        array: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("dimension mismatch between connection ({n}, {m}) and its argument")]
    Dimension { n: usize, m: usize },
}

/// One failed constraint of a connection triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `gamma_m(i, j, k) != gamma_m(j, i, k)`.
    Torsion { i: usize, j: usize, k: usize },
    /// `beta(i, j, a, k) - beta(j, i, a, k) != -R(i, j, a, k)`.
    BetaConstraint {
        i: usize,
        j: usize,
        a: usize,
        k: usize,
        difference: Poly,
        minus_curvature: Poly,
    },
}

/// Curvature `R(∂i, ∂j) e_a = Σ_k r(i, j, a, k) e_k` of `∇^E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTensor {
    n: usize,
    m: usize,
    entries: Vec<Poly>,
}

impl CurvatureTensor {
    pub fn get(&self, i: usize, j: usize, a: usize, k: usize) -> &Poly {
        &self.entries[((i * self.n + j) * self.m + a) * self.m + k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionTriple {
    n: usize,
    m: usize,
    gamma_m: Vec<Poly>,
    gamma_e: Vec<Poly>,
    beta: Vec<Poly>,
}

impl ConnectionTriple {
    pub fn trivial(n: usize, m: usize) -> Self {
        ConnectionTriple {
            n,
            m,
            gamma_m: (0..n * n * n).map(|_| Poly::zero(n)).collect(),
            gamma_e: (0..n * m * m).map(|_| Poly::zero(n)).collect(),
            beta: (0..n * n * m * m).map(|_| Poly::zero(n)).collect(),
        }
    }

    /// Builds a triple from flat row-major arrays.
    pub fn from_arrays(
        n: usize,
        m: usize,
        gamma_m: Vec<Poly>,
        gamma_e: Vec<Poly>,
        beta: Vec<Poly>,
    ) -> Result<Self, ConnectionError> {
        for (array, v, expected) in [
            ("gamma_m", &gamma_m, n * n * n),
            ("gamma_e", &gamma_e, n * m * m),
            ("beta", &beta, n * n * m * m),
        ] {
            if v.len() != expected {
                return Err(ConnectionError::Shape {
                    array,
                    expected,
                    found: v.len(),
                });
            }
            if let Some(p) = v.iter().find(|p| p.nvars() != n) {
                return Err(ConnectionError::Arity {
                    array,
                    expected: n,
                    found: p.nvars(),
                });
            }
        }
        Ok(ConnectionTriple {
            n,
            m,
            gamma_m,
            gamma_e,
            beta,
        })
    }

    /// Completes `(∇^E, ∇^M)` with `β = sym - R/2`, where `sym` must be
    /// symmetric in `(i, j)`. The result satisfies the β constraint whenever
    /// `sym` is symmetric.
    pub fn with_symmetric_beta(
        n: usize,
        m: usize,
        gamma_m: Vec<Poly>,
        gamma_e: Vec<Poly>,
        sym: Vec<Poly>,
    ) -> Result<Self, ConnectionError> {
        let mut t = Self::from_arrays(n, m, gamma_m, gamma_e, sym)?;
        let r = t.curvature();
        let half = Rational::new(1.into(), 2.into());
        for i in 0..n {
            for j in 0..n {
                for a in 0..m {
                    for k in 0..m {
                        let idx = t.beta_index(i, j, a, k);
                        t.beta[idx] = &t.beta[idx] - &r.get(i, j, a, k).scale(&half);
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn beta_index(&self, i: usize, j: usize, a: usize, k: usize) -> usize {
        ((i * self.n + j) * self.m + a) * self.m + k
    }

    pub fn gamma_m(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.gamma_m[(i * self.n + j) * self.n + k]
    }

    pub fn gamma_e(&self, i: usize, a: usize, k: usize) -> &Poly {
        &self.gamma_e[(i * self.m + a) * self.m + k]
    }

    pub fn beta(&self, i: usize, j: usize, a: usize, k: usize) -> &Poly {
        &self.beta[self.beta_index(i, j, a, k)]
    }

    pub fn gamma_m_mut(&mut self, i: usize, j: usize, k: usize) -> &mut Poly {
        &mut self.gamma_m[(i * self.n + j) * self.n + k]
    }

    pub fn gamma_e_mut(&mut self, i: usize, a: usize, k: usize) -> &mut Poly {
        &mut self.gamma_e[(i * self.m + a) * self.m + k]
    }

    pub fn beta_mut(&mut self, i: usize, j: usize, a: usize, k: usize) -> &mut Poly {
        let idx = self.beta_index(i, j, a, k);
        &mut self.beta[idx]
    }

    pub fn is_trivial(&self) -> bool {
        self.gamma_m
            .iter()
            .chain(&self.gamma_e)
            .chain(&self.beta)
            .all(Poly::is_zero)
    }

    /// `R(∂i, ∂j) e_a = ∇_i ∇_j e_a - ∇_j ∇_i e_a`; coordinate fields commute.
    pub fn curvature(&self) -> CurvatureTensor {
        let (n, m) = (self.n, self.m);
        let mut entries = Vec::with_capacity(n * n * m * m);
        for i in 0..n {
            for j in 0..n {
                for a in 0..m {
                    for l in 0..m {
                        let mut r = &self.gamma_e(j, a, l).d(i) - &self.gamma_e(i, a, l).d(j);
                        for k in 0..m {
                            r = &r + &(self.gamma_e(j, a, k) * self.gamma_e(i, k, l));
                            r = &r - &(self.gamma_e(i, a, k) * self.gamma_e(j, k, l));
                        }
                        entries.push(r);
                    }
                }
            }
        }
        CurvatureTensor { n, m, entries }
    }

    /// Every violated constraint, in index order; empty iff the triple is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let (n, m) = (self.n, self.m);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.gamma_m(i, j, k) != self.gamma_m(j, i, k) && i < j {
                        out.push(Violation::Torsion { i, j, k });
                    }
                }
            }
        }
        let r = self.curvature();
        for i in 0..n {
            for j in i + 1..n {
                for a in 0..m {
                    for k in 0..m {
                        let difference = self.beta(i, j, a, k) - self.beta(j, i, a, k);
                        let minus_curvature = -r.get(i, j, a, k);
                        if difference != minus_curvature {
                            out.push(Violation::BetaConstraint {
                                i,
                                j,
                                a,
                                k,
                                difference,
                                minus_curvature,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// `∇^E_{∂i} s`, with components `∂i s^k + Σ_a gamma_e(i, a, k) s^a`.
    pub fn covariant_derivative_section(&self, i: usize, s: &Section) -> Section {
        let comps = (0..self.m)
            .map(|k| {
                let mut c = s.component(k).d(i);
                for a in 0..self.m {
                    c = &c + &(self.gamma_e(i, a, k) * s.component(a));
                }
                c
            })
            .collect();
        Section::new(self.n, comps).expect("shape preserved")
    }

    /// Horizontal lift `X̂_i` of the coordinate field `∂i`.
    pub fn horizontal_lift(&self, i: usize) -> GradedVectorField {
        let (n, m) = (self.n, self.m);
        let mut x: Vec<SuperFunction> = (0..n).map(|_| SuperFunction::zero(n, m)).collect();
        x[i] = SuperFunction::one(n, m);
        let xi = (0..m)
            .map(|k| {
                let mut f = SuperFunction::zero(n, m);
                for a in 0..m {
                    f = &f - &SuperFunction::xi(n, m, a).scale_poly(self.gamma_e(i, a, k));
                }
                f
            })
            .collect();
        GradedVectorField::from_components(x, xi).expect("shape preserved")
    }

    /// `ι_{e_a}`, the contraction by a frame vector.
    pub fn contraction(&self, a: usize) -> GradedVectorField {
        GradedVectorField::partial_xi(self.n, self.m, a)
    }

    /// Coefficients of `V = Σ_i f^i X̂_i + Σ_a g^a ι_{e_a}` in the lifted basis.
    pub fn lifted_coefficients(&self, v: &GradedVectorField) -> (Vec<SuperFunction>, Vec<SuperFunction>) {
        let (n, m) = (self.n, self.m);
        let f: Vec<SuperFunction> = v.x_components().to_vec();
        let g = (0..m)
            .map(|k| {
                let mut gk = v.xi_components()[k].clone();
                for (i, fi) in f.iter().enumerate() {
                    if fi.is_zero() {
                        continue;
                    }
                    for a in 0..m {
                        let coeff = self.gamma_e(i, a, k);
                        if coeff.is_zero() {
                            continue;
                        }
                        gk = &gk + &(fi * &SuperFunction::xi(n, m, a)).scale_poly(coeff);
                    }
                }
                gk
            })
            .collect();
        (f, g)
    }

    fn nabla_lift_lift(&self, i: usize, j: usize) -> GradedVectorField {
        let (n, m) = (self.n, self.m);
        let mut out = GradedVectorField::zero(n, m);
        for c in 0..n {
            let coeff = self.gamma_m(i, j, c);
            if !coeff.is_zero() {
                out = &out + &self
                    .horizontal_lift(c)
                    .mul_left(&SuperFunction::from_poly(m, coeff.clone()));
            }
        }
        // ι_{β(∂i, ∂j)} = Σ_{a,k} beta(i, j, a, k) xi^a ∂/∂xi^k
        for a in 0..m {
            for k in 0..m {
                let coeff = self.beta(i, j, a, k);
                if !coeff.is_zero() {
                    out = &out + &self
                        .contraction(k)
                        .mul_left(&SuperFunction::xi(n, m, a).scale_poly(coeff));
                }
            }
        }
        out
    }

    fn nabla_lift_contraction(&self, i: usize, a: usize) -> GradedVectorField {
        let (n, m) = (self.n, self.m);
        let mut out = GradedVectorField::zero(n, m);
        for k in 0..m {
            let coeff = self.gamma_e(i, a, k);
            if !coeff.is_zero() {
                out = &out + &self
                    .contraction(k)
                    .mul_left(&SuperFunction::from_poly(m, coeff.clone()));
            }
        }
        out
    }

    /// `∇_X Y` for arbitrary fields, extended from the basis values
    /// `∇_{ι_a} ι_b = 0`, `∇_{ι_a} X̂ = 0`, `∇_{X̂} ι_a = ι_{∇^E_X a}`,
    /// `∇_{X̂} Ŷ = (∇^M_X Y)^ + ι_{β(X,Y)}` by left linearity in `X` and the
    /// graded Leibniz rule in `Y`.
    pub fn nabla_on_fields(
        &self,
        x: &GradedVectorField,
        y: &GradedVectorField,
    ) -> Result<GradedVectorField, ConnectionError> {
        let (n, m) = (self.n, self.m);
        for v in [x, y] {
            if v.n() != n || v.m() != m {
                return Err(ConnectionError::Dimension { n, m });
            }
        }
        let (fx, gx) = self.lifted_coefficients(x);
        let (fy, gy) = self.lifted_coefficients(y);
        let lifts: Vec<GradedVectorField> = (0..n).map(|i| self.horizontal_lift(i)).collect();
        let contractions: Vec<GradedVectorField> = (0..m).map(|a| self.contraction(a)).collect();

        let mut out = GradedVectorField::zero(n, m);
        // X = Σ_i fx^i X̂_i ; basis degree 0
        for (i, fi) in fx.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            let mut inner = GradedVectorField::zero(n, m);
            for (j, h) in fy.iter().enumerate() {
                if h.is_zero() {
                    continue;
                }
                inner = &inner + &lifts[j].mul_left(&lifts[i].apply(h).expect("shape"));
                inner = &inner + &self.nabla_lift_lift(i, j).mul_left(h);
            }
            for (b, k) in gy.iter().enumerate() {
                if k.is_zero() {
                    continue;
                }
                inner = &inner + &contractions[b].mul_left(&lifts[i].apply(k).expect("shape"));
                inner = &inner + &self.nabla_lift_contraction(i, b).mul_left(k);
            }
            out = &out + &inner.mul_left(fi);
        }
        // X = Σ_a gx^a ι_a ; basis degree 1, and ∇_{ι_a} kills basis fields
        for (a, g) in gx.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let mut inner = GradedVectorField::zero(n, m);
            for (j, h) in fy.iter().enumerate() {
                if !h.is_zero() {
                    inner = &inner + &lifts[j].mul_left(&contractions[a].apply(h).expect("shape"));
                }
            }
            for (b, k) in gy.iter().enumerate() {
                if !k.is_zero() {
                    inner = &inner
                        + &contractions[b].mul_left(&contractions[a].apply(k).expect("shape"));
                }
            }
            out = &out + &inner.mul_left(g);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, parse_poly};
    use alloc::vec;

    #[test]
    fn trivial_connection_has_no_curvature() {
        let t = ConnectionTriple::trivial(3, 2);
        assert!(t.curvature().is_zero());
        assert!(t.validate().is_empty());
        assert_eq!(t.horizontal_lift(1), GradedVectorField::partial_x(3, 2, 1));
    }

    #[test]
    fn one_dimensional_base_is_flat() {
        let mut t = ConnectionTriple::trivial(1, 2);
        *t.gamma_e_mut(0, 0, 1) = parse_poly("x^2 + 1", &["x"]).unwrap();
        assert!(t.curvature().is_zero());
    }

    #[test]
    fn curvature_of_a_line_bundle() {
        // ∇_1 e = x2 e, ∇_2 e = 0:
        // R(∂1, ∂2) e = ∇_1(0) - ∇_2(x2 e) = -e
        let v = ["x1", "x2"];
        let mut t = ConnectionTriple::trivial(2, 1);
        *t.gamma_e_mut(0, 0, 0) = parse_poly("x2", &v).unwrap();
        let r = t.curvature();
        assert_eq!(*r.get(0, 1, 0, 0), Poly::constant(2, int(-1)));
        assert_eq!(*r.get(1, 0, 0, 0), Poly::constant(2, int(1)));
        // β = 0 now violates its constraint
        let violations = t.validate();
        assert_eq!(violations.len(), 1);
        assert!(matches!(
            violations[0],
            Violation::BetaConstraint { i: 0, j: 1, a: 0, k: 0, .. }
        ));
        let fixed = ConnectionTriple::with_symmetric_beta(
            2,
            1,
            t.gamma_m.clone(),
            t.gamma_e.clone(),
            vec![Poly::zero(2); 4],
        )
        .unwrap();
        assert!(fixed.validate().is_empty());
    }

    #[test]
    fn torsion_violation_is_located() {
        let mut t = ConnectionTriple::trivial(2, 1);
        *t.gamma_m_mut(0, 1, 0) = Poly::one(2);
        assert_eq!(t.validate(), vec![Violation::Torsion { i: 0, j: 1, k: 0 }]);
    }

    #[test]
    fn covariant_derivative_of_sections() {
        let v = ["x"];
        let s = Section::new(1, vec![parse_poly("x", &v).unwrap()]).unwrap();
        let mut t = ConnectionTriple::trivial(1, 1);
        assert_eq!(t.covariant_derivative_section(0, &s).component(0), &Poly::one(1));
        *t.gamma_e_mut(0, 0, 0) = parse_poly("x", &v).unwrap();
        assert_eq!(
            t.covariant_derivative_section(0, &s).component(0),
            &parse_poly("1 + x^2", &v).unwrap()
        );
        assert!(t.covariant_derivative_section(0, &Section::zero(1, 1)).is_zero());
    }

    #[test]
    fn basis_values_of_nabla() {
        let t = ConnectionTriple::trivial(2, 2);
        let l0 = t.horizontal_lift(0);
        let l1 = t.horizontal_lift(1);
        assert!(t.nabla_on_fields(&l0, &l1).unwrap().is_zero());
        let c0 = t.contraction(0);
        let c1 = t.contraction(1);
        assert!(t.nabla_on_fields(&c0, &c1).unwrap().is_zero());
        let f = c0.mul_left(&SuperFunction::xi(2, 2, 0));
        assert!(t.nabla_on_fields(&l0, &f).unwrap().is_zero());
    }
}
