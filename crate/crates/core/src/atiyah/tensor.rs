use alloc::vec::Vec;

use super::cocycle::Cocycle;
use super::operators::{pair_index, pairs};
use crate::graded::{GradedVectorField, Section, SuperFunction};
use crate::ring::{Poly, Rational};

/// A degree-0 section of `S²(T*) ⊗ T` on `E[-1]`, in the domain coordinates
/// of the operator matrices: `f1`, `f2`, `f3` are indexed exactly like the
/// columns of `d1`, `d2`, `d3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeZeroTensor {
    pub n: usize,
    pub m: usize,
    pub f1: Vec<Poly>,
    pub f2: Vec<Poly>,
    pub f3: Vec<Poly>,
}

impl DegreeZeroTensor {
    pub fn zero(n: usize, m: usize) -> Self {
        let p = n * (n + 1) / 2;
        DegreeZeroTensor {
            n,
            m,
            f1: (0..m * m * p).map(|_| Poly::zero(n)).collect(),
            f2: (0..m * m * n).map(|_| Poly::zero(n)).collect(),
            f3: (0..p * n).map(|_| Poly::zero(n)).collect(),
        }
    }

    fn npairs(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    pub fn f1_index(&self, l: usize, k: usize, i: usize, j: usize) -> usize {
        (l * self.m + k) * self.npairs() + pair_index(self.n, i, j)
    }

    pub fn f2_index(&self, a: usize, c: usize, b: usize) -> usize {
        (a * self.m + c) * self.n + b
    }

    pub fn f3_index(&self, a: usize, b: usize, c: usize) -> usize {
        pair_index(self.n, a, b) * self.n + c
    }

    fn diagonal_weight(i: usize, j: usize) -> Rational {
        Rational::from_integer(if i == j { 2 } else { 1 }.into())
    }

    /// `F(∂i, ∂j)`.
    pub fn on_even(&self, i: usize, j: usize) -> GradedVectorField {
        let (n, m) = (self.n, self.m);
        let w = Self::diagonal_weight(i, j);
        let x = (0..n)
            .map(|c| SuperFunction::from_poly(m, self.f3[self.f3_index(i, j, c)].scale(&w)))
            .collect();
        let xi = (0..m)
            .map(|k| {
                let mut f = SuperFunction::zero(n, m);
                for l in 0..m {
                    let coeff = self.f1[self.f1_index(l, k, i, j)].scale(&w);
                    f = &f + &SuperFunction::xi(n, m, l).scale_poly(&coeff);
                }
                f
            })
            .collect();
        GradedVectorField::from_components(x, xi).expect("shape")
    }

    /// `F(∂/∂xi^a, ∂j) = F(∂j, ∂/∂xi^a)`.
    pub fn on_mixed(&self, a: usize, j: usize) -> GradedVectorField {
        let (n, m) = (self.n, self.m);
        let x = (0..n).map(|_| SuperFunction::zero(n, m)).collect();
        let xi = (0..m)
            .map(|c| SuperFunction::from_poly(m, self.f2[self.f2_index(a, c, j)].clone()))
            .collect();
        GradedVectorField::from_components(x, xi).expect("shape")
    }
}

/// Splits an even field of the form `Σ g_k ∂/∂xi^k`, `g_k` polynomial.
fn odd_directions(v: &GradedVectorField) -> Vec<Poly> {
    assert!(v.x_components().iter().all(SuperFunction::is_zero));
    v.xi_components()
        .iter()
        .map(|f| {
            assert!(f.terms().all(|(s, _)| s.is_empty()));
            f.body()
        })
        .collect()
}

/// `(L_Q F)(∂i, ∂j) = [Q, F(∂i, ∂j)] - F([Q, ∂i], ∂j) - F(∂i, [Q, ∂j])`,
/// computed with graded brackets and returned in value form.
pub fn lie_derivative_tensor(s: &Section, f: &DegreeZeroTensor) -> Cocycle {
    let (n, m) = (s.n(), s.m());
    assert_eq!((f.n, f.m), (n, m));
    let q = GradedVectorField::interior_product(s);
    let q_on_partials: Vec<Vec<Poly>> = (0..n)
        .map(|i| odd_directions(&q.bracket(&GradedVectorField::partial_x(n, m, i)).expect("shape")))
        .collect();
    let mut out = Cocycle::zero(n, m);
    for (i, j) in pairs(n) {
        let mut v = q.bracket(&f.on_even(i, j)).expect("shape");
        for (a, g) in q_on_partials[i].iter().enumerate() {
            v = &v - &f.on_mixed(a, j).mul_left(&SuperFunction::from_poly(m, g.clone()));
        }
        for (a, g) in q_on_partials[j].iter().enumerate() {
            v = &v - &f.on_mixed(a, i).mul_left(&SuperFunction::from_poly(m, g.clone()));
        }
        let section = v.as_contraction().expect("degree +1 part of a degree-0 tensor");
        for k in 0..m {
            out.set(i, j, k, section.component(k).clone());
        }
    }
    out
}
