use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::{GradedError, SuperFunction};
use crate::ring::{Poly, Rational};

/// A section `s = s^1 e_1 + ... + s^m e_m` of the trivial bundle over `R^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Section {
    n: usize,
    components: Vec<Poly>,
}

impl Section {
    pub fn new(n: usize, components: Vec<Poly>) -> Result<Self, GradedError> {
        if let Some(p) = components.iter().find(|p| p.nvars() != n) {
            return Err(GradedError::Dimension {
                expected: (n, components.len()),
                found: (p.nvars(), components.len()),
            });
        }
        Ok(Section { n, components })
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Section {
            n,
            components: (0..m).map(|_| Poly::zero(n)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &Poly {
        &self.components[k]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Largest total degree among the components, `None` for the zero section.
    pub fn max_degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Poly::degree).max()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>, GradedError> {
        if point.len() != self.n {
            return Err(GradedError::PointLength {
                expected: self.n,
                found: point.len(),
            });
        }
        Ok(self
            .components
            .iter()
            .map(|p| p.evaluate(point).expect("length checked"))
            .collect())
    }

    pub fn vanishes_at(&self, point: &[Rational]) -> Result<bool, GradedError> {
        Ok(self.evaluate(point)?.iter().all(Zero::is_zero))
    }

    /// Jacobian `[∂_i s^k]` as an `m x n` matrix of polynomials.
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        self.components
            .iter()
            .map(|p| (0..self.n).map(|i| p.d(i)).collect())
            .collect()
    }

    /// First derivative `∂_i s`.
    pub fn d(&self, i: usize) -> Section {
        Section {
            n: self.n,
            components: self.components.iter().map(|p| p.d(i)).collect(),
        }
    }

    pub fn map(&self, f: impl FnMut(&Poly) -> Poly) -> Section {
        Section {
            n: self.n,
            components: self.components.iter().map(f).collect(),
        }
    }
}

/// A derivation of the superfunction algebra, stored by its values on the
/// generators: `x_components[i] = V(x^i)` and `xi_components[k] = V(xi^k)`.
///
/// Components may mix degrees; [`GradedVectorField::homogeneous_part`]
/// extracts a single degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedVectorField {
    n: usize,
    m: usize,
    x: Vec<SuperFunction>,
    xi: Vec<SuperFunction>,
}

impl GradedVectorField {
    pub fn zero(n: usize, m: usize) -> Self {
        GradedVectorField {
            n,
            m,
            x: (0..n).map(|_| SuperFunction::zero(n, m)).collect(),
            xi: (0..m).map(|_| SuperFunction::zero(n, m)).collect(),
        }
    }

    pub fn from_components(
        x: Vec<SuperFunction>,
        xi: Vec<SuperFunction>,
    ) -> Result<Self, GradedError> {
        let n = x.len();
        let m = xi.len();
        for f in x.iter().chain(&xi) {
            if f.n() != n || f.m() != m {
                return Err(GradedError::Dimension {
                    expected: (n, m),
                    found: (f.n(), f.m()),
                });
            }
        }
        Ok(GradedVectorField { n, m, x, xi })
    }

    /// `∂/∂x^i`.
    pub fn partial_x(n: usize, m: usize, i: usize) -> Self {
        let mut v = Self::zero(n, m);
        v.x[i] = SuperFunction::one(n, m);
        v
    }

    /// `∂/∂xi^k`, which is also the contraction `ι_{e_k}`.
    pub fn partial_xi(n: usize, m: usize, k: usize) -> Self {
        let mut v = Self::zero(n, m);
        v.xi[k] = SuperFunction::one(n, m);
        v
    }

    /// The contraction `ι_s`: degree +1, `xi^k -> s^k`, `x^i -> 0`.
    pub fn interior_product(s: &Section) -> Self {
        let (n, m) = (s.n(), s.m());
        let mut v = Self::zero(n, m);
        for (k, p) in s.components().iter().enumerate() {
            v.xi[k] = SuperFunction::from_poly(m, p.clone());
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x_components(&self) -> &[SuperFunction] {
        &self.x
    }

    pub fn xi_components(&self) -> &[SuperFunction] {
        &self.xi
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.xi).all(SuperFunction::is_zero)
    }

    fn check(&self, n: usize, m: usize) -> Result<(), GradedError> {
        if self.n == n && self.m == m {
            Ok(())
        } else {
            Err(GradedError::Dimension {
                expected: (self.n, self.m),
                found: (n, m),
            })
        }
    }

    /// Degree-`d` layer: `x`-components of degree `d`, `xi`-components of
    /// degree `d - 1`.
    pub fn homogeneous_part(&self, d: i32) -> GradedVectorField {
        GradedVectorField {
            n: self.n,
            m: self.m,
            x: self.x.iter().map(|f| f.homogeneous_part(d)).collect(),
            xi: self.xi.iter().map(|f| f.homogeneous_part(d - 1)).collect(),
        }
    }

    /// Degrees of the nonzero homogeneous layers, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self
            .x
            .iter()
            .flat_map(|f| f.degrees())
            .chain(self.xi.iter().flat_map(|f| f.degrees().into_iter().map(|d| d + 1)))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn homogeneous_degree(&self) -> Option<i32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Nonzero homogeneous layers in ascending degree.
    pub fn layers(&self) -> Vec<(i32, GradedVectorField)> {
        self.degrees()
            .into_iter()
            .map(|d| (d, self.homogeneous_part(d)))
            .collect()
    }

    pub fn apply(&self, f: &SuperFunction) -> Result<SuperFunction, GradedError> {
        self.check(f.n(), f.m())?;
        Ok(self.apply_unchecked(f))
    }

    fn apply_unchecked(&self, f: &SuperFunction) -> SuperFunction {
        let mut out = SuperFunction::zero(self.n, self.m);
        for (i, c) in self.x.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &f.d_x(i));
            }
        }
        for (k, c) in self.xi.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &f.d_xi(k));
            }
        }
        out
    }

    /// Graded commutator `[X, Y] = X∘Y - (-1)^{|X||Y|} Y∘X`, extended
    /// bilinearly over homogeneous layers.
    pub fn bracket(&self, other: &GradedVectorField) -> Result<GradedVectorField, GradedError> {
        self.check(other.n, other.m)?;
        let mut out = GradedVectorField::zero(self.n, self.m);
        for (dx, x) in self.layers() {
            for (dy, y) in other.layers() {
                let odd = (dx * dy).rem_euclid(2) == 1;
                let comp = |a: &SuperFunction, b: &SuperFunction| {
                    let xy = x.apply_unchecked(b);
                    let yx = y.apply_unchecked(a);
                    if odd {
                        &xy + &yx
                    } else {
                        &xy - &yx
                    }
                };
                for i in 0..self.n {
                    out.x[i] = &out.x[i] + &comp(&x.x[i], &y.x[i]);
                }
                for k in 0..self.m {
                    out.xi[k] = &out.xi[k] + &comp(&x.xi[k], &y.xi[k]);
                }
            }
        }
        Ok(out)
    }

    /// Left multiplication `f·V`.
    pub fn mul_left(&self, f: &SuperFunction) -> GradedVectorField {
        GradedVectorField {
            n: self.n,
            m: self.m,
            x: self.x.iter().map(|c| f * c).collect(),
            xi: self.xi.iter().map(|c| f * c).collect(),
        }
    }

    /// Reads a degree +1 field `Σ s^k ∂/∂xi^k` with polynomial coefficients
    /// back as the section `s`; `None` if the field has any other component.
    pub fn as_contraction(&self) -> Option<Section> {
        if self.x.iter().any(|f| !f.is_zero()) {
            return None;
        }
        let mut comps = Vec::with_capacity(self.m);
        for f in &self.xi {
            if f.terms().any(|(s, _)| !s.is_empty()) {
                return None;
            }
            comps.push(f.body());
        }
        Some(Section::new(self.n, comps).expect("shape preserved"))
    }
}

impl Add<&GradedVectorField> for &GradedVectorField {
    type Output = GradedVectorField;
    fn add(self, rhs: &GradedVectorField) -> GradedVectorField {
        assert!(self.n == rhs.n && self.m == rhs.m, "vector field shape mismatch");
        GradedVectorField {
            n: self.n,
            m: self.m,
            x: self.x.iter().zip(&rhs.x).map(|(a, b)| a + b).collect(),
            xi: self.xi.iter().zip(&rhs.xi).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&GradedVectorField> for &GradedVectorField {
    type Output = GradedVectorField;
    fn sub(self, rhs: &GradedVectorField) -> GradedVectorField {
        self + &(-rhs)
    }
}

impl Neg for &GradedVectorField {
    type Output = GradedVectorField;
    fn neg(self) -> GradedVectorField {
        GradedVectorField {
            n: self.n,
            m: self.m,
            x: self.x.iter().map(|a| -a).collect(),
            xi: self.xi.iter().map(|a| -a).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;
    use alloc::vec;

    const V: [&str; 2] = ["x1", "x2"];

    fn section(parts: &[&str]) -> Section {
        Section::new(2, parts.iter().map(|p| parse_poly(p, &V).unwrap()).collect()).unwrap()
    }

    #[test]
    fn odd_basis_fields_remove_slots() {
        let (n, m) = (2, 2);
        let f = &SuperFunction::xi(n, m, 0) * &SuperFunction::xi(n, m, 1);
        let e1 = GradedVectorField::partial_xi(n, m, 0);
        let e2 = GradedVectorField::partial_xi(n, m, 1);
        assert_eq!(e1.apply(&f).unwrap(), SuperFunction::xi(n, m, 1));
        assert_eq!(e2.apply(&f).unwrap(), -&SuperFunction::xi(n, m, 0));
    }

    #[test]
    fn interior_product_on_generators() {
        let s = section(&["x1", "x1*x2"]);
        let q = GradedVectorField::interior_product(&s);
        assert_eq!(q.homogeneous_degree(), Some(1));
        for k in 0..2 {
            let v = q.apply(&SuperFunction::xi(2, 2, k)).unwrap();
            assert_eq!(v, SuperFunction::from_poly(2, s.component(k).clone()));
        }
        assert!(q.apply(&SuperFunction::x(2, 2, 0)).unwrap().is_zero());
        assert!(GradedVectorField::interior_product(&Section::zero(2, 2)).is_zero());
        let unit = section(&["1", "x2"]);
        let qu = GradedVectorField::interior_product(&unit);
        assert_eq!(qu.apply(&SuperFunction::xi(2, 2, 0)).unwrap(), SuperFunction::one(2, 2));
    }

    #[test]
    fn q_squares_to_zero() {
        let s = section(&["x1^2 - x2", "3*x1*x2 + 1"]);
        let q = GradedVectorField::interior_product(&s);
        assert!(q.bracket(&q).unwrap().is_zero());
    }

    #[test]
    fn flat_coordinate_fields_commute() {
        let a = GradedVectorField::partial_x(2, 1, 0);
        let b = GradedVectorField::partial_x(2, 1, 1);
        assert!(a.bracket(&b).unwrap().is_zero());
        // [∂_1, ι_a] with constant a is zero
        let c = GradedVectorField::interior_product(&Section::new(2, vec![Poly::one(2)]).unwrap());
        assert!(a.bracket(&c).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        let a = GradedVectorField::partial_x(2, 1, 0);
        let b = GradedVectorField::partial_x(2, 2, 0);
        assert!(a.bracket(&b).is_err());
        assert!(a.apply(&SuperFunction::one(3, 1)).is_err());
    }

    #[test]
    fn contraction_readback() {
        let s = section(&["x1", "x2^2"]);
        let q = GradedVectorField::interior_product(&s);
        assert_eq!(q.as_contraction(), Some(s));
        assert_eq!(GradedVectorField::partial_x(2, 2, 0).as_contraction(), None);
    }
}
