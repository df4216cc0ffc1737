use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use crate::ring::{Poly, Rational};

/// A set of odd generator indices `{a1 < ... < ap}`, i.e. the monomial
/// `xi^a1 ... xi^ap`. Stored as a bit mask; at most 32 odd generators.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XiSet(u32);

impl XiSet {
    pub const EMPTY: XiSet = XiSet(0);

    pub fn single(k: usize) -> XiSet {
        assert!(k < 32);
        XiSet(1 << k)
    }

    pub fn from_indices(indices: &[usize]) -> XiSet {
        indices.iter().fold(XiSet::EMPTY, |acc, &k| XiSet(acc.0 | (1 << k)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 & (1 << k) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&k| self.contains(k))
    }

    /// Product `xi^S * xi^T` as a sign and a set, or `None` when it vanishes.
    pub fn mul(self, other: XiSet) -> Option<(bool, XiSet)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // one transposition per pair (a in S, b in T) with a > b
        let mut swaps = 0u32;
        for b in other.indices() {
            swaps += (self.0 & !((2u32 << b).wrapping_sub(1))).count_ones();
        }
        Some((swaps % 2 == 1, XiSet(self.0 | other.0)))
    }

    /// Left derivative by `xi^k`: sign and remaining set.
    pub fn remove(self, k: usize) -> Option<(bool, XiSet)> {
        if !self.contains(k) {
            return None;
        }
        let before = (self.0 & ((1u32 << k) - 1)).count_ones();
        Some((before % 2 == 1, XiSet(self.0 & !(1 << k))))
    }

    /// Every subset of `{0..m}`.
    pub fn all(m: usize) -> impl Iterator<Item = XiSet> {
        (0u32..(1u32 << m)).map(XiSet)
    }
}

/// Element of `Poly[x1..xn] ⊗ Λ[xi1..xim]`: a function on `E[-1]`.
///
/// Each `x` has degree 0 and each `xi` degree -1, so a term `p * xi^S` is
/// homogeneous of degree `-|S|`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperFunction {
    n: usize,
    m: usize,
    terms: BTreeMap<XiSet, Poly>,
}

impl SuperFunction {
    pub fn zero(n: usize, m: usize) -> Self {
        SuperFunction {
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly(m: usize, p: Poly) -> Self {
        let mut f = SuperFunction::zero(p.nvars(), m);
        f.add_term(XiSet::EMPTY, p);
        f
    }

    pub fn one(n: usize, m: usize) -> Self {
        Self::from_poly(m, Poly::one(n))
    }

    /// The odd coordinate `xi^k`, zero-based.
    pub fn xi(n: usize, m: usize, k: usize) -> Self {
        assert!(k < m);
        Self::monomial(m, XiSet::single(k), Poly::one(n))
    }

    /// The even coordinate `x^i`, zero-based.
    pub fn x(n: usize, m: usize, i: usize) -> Self {
        Self::from_poly(m, Poly::var(n, i))
    }

    pub fn monomial(m: usize, set: XiSet, coeff: Poly) -> Self {
        assert!(set.bits() >> m == 0, "odd index out of range");
        let mut f = SuperFunction::zero(coeff.nvars(), m);
        f.add_term(set, coeff);
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XiSet, &Poly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, set: XiSet) -> Poly {
        self.terms.get(&set).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    /// The degree-0 part, i.e. the coefficient of the empty odd monomial.
    pub fn body(&self) -> Poly {
        self.coeff(XiSet::EMPTY)
    }

    pub fn add_term(&mut self, set: XiSet, p: Poly) {
        assert_eq!(p.nvars(), self.n);
        if p.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(set) {
            Entry::Vacant(v) => {
                v.insert(p);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &p;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn same_shape(&self, other: &SuperFunction) -> bool {
        self.n == other.n && self.m == other.m
    }

    /// Degrees carried by nonzero terms, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self.terms.keys().map(|s| -(s.len() as i32)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// `Some(d)` if every term has degree `d`; zero is homogeneous of every
    /// degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn homogeneous_part(&self, degree: i32) -> SuperFunction {
        SuperFunction {
            n: self.n,
            m: self.m,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| -(s.len() as i32) == degree)
                .map(|(s, p)| (*s, p.clone()))
                .collect(),
        }
    }

    /// Multiplies every coefficient by an even polynomial.
    pub fn scale_poly(&self, p: &Poly) -> SuperFunction {
        let mut out = SuperFunction::zero(self.n, self.m);
        for (s, c) in &self.terms {
            out.add_term(*s, c * p);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SuperFunction {
        let mut out = SuperFunction::zero(self.n, self.m);
        for (s, p) in &self.terms {
            out.add_term(*s, p.scale(c));
        }
        out
    }

    /// `∂/∂x^i`, acting on the polynomial coefficients.
    pub fn d_x(&self, i: usize) -> SuperFunction {
        let mut out = SuperFunction::zero(self.n, self.m);
        for (s, p) in &self.terms {
            out.add_term(*s, p.d(i));
        }
        out
    }

    /// The odd left derivation `∂/∂xi^k`.
    pub fn d_xi(&self, k: usize) -> SuperFunction {
        let mut out = SuperFunction::zero(self.n, self.m);
        for (s, p) in &self.terms {
            if let Some((negative, rest)) = s.remove(k) {
                out.add_term(rest, if negative { -p } else { p.clone() });
            }
        }
        out
    }

    /// Applies a substitution to every polynomial coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Poly) -> Poly) -> SuperFunction {
        let mut out = SuperFunction::zero(self.n, self.m);
        for (s, p) in &self.terms {
            out.add_term(*s, f(p));
        }
        out
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> SuperFunctionDisplay<'a, S> {
        SuperFunctionDisplay { f: self, names }
    }
}

pub struct SuperFunctionDisplay<'a, S> {
    f: &'a SuperFunction,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for SuperFunctionDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.is_zero() {
            return f.write_str("0");
        }
        for (idx, (s, p)) in self.f.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", p.display(self.names))?;
            for k in s.indices() {
                write!(f, "*xi{}", k + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [&str; 0] = [];
        write!(f, "SuperFunction[{},{}]({})", self.n, self.m, self.display(&names))
    }
}

impl Add<&SuperFunction> for &SuperFunction {
    type Output = SuperFunction;
    fn add(self, rhs: &SuperFunction) -> SuperFunction {
        assert!(self.same_shape(rhs), "superfunction shape mismatch");
        let mut out = self.clone();
        for (s, p) in &rhs.terms {
            out.add_term(*s, p.clone());
        }
        out
    }
}

impl Sub<&SuperFunction> for &SuperFunction {
    type Output = SuperFunction;
    fn sub(self, rhs: &SuperFunction) -> SuperFunction {
        self + &(-rhs)
    }
}

impl Neg for &SuperFunction {
    type Output = SuperFunction;
    fn neg(self) -> SuperFunction {
        self.scale(&-Rational::one())
    }
}

impl Mul<&SuperFunction> for &SuperFunction {
    type Output = SuperFunction;
    fn mul(self, rhs: &SuperFunction) -> SuperFunction {
        assert!(self.same_shape(rhs), "superfunction shape mismatch");
        let mut out = SuperFunction::zero(self.n, self.m);
        for (sa, pa) in &self.terms {
            for (sb, pb) in &rhs.terms {
                if let Some((negative, set)) = sa.mul(*sb) {
                    let prod = pa * pb;
                    out.add_term(set, if negative { -prod } else { prod });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommuting_generators() {
        let (n, m) = (1, 3);
        let a = SuperFunction::xi(n, m, 0);
        let b = SuperFunction::xi(n, m, 1);
        assert_eq!(&a * &b, -&(&b * &a));
        assert!((&a * &a).is_zero());
        let abc = &(&a * &b) * &SuperFunction::xi(n, m, 2);
        let cba = &(&SuperFunction::xi(n, m, 2) * &b) * &a;
        assert_eq!(abc, -&cba);
    }

    #[test]
    fn odd_derivative_signs() {
        let (n, m) = (1, 2);
        let x1x2 = &SuperFunction::xi(n, m, 0) * &SuperFunction::xi(n, m, 1);
        assert_eq!(x1x2.d_xi(0), SuperFunction::xi(n, m, 1));
        assert_eq!(x1x2.d_xi(1), -&SuperFunction::xi(n, m, 0));
    }

    #[test]
    fn degrees() {
        let (n, m) = (2, 2);
        let f = &SuperFunction::x(n, m, 0) + &SuperFunction::xi(n, m, 1);
        assert_eq!(f.degrees(), alloc::vec![-1, 0]);
        assert_eq!(f.homogeneous_degree(), None);
        assert_eq!(f.homogeneous_part(-1), SuperFunction::xi(n, m, 1));
    }
}
