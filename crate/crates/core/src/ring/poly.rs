use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{Monomial, Rational};

/// Structural misuse of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("variable lists differ: {left} vs {right} variables")]
    Arity { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    Index { index: usize, nvars: usize },
    #[error("expected {expected} values, found {found}")]
    Length { expected: usize, found: usize },
}

/// A polynomial in `nvars` commuting variables with rational coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    /// The coordinate function `x_i`, zero-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Rational::one(), Monomial::var(nvars, i))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Poly::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Total degree; `None` stands for the degree of zero (minus infinity).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Whether the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.constant_term()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Poly) -> Result<(), RingError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(RingError::Arity {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Partial derivative in the zero-based variable `i`.
    pub fn partial(&self, i: usize) -> Result<Poly, RingError> {
        if i >= self.nvars {
            return Err(RingError::Index {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(
                Monomial::from_exponents(exps),
                c * Rational::from_integer(e.into()),
            );
        }
        Ok(out)
    }

    /// Partial derivative, panicking on an out-of-range index.
    pub fn d(&self, i: usize) -> Poly {
        self.partial(i).expect("variable index in range")
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, RingError> {
        if point.len() != self.nvars {
            return Err(RingError::Length {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    v *= x;
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes `x_i -> maps[i]`. All maps must share one arity; with no
    /// variables the polynomial is returned unchanged.
    pub fn compose(&self, maps: &[Poly]) -> Result<Poly, RingError> {
        if maps.len() != self.nvars {
            return Err(RingError::Length {
                expected: self.nvars,
                found: maps.len(),
            });
        }
        let Some(first) = maps.first() else {
            return Ok(self.clone());
        };
        let target = first.nvars;
        for m in maps {
            first.check(m)?;
        }
        // powers[i][e] = maps[i]^e, built lazily up to the needed exponent
        let mut powers: Vec<Vec<Poly>> = maps.iter().map(|_| Vec::new()).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                if table.is_empty() {
                    table.push(Poly::one(target));
                }
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &maps[i];
                    table.push(next);
                }
                acc = &acc * &table[e as usize];
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Re-reads the polynomial in `target_nvars` variables, sending `x_i` to
    /// `x_{offset + i}`.
    pub fn embed(&self, target_nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= target_nvars);
        let mut out = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut exps = alloc::vec![0u32; target_nvars];
            exps[offset..offset + self.nvars].copy_from_slice(m.exponents());
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        out
    }

    /// Taylor re-centring: the polynomial `q` with `q(y) = p(y + point)`.
    pub fn shift(&self, point: &[Rational]) -> Result<Poly, RingError> {
        let maps: Vec<Poly> = point
            .iter()
            .enumerate()
            .map(|(i, c)| &Poly::var(point.len(), i) + &Poly::constant(point.len(), c.clone()))
            .collect();
        if point.is_empty() {
            if self.nvars != 0 {
                return Err(RingError::Length {
                    expected: self.nvars,
                    found: 0,
                });
            }
            return Ok(self.clone());
        }
        self.compose(&maps)
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Formats with the given variable names.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> PolyDisplay<'a, S> {
        PolyDisplay { poly: self, names }
    }

    pub fn to_string_with<S: AsRef<str>>(&self, names: &[S]) -> String {
        format!("{}", self.display(names))
    }
}

pub struct PolyDisplay<'a, S> {
    poly: &'a Poly,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut first = true;
            if !magnitude.is_one() || m.is_one() {
                write!(f, "{magnitude}")?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                match self.names.get(i) {
                    Some(name) => f.write_str(name.as_ref())?,
                    None => write!(f, "x{}", i + 1)?,
                }
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [&str; 0] = [];
        self.display(&names).fmt(f)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomials over the same variables")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
