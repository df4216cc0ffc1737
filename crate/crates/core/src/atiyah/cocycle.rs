use alloc::vec::Vec;

use super::operators::{pairs, row_index, row_labels, RowLabel};
use super::AtiyahError;
use crate::connection::ConnectionTriple;
use crate::graded::{GradedVectorField, Section};
use crate::ring::{Poly, Rational};

/// A symmetric `E`-valued bilinear form on `TM`, stored by its values
/// `At(∂i, ∂j) = Σ_k entry(i, j, k) e_k` for `i <= j`.
///
/// Entries are kept in row order (fiber-major, then pairs). The operator
/// matrices act on `⊙`-coefficients instead; see
/// [`Cocycle::coefficient_vector`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocycle {
    n: usize,
    m: usize,
    entries: Vec<Poly>,
}

impl Cocycle {
    pub fn zero(n: usize, m: usize) -> Self {
        Cocycle {
            n,
            m,
            entries: (0..m * n * (n + 1) / 2).map(|_| Poly::zero(n)).collect(),
        }
    }

    /// Builds a cocycle from values indexed by `(i, j, k)` with `i <= j`.
    pub fn from_fn(n: usize, m: usize, mut f: impl FnMut(usize, usize, usize) -> Poly) -> Self {
        let entries = row_labels(n, m)
            .into_iter()
            .map(|RowLabel { k, i, j }| f(i, j, k))
            .collect();
        Cocycle { n, m, entries }
    }

    /// Values in row order.
    pub fn from_values(n: usize, m: usize, values: Vec<Poly>) -> Self {
        assert_eq!(values.len(), m * n * (n + 1) / 2);
        Cocycle {
            n,
            m,
            entries: values,
        }
    }

    /// Inverse of [`Cocycle::coefficient_vector`].
    pub fn from_coefficients(n: usize, m: usize, coeffs: Vec<Poly>) -> Self {
        let two = Rational::from_integer(2.into());
        let labels = row_labels(n, m);
        let entries = coeffs
            .into_iter()
            .zip(labels)
            .map(|(p, l)| if l.i == l.j { p.scale(&two) } else { p })
            .collect();
        Self::from_values(n, m, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Symmetric lookup.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.entries[row_index(self.n, i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, p: Poly) {
        let idx = row_index(self.n, i, j, k);
        self.entries[idx] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn values(&self) -> &[Poly] {
        &self.entries
    }

    pub fn labels(&self) -> Vec<RowLabel> {
        row_labels(self.n, self.m)
    }

    /// Coordinates in the basis `dx^i ⊙ dx^j ⊗ e_k` (`i <= j`), with
    /// `dx^i ⊙ dx^j = dx^i ⊗ dx^j + dx^j ⊗ dx^i`. Off-diagonal coefficients
    /// equal the values; diagonal ones are half of them.
    pub fn coefficient_vector(&self) -> Vec<Poly> {
        let half = Rational::new(1.into(), 2.into());
        self.labels()
            .into_iter()
            .zip(&self.entries)
            .map(|(l, p)| if l.i == l.j { p.scale(&half) } else { p.clone() })
            .collect()
    }

    pub fn sub(&self, other: &Cocycle) -> Cocycle {
        assert_eq!((self.n, self.m), (other.n, other.m));
        Cocycle {
            n: self.n,
            m: self.m,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn map(&self, f: impl FnMut(&Poly) -> Poly) -> Cocycle {
        Cocycle {
            n: self.n,
            m: self.m,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

fn check(connection: &ConnectionTriple, s: &Section) -> Result<(), AtiyahError> {
    if connection.n() != s.n() || connection.m() != s.m() {
        return Err(AtiyahError::Dimension);
    }
    let violations = connection.validate();
    if !violations.is_empty() {
        return Err(AtiyahError::InvalidConnection(violations));
    }
    Ok(())
}

/// `∇_i ∇_j s - ∇_{∇_i ∂j} s + β(∂i, ∂j) s`, averaged over `(i, j)` and `(j, i)`.
pub fn cocycle_closed_form(s: &Section, connection: &ConnectionTriple) -> Result<Cocycle, AtiyahError> {
    check(connection, s)?;
    let (n, m) = (s.n(), s.m());
    let first: Vec<Section> = (0..n)
        .map(|i| connection.covariant_derivative_section(i, s))
        .collect();
    let one_sided = |i: usize, j: usize| -> Vec<Poly> {
        let second = connection.covariant_derivative_section(i, &first[j]);
        (0..m)
            .map(|k| {
                let mut v = second.component(k).clone();
                for (c, fc) in first.iter().enumerate() {
                    let g = connection.gamma_m(i, j, c);
                    if !g.is_zero() {
                        v = &v - &(g * fc.component(k));
                    }
                }
                for a in 0..m {
                    let b = connection.beta(i, j, a, k);
                    if !b.is_zero() {
                        v = &v + &(b * s.component(a));
                    }
                }
                v
            })
            .collect()
    };
    let half = Rational::new(1.into(), 2.into());
    let mut out = Cocycle::zero(n, m);
    for (i, j) in pairs(n) {
        let a = one_sided(i, j);
        let b = if i == j { a.clone() } else { one_sided(j, i) };
        for k in 0..m {
            out.set(i, j, k, (&a[k] + &b[k]).scale(&half));
        }
    }
    Ok(out)
}

/// `At(X, Y) = [Q, ∇_X Y] - ∇_{[Q,X]} Y - (-1)^{|X|} ∇_X [Q, Y]` with
/// `Q = ι_s`, evaluated on horizontal lifts and read back as contractions.
pub fn cocycle_definitional(
    s: &Section,
    connection: &ConnectionTriple,
) -> Result<Cocycle, AtiyahError> {
    check(connection, s)?;
    let (n, m) = (s.n(), s.m());
    let q = GradedVectorField::interior_product(s);
    let at = |x: &GradedVectorField, y: &GradedVectorField, x_odd: bool| -> GradedVectorField {
        let nxy = connection.nabla_on_fields(x, y).expect("shapes checked");
        let t1 = q.bracket(&nxy).expect("shapes checked");
        let qx = q.bracket(x).expect("shapes checked");
        let t2 = connection.nabla_on_fields(&qx, y).expect("shapes checked");
        let qy = q.bracket(y).expect("shapes checked");
        let t3 = connection.nabla_on_fields(x, &qy).expect("shapes checked");
        let partial = &t1 - &t2;
        if x_odd {
            &partial + &t3
        } else {
            &partial - &t3
        }
    };
    let lifts: Vec<GradedVectorField> = (0..n).map(|i| connection.horizontal_lift(i)).collect();
    let iotas: Vec<GradedVectorField> = (0..m).map(|a| connection.contraction(a)).collect();

    let half = Rational::new(1.into(), 2.into());
    let mut out = Cocycle::zero(n, m);
    for (i, j) in pairs(n) {
        let read = |a: usize, b: usize| -> Result<Section, AtiyahError> {
            at(&lifts[a], &lifts[b], false)
                .as_contraction()
                .ok_or(AtiyahError::NotAContraction { i: a, j: b })
        };
        let a = read(i, j)?;
        let b = if i == j { a.clone() } else { read(j, i)? };
        for k in 0..m {
            out.set(i, j, k, (a.component(k) + b.component(k)).scale(&half));
        }
    }
    for (a, iota) in iotas.iter().enumerate() {
        for lift in &lifts {
            if !at(iota, lift, true).is_zero() {
                return Err(AtiyahError::OddPart { a });
            }
        }
        for other in &iotas {
            if !at(iota, other, true).is_zero() {
                return Err(AtiyahError::OddPart { a });
            }
        }
    }
    Ok(out)
}
