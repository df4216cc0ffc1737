use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::cocycle::Cocycle;
use super::operators::{Operator, Operators};
use crate::linalg::{Solution, SparseSystem};
use crate::ring::{Monomial, Poly, Rational};

/// A column of one of the three operator matrices.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnRef {
    pub op: Operator,
    pub col: usize,
}

/// Polynomial coefficients `f_c` with `Σ_c M_c f_c` equal to the cocycle's
/// coefficient vector. Columns absent from the map have coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub degree: u32,
    pub coefficients: BTreeMap<ColumnRef, Poly>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum JetOutcome {
    Feasible,
    Infeasible,
}

struct Column {
    at: ColumnRef,
    entries: Vec<(usize, Poly)>,
}

fn nonzero_columns(ops: &Operators, mut transform: impl FnMut(&Poly) -> Poly) -> Vec<Column> {
    let mut out = Vec::new();
    for matrix in ops.iter() {
        for c in 0..matrix.ncols() {
            let entries: Vec<(usize, Poly)> = (0..matrix.nrows())
                .filter(|&r| !matrix.entry(r, c).is_zero())
                .map(|r| (r, transform(matrix.entry(r, c))))
                .filter(|(_, p)| !p.is_zero())
                .collect();
            if !entries.is_empty() {
                out.push(Column {
                    at: ColumnRef { op: matrix.op(), col: c },
                    entries,
                });
            }
        }
    }
    out
}

/// Equates monomial coefficients of `Σ_c M_c f_c = target` with every `f_c`
/// of degree at most `degree`; with `truncate = Some(N)` only monomials of
/// degree at most `N` are compared.
fn solve_system(
    nvars: usize,
    columns: &[Column],
    target: &[Poly],
    degree: u32,
    truncate: Option<u32>,
) -> Option<BTreeMap<ColumnRef, Poly>> {
    let monos = Monomial::all_up_to(nvars, degree);
    let keep = |m: &Monomial| truncate.is_none_or(|n| m.degree() <= n);
    let mut equations: BTreeMap<(usize, Monomial), (Vec<(usize, Rational)>, Rational)> = BTreeMap::new();
    for (ci, col) in columns.iter().enumerate() {
        for (vi, nu) in monos.iter().enumerate() {
            let unknown = ci * monos.len() + vi;
            for (r, entry) in &col.entries {
                for (mu, coeff) in entry.terms() {
                    let prod = mu.mul(nu);
                    if keep(&prod) {
                        equations
                            .entry((*r, prod))
                            .or_insert_with(|| (Vec::new(), Rational::zero()))
                            .0
                            .push((unknown, coeff.clone()));
                    }
                }
            }
        }
    }
    for (r, p) in target.iter().enumerate() {
        for (mu, coeff) in p.terms() {
            if keep(mu) {
                equations
                    .entry((r, mu.clone()))
                    .or_insert_with(|| (Vec::new(), Rational::zero()))
                    .1 = coeff.clone();
            }
        }
    }
    let mut system = SparseSystem::new();
    // equations carrying a right-hand side first: inconsistency shows up early
    let (with_rhs, homogeneous): (Vec<_>, Vec<_>) =
        equations.into_values().partition(|(_, rhs)| !rhs.is_zero());
    for (terms, rhs) in with_rhs.into_iter().chain(homogeneous) {
        system.add_equation(terms, rhs);
        if !system.is_consistent() {
            return None;
        }
    }
    let Solution::Feasible(x) = system.solve() else {
        return None;
    };
    let mut out: BTreeMap<ColumnRef, Poly> = BTreeMap::new();
    for (unknown, value) in x {
        let (ci, vi) = (unknown / monos.len(), unknown % monos.len());
        out.entry(columns[ci].at)
            .or_insert_with(|| Poly::zero(nvars))
            .add_term(monos[vi].clone(), value);
    }
    out.retain(|_, p| !p.is_zero());
    Some(out)
}

/// Looks for polynomial coefficients of degree at most `degree_bound`
/// expressing the cocycle through `d1`, `d2`, `d3`. A result proves that
/// the class vanishes; `None` proves nothing.
pub fn certificate_search(cocycle: &Cocycle, ops: &Operators, degree_bound: u32) -> Option<Certificate> {
    let target = cocycle.coefficient_vector();
    if target.iter().all(Poly::is_zero) {
        return Some(Certificate {
            degree: 0,
            coefficients: BTreeMap::new(),
        });
    }
    let columns = nonzero_columns(ops, Poly::clone);
    solve_system(cocycle.n(), &columns, &target, degree_bound, None).map(|coefficients| Certificate {
        degree: degree_bound,
        coefficients,
    })
}

/// Decides whether order-`order` jets at `point` of coefficient functions
/// can match the order-`order` jet of the cocycle. Infeasibility proves the
/// class does not vanish.
pub fn jet_obstruction(
    cocycle: &Cocycle,
    ops: &Operators,
    point: &[Rational],
    order: u32,
) -> JetOutcome {
    let n = cocycle.n();
    assert_eq!(point.len(), n, "jet point has the wrong length");
    let jet = |p: &Poly| p.shift(point).expect("length checked").truncate(order);
    let target: Vec<Poly> = cocycle.coefficient_vector().iter().map(jet).collect();
    if target.iter().all(Poly::is_zero) {
        return JetOutcome::Feasible;
    }
    let columns = nonzero_columns(ops, jet);
    match solve_system(n, &columns, &target, order, Some(order)) {
        Some(_) => JetOutcome::Feasible,
        None => JetOutcome::Infeasible,
    }
}

/// `Σ_c M_c f_c`, row by row.
pub fn apply_certificate(ops: &Operators, n: usize, coefficients: &BTreeMap<ColumnRef, Poly>) -> Vec<Poly> {
    let nrows = ops.d1.nrows();
    let mut out: Vec<Poly> = (0..nrows).map(|_| Poly::zero(n)).collect();
    for (at, f) in coefficients {
        let matrix = ops.get(at.op);
        for (r, slot) in out.iter_mut().enumerate() {
            let e = matrix.entry(r, at.col);
            if !e.is_zero() {
                *slot = &*slot + &(e * f);
            }
        }
    }
    out
}

/// Multiplies the certificate through the matrices and compares with the
/// cocycle exactly.
pub fn replay_certificate(cocycle: &Cocycle, ops: &Operators, certificate: &Certificate) -> bool {
    let within_degree = certificate
        .coefficients
        .values()
        .all(|p| p.degree().is_none_or(|d| d <= certificate.degree));
    within_degree
        && apply_certificate(ops, cocycle.n(), &certificate.coefficients) == cocycle.coefficient_vector()
}
