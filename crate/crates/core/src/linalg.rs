//! Exact linear algebra over the rationals.
//!
//! Small dense matrices (Jacobians, frame changes) go through fraction-free
//! elimination or a plain rational RREF. The large sparse systems produced by
//! certificate and jet searches go through [`SparseSystem`], an incremental
//! echelon form keyed by pivot column.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ring::Rational;

/// Rank of a dense rational matrix by fraction-free (Bareiss) elimination.
///
/// Each row is first scaled by the lcm of its denominators, so the
/// elimination runs over the integers and every intermediate division is exact.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), width, "ragged matrix");
            let l = r
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            r.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    let height = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..height {
            for j in c + 1..width {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let height = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..height {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..width {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Inverse of a square rational matrix, if it is invertible.
pub fn inverse(rows: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "matrix must be square");
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let (reduced, pivots) = rref(&augmented);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Dense matrix-vector product.
pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// A sparse row: strictly increasing column indices with nonzero values.
type Row = Vec<(usize, Rational)>;

const RHS: usize = usize::MAX;

/// Outcome of [`SparseSystem::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// A particular solution; unknowns absent from the map are zero.
    Feasible(BTreeMap<usize, Rational>),
    Infeasible,
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Solution::Feasible(_))
    }
}

/// Incrementally built linear system `A x = b` over the rationals.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    pivots: BTreeMap<usize, Row>,
    inconsistent: bool,
}

impl SparseSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the equation `sum(coeff * x_col) = rhs`. Repeated columns are summed.
    pub fn add_equation(&mut self, terms: impl IntoIterator<Item = (usize, Rational)>, rhs: Rational) {
        if self.inconsistent {
            return;
        }
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in terms {
            assert!(c != RHS, "column index reserved");
            *acc.entry(c).or_insert_with(Rational::zero) += v;
        }
        if !rhs.is_zero() {
            acc.insert(RHS, rhs);
        }
        let row: Row = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.insert(row);
    }

    fn insert(&mut self, mut row: Row) {
        loop {
            let Some((lead, lead_val)) = row.first().cloned() else {
                return;
            };
            if lead == RHS {
                self.inconsistent = true;
                return;
            }
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    row = axpy(&row, &lead_val, pivot);
                }
                None => {
                    let inv = lead_val.recip();
                    for (_, v) in row.iter_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn solve(&self) -> Solution {
        if self.inconsistent {
            return Solution::Infeasible;
        }
        let mut x: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&col, row) in self.pivots.iter().rev() {
            let mut value = Rational::zero();
            for (c, v) in row.iter().skip(1) {
                if *c == RHS {
                    value += v;
                } else if let Some(xc) = x.get(c) {
                    value -= v * xc;
                }
            }
            if !value.is_zero() {
                x.insert(col, value);
            }
        }
        Solution::Feasible(x)
    }
}

/// `row - factor * pivot`, where `pivot` has leading coefficient one.
fn axpy(row: &Row, factor: &Rational, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(RHS, |e| e.0);
        let cj = pivot.get(j).map_or(RHS, |e| e.0);
        let take_row = i < row.len() && (j >= pivot.len() || ci < cj);
        let take_piv = j < pivot.len() && (i >= row.len() || cj < ci);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((cj, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - factor * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&m(&[&[1, 0], &[0, 0]])), 1);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
        let q = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(3, 2), int(1)]];
        assert_eq!(rank(&q), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn sparse_feasible_and_infeasible() {
        // x0 + x1 = 3, x1 = 1
        let mut s = SparseSystem::new();
        s.add_equation([(0, int(1)), (1, int(1))], int(3));
        s.add_equation([(1, int(1))], int(1));
        let Solution::Feasible(x) = s.solve() else { panic!() };
        assert_eq!(x.get(&0), Some(&int(2)));
        assert_eq!(x.get(&1), Some(&int(1)));

        // x0 + x1 = 1, 2x0 + 2x1 = 3
        let mut t = SparseSystem::new();
        t.add_equation([(0, int(1)), (1, int(1))], int(1));
        t.add_equation([(0, int(2)), (1, int(2))], int(3));
        assert_eq!(t.solve(), Solution::Infeasible);

        // 0 = 0 and duplicate columns
        let mut u = SparseSystem::new();
        u.add_equation([(4, int(1)), (4, int(1))], int(4));
        u.add_equation(core::iter::empty(), int(0));
        let Solution::Feasible(x) = u.solve() else { panic!() };
        assert_eq!(x.get(&4), Some(&int(2)));
    }
}
