use alloc::vec::Vec;
use core::fmt;

use crate::graded::Section;
use crate::ring::Poly;

/// Unordered pairs `i <= j` of base indices in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // pairs (a, b) with a < i come first
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Row of every operator matrix: the coefficient of `dx^i ⊙ dx^j ⊗ e_k`.
/// Rows are fiber-major: all pairs for `e_1`, then all pairs for `e_2`, ...
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowLabel {
    pub k: usize,
    pub i: usize,
    pub j: usize,
}

pub fn row_labels(n: usize, m: usize) -> Vec<RowLabel> {
    let ps = pairs(n);
    (0..m)
        .flat_map(|k| ps.iter().map(move |&(i, j)| RowLabel { k, i, j }))
        .collect()
}

pub fn row_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    k * (n * (n + 1) / 2) + pair_index(n, i, j)
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dx{}.dx{}@e{}", self.i + 1, self.j + 1, self.k + 1)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    D1,
    D2,
    D3,
}

impl Operator {
    pub const ALL: [Operator; 3] = [Operator::D1, Operator::D2, Operator::D3];

    pub fn name(self) -> &'static str {
        match self {
            Operator::D1 => "d1",
            Operator::D2 => "d2",
            Operator::D3 => "d3",
        }
    }
}

/// Column of an operator matrix, i.e. one basis element of its domain.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ColLabel {
    /// `xi^l · dx^i ⊙ dx^j ⊗ e_k`
    D1 { l: usize, k: usize, i: usize, j: usize },
    /// `dxi^a ⊗ dx^b ⊗ e_c`
    D2 { a: usize, c: usize, b: usize },
    /// `dx^a ⊙ dx^b ⊗ ∂_c`
    D3 { a: usize, b: usize, c: usize },
}

impl fmt::Display for ColLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ColLabel::D1 { l, k, i, j } => {
                write!(f, "xi{}*dx{}.dx{}@e{}", l + 1, i + 1, j + 1, k + 1)
            }
            ColLabel::D2 { a, c, b } => write!(f, "dxi{}.dx{}@e{}", a + 1, b + 1, c + 1),
            ColLabel::D3 { a, b, c } => write!(f, "dx{}.dx{}@d{}", a + 1, b + 1, c + 1),
        }
    }
}

/// A matrix entry before substituting a concrete section.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Zero,
    /// `s^l`
    S(usize),
    /// `∂_p s^a`
    DS { a: usize, p: usize },
}

impl Symbol {
    pub fn instantiate(self, s: &Section, jac: &[Vec<Poly>]) -> Poly {
        match self {
            Symbol::Zero => Poly::zero(s.n()),
            Symbol::S(l) => s.component(l).clone(),
            Symbol::DS { a, p } => jac[a][p].clone(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Symbol::Zero => f.write_str("0"),
            Symbol::S(l) => write!(f, "s{}", l + 1),
            Symbol::DS { a, p } => write!(f, "d{} s{}", p + 1, a + 1),
        }
    }
}

/// One of `d1`, `d2`, `d3` as a labeled matrix over polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    op: Operator,
    n: usize,
    m: usize,
    rows: Vec<RowLabel>,
    cols: Vec<ColLabel>,
    symbols: Vec<Vec<Symbol>>,
    entries: Vec<Vec<Poly>>,
}

impl OperatorMatrix {
    pub fn symbolic(op: Operator, n: usize, m: usize) -> (Vec<RowLabel>, Vec<ColLabel>, Vec<Vec<Symbol>>) {
        let rows = row_labels(n, m);
        let ps = pairs(n);
        let mut cols = Vec::new();
        match op {
            Operator::D1 => {
                for l in 0..m {
                    for k in 0..m {
                        for &(i, j) in &ps {
                            cols.push(ColLabel::D1 { l, k, i, j });
                        }
                    }
                }
            }
            Operator::D2 => {
                for a in 0..m {
                    for c in 0..m {
                        for b in 0..n {
                            cols.push(ColLabel::D2 { a, c, b });
                        }
                    }
                }
            }
            Operator::D3 => {
                for &(a, b) in &ps {
                    for c in 0..n {
                        cols.push(ColLabel::D3 { a, b, c });
                    }
                }
            }
        }
        let mut symbols = alloc::vec![alloc::vec![Symbol::Zero; cols.len()]; rows.len()];
        for (ci, col) in cols.iter().enumerate() {
            match *col {
                ColLabel::D1 { l, k, i, j } => {
                    symbols[row_index(n, i, j, k)][ci] = Symbol::S(l);
                }
                ColLabel::D2 { a, c, b } => {
                    for p in 0..n {
                        symbols[row_index(n, p, b, c)][ci] = Symbol::DS { a, p };
                    }
                }
                ColLabel::D3 { a, b, c } => {
                    for p in 0..m {
                        symbols[row_index(n, a, b, p)][ci] = Symbol::DS { a: p, p: c };
                    }
                }
            }
        }
        (rows, cols, symbols)
    }

    pub fn build(op: Operator, s: &Section) -> Self {
        let (n, m) = (s.n(), s.m());
        let (rows, cols, symbols) = Self::symbolic(op, n, m);
        let jac = s.jacobian();
        let entries = symbols
            .iter()
            .map(|r| r.iter().map(|sym| sym.instantiate(s, &jac)).collect())
            .collect();
        OperatorMatrix {
            op,
            n,
            m,
            rows,
            cols,
            symbols,
            entries,
        }
    }

    pub fn op(&self) -> Operator {
        self.op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn rows(&self) -> &[RowLabel] {
        &self.rows
    }

    pub fn cols(&self) -> &[ColLabel] {
        &self.cols
    }

    pub fn symbols(&self) -> &[Vec<Symbol>] {
        &self.symbols
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r][c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    /// `M · v` for a column vector of polynomials.
    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.ncols());
        self.entries
            .iter()
            .map(|row| {
                row.iter().zip(v).fold(Poly::zero(self.n), |acc, (e, x)| {
                    if e.is_zero() || x.is_zero() {
                        acc
                    } else {
                        &acc + &(e * x)
                    }
                })
            })
            .collect()
    }
}

pub fn build_d1(s: &Section) -> OperatorMatrix {
    OperatorMatrix::build(Operator::D1, s)
}

pub fn build_d2(s: &Section) -> OperatorMatrix {
    OperatorMatrix::build(Operator::D2, s)
}

pub fn build_d3(s: &Section) -> OperatorMatrix {
    OperatorMatrix::build(Operator::D3, s)
}

/// The three matrices of a section, in the order `d1, d2, d3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operators {
    pub d1: OperatorMatrix,
    pub d2: OperatorMatrix,
    pub d3: OperatorMatrix,
}

impl Operators {
    pub fn build(s: &Section) -> Self {
        Operators {
            d1: build_d1(s),
            d2: build_d2(s),
            d3: build_d3(s),
        }
    }

    pub fn get(&self, op: Operator) -> &OperatorMatrix {
        match op {
            Operator::D1 => &self.d1,
            Operator::D2 => &self.d2,
            Operator::D3 => &self.d3,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &OperatorMatrix> {
        [&self.d1, &self.d2, &self.d3].into_iter()
    }
}
