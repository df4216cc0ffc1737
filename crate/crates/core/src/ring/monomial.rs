use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector of a monomial `x1^e1 * ... * xn^en`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors compared left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The monomial `x_i` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    /// Every monomial in `nvars` variables of total degree at most `max_degree`,
    /// in ascending graded-lex order.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut current = vec![0u32; nvars];
            push_degree(&mut out, &mut current, 0, d);
        }
        out.sort();
        out
    }
}

fn push_degree(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if current.is_empty() {
        if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        push_degree(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let x = Monomial::var(2, 0);
        let y = Monomial::var(2, 1);
        let xy = x.mul(&y);
        assert!(Monomial::one(2) < y);
        assert!(y < x);
        assert!(x < xy);
        assert_eq!(xy.div(&x), Some(y.clone()));
        assert_eq!(x.div(&y), None);
    }

    #[test]
    fn enumeration_counts() {
        // C(n + d, d)
        assert_eq!(Monomial::all_up_to(2, 3).len(), 10);
        assert_eq!(Monomial::all_up_to(3, 2).len(), 10);
        assert_eq!(Monomial::all_up_to(0, 4).len(), 1);
        let ms = Monomial::all_up_to(3, 4);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }
}
