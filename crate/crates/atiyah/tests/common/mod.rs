#![allow(dead_code)]

use atiyah_core::connection::ConnectionTriple;
use atiyah_core::graded::{GradedVectorField, Section, SuperFunction, XiSet};
use atiyah_core::linalg;
use atiyah_core::ring::{int, Monomial, Poly, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut impl Rng) -> Rational {
    loop {
        let v: i64 = rng.random_range(-3..=3);
        if v != 0 {
            return int(v);
        }
    }
}

/// Up to `max_terms` random terms of degree at most `max_degree`.
pub fn poly(rng: &mut impl Rng, nvars: usize, max_degree: u32, max_terms: usize) -> Poly {
    let monos = Monomial::all_up_to(nvars, max_degree);
    let mut p = Poly::zero(nvars);
    for _ in 0..rng.random_range(0..=max_terms) {
        let m = monos[rng.random_range(0..monos.len())].clone();
        p.add_term(m, small(rng));
    }
    p
}

pub fn section(rng: &mut impl Rng, n: usize, m: usize, max_degree: u32) -> Section {
    Section::new(n, (0..m).map(|_| poly(rng, n, max_degree, 3)).collect()).unwrap()
}

/// A valid triple: symmetric `gamma_m`, `gamma_e` of degree at most
/// `gamma_e_degree`, and `beta = S - R/2` with `S` symmetric.
pub fn connection(
    rng: &mut impl Rng,
    n: usize,
    m: usize,
    degree: u32,
    gamma_e_degree: u32,
) -> ConnectionTriple {
    let mut gamma_m = vec![Poly::zero(n); n * n * n];
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let p = poly(rng, n, degree, 2);
                gamma_m[(i * n + j) * n + k] = p.clone();
                gamma_m[(j * n + i) * n + k] = p;
            }
        }
    }
    let gamma_e = (0..n * m * m).map(|_| poly(rng, n, gamma_e_degree, 2)).collect();
    let mut sym = vec![Poly::zero(n); n * n * m * m];
    for i in 0..n {
        for j in i..n {
            for a in 0..m {
                for k in 0..m {
                    let p = poly(rng, n, degree, 2);
                    sym[((i * n + j) * m + a) * m + k] = p.clone();
                    sym[((j * n + i) * m + a) * m + k] = p;
                }
            }
        }
    }
    let t = ConnectionTriple::with_symmetric_beta(n, m, gamma_m, gamma_e, sym).unwrap();
    assert!(t.validate().is_empty());
    t
}

/// Random function whose terms all have `|S|` in `sizes`.
pub fn superfunction(rng: &mut impl Rng, n: usize, m: usize, sizes: &[usize], max_degree: u32) -> SuperFunction {
    let mut f = SuperFunction::zero(n, m);
    for set in XiSet::all(m) {
        if sizes.contains(&set.len()) && rng.random_bool(0.6) {
            f = &f + &SuperFunction::monomial(m, set, poly(rng, n, max_degree, 2));
        }
    }
    f
}

pub fn any_superfunction(rng: &mut impl Rng, n: usize, m: usize) -> SuperFunction {
    let sizes: Vec<usize> = (0..=m).collect();
    superfunction(rng, n, m, &sizes, 2)
}

/// Homogeneous function of degree `-size`.
pub fn homogeneous_function(rng: &mut impl Rng, n: usize, m: usize, size: usize) -> SuperFunction {
    superfunction(rng, n, m, &[size], 2)
}

/// Homogeneous field of degree `d`: `x`-components of degree `d`,
/// `xi`-components of degree `d - 1`.
pub fn homogeneous_field(rng: &mut impl Rng, n: usize, m: usize, d: i32) -> GradedVectorField {
    let comp = |rng: &mut ChaCha8Rng, deg: i32| {
        if deg > 0 || (-deg) as usize > m {
            SuperFunction::zero(n, m)
        } else {
            homogeneous_function(rng, n, m, (-deg) as usize)
        }
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.random());
    let x = (0..n).map(|_| comp(&mut local, d)).collect();
    let xi = (0..m).map(|_| comp(&mut local, d - 1)).collect();
    GradedVectorField::from_components(x, xi).unwrap()
}

pub fn invertible(rng: &mut impl Rng, n: usize) -> Vec<Vec<Rational>> {
    loop {
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| int(rng.random_range(-2..=2))).collect())
            .collect();
        if linalg::inverse(&a).is_some() {
            return a;
        }
    }
}
