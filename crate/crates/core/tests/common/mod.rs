#![allow(dead_code)]

use dynsamp::field::{Mat, Q};
use dynsamp::instances::{jordan_matrix, random_jordan_structure, random_unimodular};
use dynsamp::poly::Poly;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn vector(d: usize, bound: i64) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(-bound..=bound, d).prop_map(|v| qv(&v))
}

pub fn nonzero_vector(d: usize, bound: i64) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(-bound..=bound, d)
        .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
        .prop_map(|v| qv(&v))
}

pub fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = Mat<Q>> {
    prop::collection::vec(-bound..=bound, rows * cols)
        .prop_map(move |v| Mat::from_vec(rows, cols, qv(&v)).unwrap())
}

pub fn poly(max_len: usize, bound: i64) -> impl Strategy<Value = Poly<Q>> {
    prop::collection::vec(-bound..=bound, 0..=max_len).prop_map(|v| Poly::from_coeffs(qv(&v)))
}

/// `P J P^{-1}` with a random Jordan form `J`, plus the factored minimal polynomial.
pub fn conjugated_jordan(seed: u64, d: usize, avoid_one: bool) -> (Mat<Q>, Vec<(Q, usize)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (blocks, factors) = random_jordan_structure(&mut rng, d, 2, avoid_one);
    let j = jordan_matrix(&blocks);
    let (p, p_inv) = random_unimodular(&mut rng, d, 2 * d);
    (p.mul(&j).unwrap().mul(&p_inv).unwrap(), factors)
}

/// Square matrices mixing dense random entries and conjugated Jordan forms,
/// so that eigenvalue 1 and nontrivial blocks show up regularly.
pub fn square(d: usize) -> impl Strategy<Value = Mat<Q>> {
    prop_oneof![
        matrix(d, d, 2),
        (any::<u64>(), any::<bool>()).prop_map(move |(s, avoid)| conjugated_jordan(s, d, avoid).0),
    ]
}

pub fn square_with_vectors(
    max_d: usize,
    count: usize,
) -> impl Strategy<Value = (Mat<Q>, Vec<Vec<Q>>)> {
    (2..=max_d).prop_flat_map(move |d| {
        (
            square(d),
            prop::collection::vec(nonzero_vector(d, 2), count),
        )
    })
}

pub fn rank_of_columns(d: usize, cols: &[Vec<Q>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    dynsamp::field::rank(&Mat::from_columns(d, cols).unwrap())
}
