//! Structured and seeded random test instances.

use rand::Rng;

use crate::completeness::has_eigenvalue_one;
use crate::field::{rank, Mat, Scalar, Q};

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Block-diagonal Jordan matrix, ones on the superdiagonal of each block.
pub fn jordan_matrix<S: Scalar>(blocks: &[(S, usize)]) -> Mat<S> {
    let d: usize = blocks.iter().map(|(_, n)| n).sum();
    let mut a = Mat::zeros(d, d);
    let mut at = 0;
    for (l, n) in blocks {
        for i in 0..*n {
            a[(at + i, at + i)] = l.clone();
            if i + 1 < *n {
                a[(at + i, at + i + 1)] = S::one();
            }
        }
        at += n;
    }
    a
}

/// `J_3(1) ⊕ J_4(1)`: the 7×7 Jordan matrix with a single eigenvalue 1.
pub fn two_block_jordan() -> Mat<Q> {
    jordan_matrix(&[(q(1), 3), (q(1), 4)])
}

/// `[[1, 0], [1, 1]]`, for which no single sensor recovers a source along `e1`.
pub fn shear() -> Mat<Q> {
    Mat::from_rows(&[vec![q(1), q(0)], vec![q(1), q(1)]]).expect("2x2")
}

/// Wind operator on a `rows x cols` grid, cells numbered row by row. Each row
/// is one nilpotent block with ones on the subdiagonal, so `A*` moves the
/// contents of every cell one step toward the start of its row.
pub fn grid_operator<S: Scalar>(rows: usize, cols: usize) -> Mat<S> {
    let d = rows * cols;
    let mut a = Mat::zeros(d, d);
    for r in 0..rows {
        for c in 1..cols {
            let i = r * cols + c;
            a[(i, i - 1)] = S::one();
        }
    }
    a
}

pub fn random_integer<R: Rng>(rng: &mut R, bound: i64) -> Q {
    q(rng.random_range(-bound..=bound))
}

pub fn random_vector<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vec<Q> {
    (0..d).map(|_| random_integer(rng, bound)).collect()
}

pub fn random_nonzero_vector<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vec<Q> {
    loop {
        let v = random_vector(rng, d, bound);
        if v.iter().any(|x| *x != q(0)) {
            return v;
        }
    }
}

/// Random rational with small numerator and denominator.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Q {
    Q::new(
        rng.random_range(-bound..=bound).into(),
        rng.random_range(1..=bound.max(1)).into(),
    )
}

pub fn random_matrix<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Mat<Q> {
    Mat::from_vec(
        d,
        d,
        (0..d * d).map(|_| random_integer(rng, bound)).collect(),
    )
    .expect("d*d entries")
}

/// Random integer matrix, shifted by multiples of `I` until 1 is not an eigenvalue.
pub fn random_matrix_off_one<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Mat<Q> {
    let mut a = random_matrix(rng, d, bound);
    while has_eigenvalue_one(&a) {
        a = a.shift(&q(-1));
    }
    a
}

/// `k` linearly independent integer vectors in `Q^d`.
pub fn random_subspace<R: Rng>(rng: &mut R, d: usize, k: usize, bound: i64) -> Vec<Vec<Q>> {
    assert!(k <= d);
    let mut out: Vec<Vec<Q>> = Vec::with_capacity(k);
    while out.len() < k {
        let v = random_nonzero_vector(rng, d, bound);
        let mut trial = out.clone();
        trial.push(v.clone());
        if rank(&Mat::from_columns(d, &trial).expect("lengths")) == trial.len() {
            out.push(v);
        }
    }
    out
}

/// Integer matrix with determinant ±1 and its integer inverse, built from
/// random elementary row operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, d: usize, steps: usize) -> (Mat<Q>, Mat<Q>) {
    let mut p = Mat::identity(d);
    let mut p_inv = Mat::identity(d);
    if d < 2 {
        return (p, p_inv);
    }
    for _ in 0..steps {
        let i = rng.random_range(0..d);
        let mut j = rng.random_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let f = q(if rng.random_bool(0.5) { 1 } else { -1 });
        // E = I + f e_i e_j^T, E^{-1} = I - f e_i e_j^T
        let mut e = Mat::identity(d);
        e[(i, j)] = f.clone();
        let mut e_inv = Mat::identity(d);
        e_inv[(i, j)] = -f;
        p = e.mul(&p).expect("square");
        p_inv = p_inv.mul(&e_inv).expect("square");
    }
    (p, p_inv)
}

/// Random Jordan structure with `d` total size: distinct integer eigenvalues
/// from `-bound..=bound` and random block sizes. Returns the blocks and the
/// factorization `(λ, largest block size)` of the minimal polynomial.
pub fn random_jordan_structure<R: Rng>(
    rng: &mut R,
    d: usize,
    bound: i64,
    avoid_one: bool,
) -> (Vec<(Q, usize)>, Vec<(Q, usize)>) {
    let mut pool: Vec<i64> = (-bound..=bound)
        .filter(|&x| !(avoid_one && x == 1))
        .collect();
    let mut blocks = Vec::new();
    let mut factors: Vec<(Q, usize)> = Vec::new();
    let mut left = d;
    while left > 0 {
        let idx = rng.random_range(0..pool.len());
        let l = pool.swap_remove(idx);
        let mut largest = 0;
        let nblocks = rng.random_range(1..=2usize);
        for _ in 0..nblocks {
            if left == 0 {
                break;
            }
            let size = rng.random_range(1..=left.min(3));
            blocks.push((q(l), size));
            largest = largest.max(size);
            left -= size;
        }
        factors.push((q(l), largest));
        if pool.is_empty() && left > 0 {
            // Out of eigenvalues: put the rest into the last value's blocks.
            blocks.push((q(l), left));
            let last = factors.last_mut().expect("nonempty");
            last.1 = last.1.max(left);
            left = 0;
        }
    }
    (blocks, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::inverse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_pair_is_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (p, p_inv) = random_unimodular(&mut rng, 5, 20);
        assert_eq!(p.mul(&p_inv).unwrap(), Mat::identity(5));
        assert_eq!(inverse(&p).unwrap(), p_inv);
    }

    #[test]
    fn grid_operator_is_nilpotent_per_row() {
        let a: Mat<Q> = grid_operator(2, 3);
        assert!(a.pow(3).unwrap().is_zero());
        assert!(!a.pow(2).unwrap().is_zero());
        assert_eq!(a[(1, 0)], q(1));
        assert_eq!(a[(3, 2)], q(0));
    }

    #[test]
    fn jordan_structure_sizes_add_up() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 1..10 {
            let (blocks, factors) = random_jordan_structure(&mut rng, d, 3, true);
            assert_eq!(blocks.iter().map(|b| b.1).sum::<usize>(), d);
            assert!(factors.iter().all(|(l, _)| *l != q(1)));
        }
    }
}
