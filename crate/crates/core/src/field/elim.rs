//! Row reduction.
//!
//! Exact fields go through a fraction-free Gauss–Jordan pass over integers
//! (rows are first scaled by the lcm of their denominators), so every
//! intermediate quantity is a minor of the scaled matrix and every division is
//! exact. The float path uses partial pivoting with a relative cutoff.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::Mat;
use super::scalar::{GaussianRational, Scalar};

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    pub rref: Mat<S>,
    pub pivots: Vec<usize>,
}

impl<S> Echelon<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss–Jordan with partial pivoting. Used for fields without an integral
/// domain representation (floats).
pub fn gauss_jordan<S: Scalar>(a: &Mat<S>) -> Echelon<S> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let scale = a.max_magnitude();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let p = (r..rows)
            .max_by(|&x, &y| {
                m[(x, c)]
                    .magnitude()
                    .partial_cmp(&m[(y, c)].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if m[(p, c)].negligible(scale) {
            for i in r..rows {
                m[(i, c)] = S::zero();
            }
            continue;
        }
        if p != r {
            for j in 0..cols {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
        }
        let piv = m[(r, c)].clone();
        for j in c..cols {
            m[(r, j)] = m[(r, j)].clone() / piv.clone();
        }
        m[(r, c)] = S::one();
        for i in 0..rows {
            if i == r || m[(i, c)].is_exact_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                let t = f.clone() * m[(r, j)].clone();
                m[(i, j)] = m[(i, j)].clone() - t;
            }
            m[(i, c)] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rref: m, pivots }
}

/// Integral domain with exact division, the setting of Bareiss elimination.
pub(crate) trait Domain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    /// Division known to be exact.
    fn exact_div(&self, o: &Self) -> Self;
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn exact_div(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
        q
    }
}

impl Domain for Complex<BigInt> {
    fn zero() -> Self {
        Complex::new(<BigInt as Zero>::zero(), <BigInt as Zero>::zero())
    }
    fn one() -> Self {
        Complex::new(<BigInt as One>::one(), <BigInt as Zero>::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn exact_div(&self, o: &Self) -> Self {
        let num = self * o.conj();
        let norm = o.norm_sqr();
        let (re, r1) = num.re.div_rem(&norm);
        let (im, r2) = num.im.div_rem(&norm);
        debug_assert!(
            Zero::is_zero(&r1) && Zero::is_zero(&r2),
            "inexact Bareiss division"
        );
        Complex::new(re, im)
    }
}

/// Fraction-free Gauss–Jordan. On return every pivot entry equals the last
/// pivot value, which is returned alongside the pivot columns.
pub(crate) fn bareiss_jordan<D: Domain>(m: &mut [Vec<D>], cols: usize) -> (Vec<usize>, D) {
    let rows = m.len();
    let mut prev = D::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let piv = m[r][c].clone();
        let (head, tail) = m.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let f = row[c].clone();
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let lhs = piv.mul(&row[j]);
                let t = if f.is_zero() {
                    lhs
                } else {
                    lhs.sub(&f.mul(&pivot_row[j]))
                };
                row[j] = t.exact_div(&prev);
            }
            row[c] = D::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    (pivots, prev)
}

fn lcm_denominators<'a>(dens: impl Iterator<Item = &'a BigInt>) -> BigInt {
    dens.fold(<BigInt as One>::one(), |acc, d| acc.lcm(d))
}

pub(crate) fn bareiss_rational(a: &Mat<BigRational>) -> Echelon<BigRational> {
    let cols = a.cols();
    let mut m: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|i| {
            let row = a.row(i);
            let l = lcm_denominators(row.iter().map(|q| q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    let (pivots, _) = bareiss_jordan(&mut m, cols);
    let mut rref = Mat::zeros(a.rows(), cols);
    for (i, &pc) in pivots.iter().enumerate() {
        let piv = m[i][pc].clone();
        for j in 0..cols {
            if !Zero::is_zero(&m[i][j]) {
                rref[(i, j)] = BigRational::new(m[i][j].clone(), piv.clone());
            }
        }
    }
    Echelon { rref, pivots }
}

pub(crate) fn bareiss_gaussian(a: &Mat<GaussianRational>) -> Echelon<GaussianRational> {
    let cols = a.cols();
    let mut m: Vec<Vec<Complex<BigInt>>> = (0..a.rows())
        .map(|i| {
            let row = a.row(i);
            let l = lcm_denominators(row.iter().flat_map(|z| [z.re.denom(), z.im.denom()]));
            row.iter()
                .map(|z| {
                    Complex::new(
                        z.re.numer() * (&l / z.re.denom()),
                        z.im.numer() * (&l / z.im.denom()),
                    )
                })
                .collect()
        })
        .collect();
    let (pivots, _) = bareiss_jordan(&mut m, cols);
    let lift = |z: &Complex<BigInt>| {
        Complex::new(
            BigRational::from_integer(z.re.clone()),
            BigRational::from_integer(z.im.clone()),
        )
    };
    let mut rref = Mat::zeros(a.rows(), cols);
    for (i, &pc) in pivots.iter().enumerate() {
        let piv = lift(&m[i][pc]);
        for j in 0..cols {
            if !Domain::is_zero(&m[i][j]) {
                rref[(i, j)] = lift(&m[i][j]) / piv.clone();
            }
        }
    }
    Echelon { rref, pivots }
}
