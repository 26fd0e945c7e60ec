use super::matrix::{is_zero_vec, Mat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Linearly independent spanning vectors of a subspace of `F^d`, stored as
/// the columns of a `d x k` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis<S> {
    basis: Mat<S>,
}

impl<S: Scalar> SubspaceBasis<S> {
    /// Zero subspace of `F^ambient`.
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            basis: Mat::zeros(ambient, 0),
        }
    }

    /// Uses the given vectors as a basis, rejecting dependent families.
    pub fn from_independent(ambient: usize, vectors: &[Vec<S>]) -> Result<Self> {
        let basis = Mat::from_columns(ambient, vectors)?;
        if rank(&basis) != vectors.len() {
            return Err(Error::DependentBasis);
        }
        Ok(SubspaceBasis { basis })
    }

    /// Basis of the span of arbitrary vectors. Keeps the first maximal
    /// independent subfamily, in order.
    pub fn span(ambient: usize, vectors: &[Vec<S>]) -> Result<Self> {
        let m = Mat::from_columns(ambient, vectors)?;
        let ech = S::row_reduce(&m);
        Ok(SubspaceBasis {
            basis: m.select_columns(&ech.pivots),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<S>> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        match self
            .basis
            .hstack(&Mat::from_columns(self.ambient_dim(), &[v.to_vec()]).unwrap())
        {
            Ok(aug) => rank(&aug) == self.dim(),
            Err(_) => false,
        }
    }

    pub fn contains_all(&self, other: &SubspaceBasis<S>) -> bool {
        if other.is_zero() {
            return true;
        }
        match self.basis.hstack(&other.basis) {
            Ok(aug) => rank(&aug) == self.dim(),
            Err(_) => false,
        }
    }

    pub fn same_span(&self, other: &SubspaceBasis<S>) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.dim() == other.dim()
            && self.contains_all(other)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[S]) -> Result<Vec<S>> {
        let rhs = Mat::from_columns(self.ambient_dim(), &[v.to_vec()])?;
        Ok(solve(&self.basis, &rhs)?.column(0))
    }

    /// Orthogonal projector onto the subspace, `C (C* C)^{-1} C*`.
    pub fn projector(&self) -> Result<Mat<S>> {
        orthogonal_projector(self)
    }
}

pub fn rank<S: Scalar>(m: &Mat<S>) -> usize {
    S::row_reduce(m).rank()
}

/// Basis of the null space of `m`.
pub fn kernel<S: Scalar>(m: &Mat<S>) -> SubspaceBasis<S> {
    let cols = m.cols();
    let ech = S::row_reduce(m);
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![S::zero(); cols];
        v[free] = S::one();
        for (row, &pc) in ech.pivots.iter().enumerate() {
            v[pc] = -ech.rref[(row, free)].clone();
        }
        vectors.push(v);
    }
    SubspaceBasis {
        basis: Mat::from_columns(cols, &vectors).expect("kernel vectors have matching length"),
    }
}

/// Column space of `m`.
pub fn range<S: Scalar>(m: &Mat<S>) -> SubspaceBasis<S> {
    let ech = S::row_reduce(m);
    SubspaceBasis {
        basis: m.select_columns(&ech.pivots),
    }
}

/// A particular solution `X` of `m X = rhs`, with free variables set to zero.
pub fn solve<S: Scalar>(m: &Mat<S>, rhs: &Mat<S>) -> Result<Mat<S>> {
    if m.rows() != rhs.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: rhs.rows(),
        });
    }
    let n = m.cols();
    let ech = S::row_reduce(&m.hstack(rhs)?);
    if ech.pivots.iter().any(|&p| p >= n) {
        return Err(Error::NoSolution);
    }
    let mut x = Mat::zeros(n, rhs.cols());
    for (row, &pc) in ech.pivots.iter().enumerate() {
        for k in 0..rhs.cols() {
            x[(pc, k)] = ech.rref[(row, n + k)].clone();
        }
    }
    Ok(x)
}

pub fn solve_vec<S: Scalar>(m: &Mat<S>, rhs: &[S]) -> Result<Vec<S>> {
    let b = Mat::from_columns(m.rows(), &[rhs.to_vec()])?;
    Ok(solve(m, &b)?.column(0))
}

pub fn inverse<S: Scalar>(m: &Mat<S>) -> Result<Mat<S>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if rank(m) != m.rows() {
        return Err(Error::NoSolution);
    }
    solve(m, &Mat::identity(m.rows()))
}

/// Orthogonal projector `P_W` onto `W`.
pub fn orthogonal_projector<S: Scalar>(w: &SubspaceBasis<S>) -> Result<Mat<S>> {
    if w.is_zero() {
        return Err(Error::EmptySubspace);
    }
    let c = w.matrix();
    let cs = c.adjoint();
    let gram = cs.mul(c)?;
    let x = solve(&gram, &cs)?;
    c.mul(&x)
}
