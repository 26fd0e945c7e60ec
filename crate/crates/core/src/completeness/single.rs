use crate::error::{Error, Result};
use crate::field::{inner, inverse, is_zero_vec, kernel, range, vsub, Mat, Scalar, SubspaceBasis};
use crate::krylov::minimal_annihilator;

use super::has_eigenvalue_one;

fn check<S: Scalar>(a: &Mat<S>, v: &[S]) -> Result<()> {
    if !a.is_square() || a.rows() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: v.len(),
        });
    }
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// Whether a single observational vector can recover the intensity along `ω`:
/// `ω ∉ Ker((A* - I)^d) ∩ Ker(A - I)^⊥`.
pub fn single_source_exists<S: Scalar>(a: &Mat<S>, omega: &[S]) -> Result<bool> {
    check(a, omega)?;
    let d = a.rows();
    let eig = kernel(&a.shift(&S::one()));
    let orthogonal = eig.vectors().iter().all(|v| inner(omega, v).is_zero());
    if !orthogonal {
        return Ok(true);
    }
    let nil = a.adjoint().shift(&S::one()).pow(d)?;
    Ok(!is_zero_vec(&nil.mul_vec(omega)?))
}

/// Projector onto `Ker((A - I)^d)` along `Range((A - I)^d)`, computed from the
/// Fitting decomposition. Zero when `1 ∉ σ(A)`.
pub fn fitting_projector_eig1<S: Scalar>(a: &Mat<S>) -> Result<Mat<S>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let d = a.rows();
    let n = a.shift(&S::one()).pow(d)?;
    let ker: SubspaceBasis<S> = kernel(&n);
    if ker.is_zero() {
        return Ok(Mat::zeros(d, d));
    }
    let k = ker.dim();
    let ran = range(&n);
    let s = ker.matrix().hstack(ran.matrix())?;
    let s_inv = inverse(&s)?;
    let keep: Vec<usize> = (0..k).collect();
    let top = s_inv.transpose().select_columns(&keep).transpose();
    ker.matrix().mul(&top)
}

/// An observational vector `b` that recovers the intensity along `ω`.
pub fn single_source_construct<S: Scalar>(a: &Mat<S>, omega: &[S]) -> Result<Vec<S>> {
    if !single_source_exists(a, omega)? {
        return Err(Error::NotRecoverable);
    }
    let shifted = a.shift(&S::one());
    if !has_eigenvalue_one(a) {
        // (I - A) ω
        return Ok(shifted.mul_vec(omega)?.into_iter().map(|x| -x).collect());
    }
    let d = a.rows();
    let e1 = fitting_projector_eig1(a)?;
    let e1_star = e1.adjoint();
    let rest = vsub(omega, &e1_star.mul_vec(omega)?);
    if is_zero_vec(&rest) {
        return kernel(&shifted)
            .vectors()
            .into_iter()
            .find(|v| !inner(omega, v).is_zero())
            .ok_or(Error::NotRecoverable);
    }
    let complement = Mat::identity(d).sub(&e1)?;
    let b = shifted.mul_vec(&complement.mul_vec(&rest)?)?;
    if is_zero_vec(&b) {
        return Err(Error::NotRecoverable);
    }
    Ok(b)
}

/// `<ω, m̂_b(A) b> ≠ 0`.
pub fn single_vector_test<S: Scalar>(a: &Mat<S>, omega: &[S], b: &[S]) -> Result<bool> {
    check(a, omega)?;
    check(a, b)?;
    let m = minimal_annihilator(a, b)?.m_b;
    let g = m.hat().eval_on_vector(a, b)?;
    Ok(!inner(omega, &g).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{unit, Q};

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn j7() -> Mat<Q> {
        let mut a = Mat::identity(7);
        for i in [0, 1, 3, 4, 5] {
            a[(i, i + 1)] = q(1);
        }
        a
    }

    #[test]
    fn existence_examples() {
        let ex = Mat::from_rows(&[vec![q(1), q(0)], vec![q(1), q(1)]]).unwrap();
        assert!(!single_source_exists(&ex, &unit(2, 0)).unwrap());
        assert!(single_source_exists(&j7(), &unit(7, 0)).unwrap());
        assert!(single_source_exists(&Mat::diagonal(&[q(2), q(3)]), &unit(2, 1)).unwrap());
        assert_eq!(
            single_source_exists(&j7(), &vec![q(0); 7]),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn fitting_projector_examples() {
        assert_eq!(fitting_projector_eig1(&j7()).unwrap(), Mat::identity(7));
        assert!(fitting_projector_eig1(&Mat::diagonal(&[q(2), q(3)]))
            .unwrap()
            .is_zero());
        assert_eq!(
            fitting_projector_eig1(&Mat::diagonal(&[q(1), q(2)])).unwrap(),
            Mat::diagonal(&[q(1), q(0)])
        );
    }

    #[test]
    fn construction_examples() {
        let a = Mat::diagonal(&[q(2), q(3)]);
        assert_eq!(
            single_source_construct(&a, &unit(2, 0)).unwrap(),
            vec![q(-1), q(0)]
        );
        let a = Mat::diagonal(&[q(1), q(2)]);
        let b = single_source_construct(&a, &unit(2, 1)).unwrap();
        assert_eq!(b, unit(2, 1));
        assert!(single_vector_test(&a, &unit(2, 1), &b).unwrap());
        let b = single_source_construct(&j7(), &unit(7, 0)).unwrap();
        assert!(single_vector_test(&j7(), &unit(7, 0), &b).unwrap());
        let ex = Mat::from_rows(&[vec![q(1), q(0)], vec![q(1), q(1)]]).unwrap();
        assert_eq!(
            single_source_construct(&ex, &unit(2, 0)),
            Err(Error::NotRecoverable)
        );
    }

    #[test]
    fn single_vector_examples() {
        assert!(single_vector_test(&j7(), &unit(7, 0), &unit(7, 1)).unwrap());
        assert!(!single_vector_test(&j7(), &unit(7, 1), &unit(7, 2)).unwrap());
        let a = Mat::diagonal(&[q(2), q(3)]);
        assert!(single_vector_test(&a, &unit(2, 1), &unit(2, 1)).unwrap());
    }
}
