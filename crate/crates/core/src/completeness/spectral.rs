use crate::error::{Error, Result};
use crate::field::{Mat, Scalar};
use crate::krylov::minimal_polynomial;
use crate::poly::Poly;

/// Spectral projectors `E_λ = p_λ(A)` for a supplied factorization
/// `m_A = prod (x - λ_i)^{n_i}`, with `p_λ = h_λ prod_{j≠i} (x - λ_j)^{n_j}`
/// and `h_λ` the truncated Taylor expansion of the reciprocal cofactor at `λ`.
pub fn spectral_projectors<S: Scalar>(a: &Mat<S>, eigen: &[(S, usize)]) -> Result<Vec<Mat<S>>> {
    for (i, (l, n)) in eigen.iter().enumerate() {
        if *n == 0 || eigen[..i].iter().any(|(m, _)| m == l) {
            return Err(Error::BadFactorization);
        }
    }
    let m_a = minimal_polynomial(a)?;
    if Poly::from_roots(eigen) != m_a {
        return Err(Error::BadFactorization);
    }
    eigen
        .iter()
        .enumerate()
        .map(|(i, (l, n))| {
            let others: Vec<(S, usize)> = eigen
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, e)| e.clone())
                .collect();
            let cofactor = Poly::from_roots(&others);
            let h = cofactor
                .taylor_shift(l)
                .series_inverse(*n)?
                .taylor_shift(&-l.clone());
            let (_, p) = (&h * &cofactor).divmod(&m_a)?;
            p.eval_on_matrix(a)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn diagonal_projectors() {
        let a = Mat::diagonal(&[q(2), q(3)]);
        let e = spectral_projectors(&a, &[(q(2), 1), (q(3), 1)]).unwrap();
        assert_eq!(e[0], Mat::diagonal(&[q(1), q(0)]));
        assert_eq!(e[1], Mat::diagonal(&[q(0), q(1)]));
    }

    #[test]
    fn wrong_factorization_rejected() {
        let a = Mat::diagonal(&[q(2), q(3)]);
        assert_eq!(
            spectral_projectors(&a, &[(q(2), 2), (q(3), 1)]),
            Err(Error::BadFactorization)
        );
        assert_eq!(
            spectral_projectors(&a, &[(q(2), 1)]),
            Err(Error::BadFactorization)
        );
    }

    #[test]
    fn jordan_block_with_two_eigenvalues() {
        // J_2(1) ⊕ (2)
        let a = Mat::from_rows(&[
            vec![q(1), q(1), q(0)],
            vec![q(0), q(1), q(0)],
            vec![q(0), q(0), q(2)],
        ])
        .unwrap();
        let e = spectral_projectors(&a, &[(q(1), 2), (q(2), 1)]).unwrap();
        assert_eq!(e[0], Mat::diagonal(&[q(1), q(1), q(0)]));
        assert_eq!(e[1], Mat::diagonal(&[q(0), q(0), q(1)]));
    }
}
