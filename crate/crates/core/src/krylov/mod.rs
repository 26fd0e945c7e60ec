//! Orbit spaces, minimal annihilators, conductor chains and characteristic vectors.

mod basis;

pub use basis::{IncrementalBasis, Insertion};

use crate::error::{Error, Result};
use crate::field::{is_zero_vec, vadd, vsub, Mat, Scalar, SubspaceBasis};
use crate::poly::{hermite_interpolant, reciprocal_shift_values, Poly};

/// Minimal annihilating polynomial of `b` together with its orbit basis.
#[derive(Clone, Debug)]
pub struct AnnihilatorResult<S> {
    /// Monic `m_b` of least degree with `m_b(A) b = 0`.
    pub m_b: Poly<S>,
    /// `b, Ab, ..., A^{r-1} b`.
    pub orbit: SubspaceBasis<S>,
}

impl<S: Scalar> AnnihilatorResult<S> {
    pub fn degree(&self) -> usize {
        self.orbit.dim()
    }
}

fn check_square<S: Scalar>(a: &Mat<S>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        })
    }
}

fn check_vector<S: Scalar>(a: &Mat<S>, b: &[S]) -> Result<()> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    Ok(())
}

pub fn minimal_annihilator<S: Scalar>(a: &Mat<S>, b: &[S]) -> Result<AnnihilatorResult<S>> {
    let chain = conductor_chain(a, &[b.to_vec()])?;
    let m_b = chain.links[0].conductor.clone();
    let orbit = chain.joint.clone();
    Ok(AnnihilatorResult { m_b, orbit })
}

/// Minimal polynomial of a square matrix, from the first dependency among
/// the vectorized powers `I, A, A^2, ...`.
pub fn minimal_polynomial<S: Scalar>(a: &Mat<S>) -> Result<Poly<S>> {
    check_square(a)?;
    let d = a.rows();
    let mut basis: IncrementalBasis<S> = IncrementalBasis::new(d * d);
    let mut power = Mat::identity(d);
    loop {
        match basis.insert(power.entries().to_vec(), ()) {
            Insertion::Added { .. } => power = power.mul(a)?,
            Insertion::Dependent { coeffs } => {
                let n = coeffs.len();
                let mut c: Vec<S> = coeffs.into_iter().map(|x| -x).collect();
                c.push(S::one());
                debug_assert_eq!(c.len(), n + 1);
                return Ok(Poly::from_coeffs(c));
            }
        }
    }
}

/// One step of the conductor chain: how `b_j` enters the span of the earlier orbits.
#[derive(Clone, Debug)]
pub struct ChainLink<S> {
    /// Monic `κ_j` of least degree with `κ_j(A) b_j ∈ V_j`.
    pub conductor: Poly<S>,
    /// `q_j^i` for `i < j`, with `κ_j(A) b_j = sum_i q_j^i(A) b_i`.
    pub reps: Vec<Poly<S>>,
    /// `g_j = κ̂_j(A) b_j - sum_i q̂_j^i(A) b_i`.
    pub characteristic: Vec<S>,
    /// Coefficients `μ` of `(A - I) g_j = sum_i μ_i b_i` (length `L`).
    pub image_coeffs: Vec<S>,
}

impl<S: Scalar> ChainLink<S> {
    pub fn degree(&self) -> usize {
        self.conductor.degree().unwrap_or(0)
    }
}

/// Conductor chain of an ordered sensor list.
#[derive(Clone, Debug)]
pub struct KrylovChain<S> {
    pub sensors: Vec<Vec<S>>,
    pub links: Vec<ChainLink<S>>,
    /// Basis of `Z(A; b_1, ..., b_L)` built by successive extension.
    pub joint: SubspaceBasis<S>,
}

impl<S: Scalar> KrylovChain<S> {
    pub fn characteristic_vectors(&self) -> Vec<Vec<S>> {
        self.links
            .iter()
            .map(|l| l.characteristic.clone())
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.links.iter().map(ChainLink::degree).collect()
    }
}

pub fn conductor_chain<S: Scalar>(a: &Mat<S>, sensors: &[Vec<S>]) -> Result<KrylovChain<S>> {
    check_square(a)?;
    let d = a.rows();
    let count = sensors.len();
    let mut basis: IncrementalBasis<S, (usize, usize)> = IncrementalBasis::new(d);
    let mut links = Vec::with_capacity(count);

    for (j, b) in sensors.iter().enumerate() {
        check_vector(a, b)?;
        if is_zero_vec(b) {
            return Err(Error::ZeroVector);
        }
        let mut v = b.clone();
        let mut n = 0;
        let coeffs = loop {
            match basis.insert(v.clone(), (j, n)) {
                Insertion::Added { .. } => {
                    v = a.mul_vec(&v)?;
                    n += 1;
                }
                Insertion::Dependent { coeffs } => break coeffs,
            }
        };

        // Split the dependency by owning sensor.
        let mut own = vec![S::zero(); n + 1];
        own[n] = S::one();
        let mut rep_coeffs: Vec<Vec<S>> = vec![Vec::new(); j];
        for (c, &(owner, power)) in coeffs.into_iter().zip(basis.labels()) {
            if owner == j {
                own[power] = own[power].clone() - c;
            } else {
                let slot = &mut rep_coeffs[owner];
                if slot.len() <= power {
                    slot.resize(power + 1, S::zero());
                }
                slot[power] = c;
            }
        }
        let conductor = Poly::from_coeffs(own);
        let reps: Vec<Poly<S>> = rep_coeffs.into_iter().map(Poly::from_coeffs).collect();

        let mut g = conductor.hat().eval_on_vector(a, b)?;
        for (i, q) in reps.iter().enumerate() {
            g = vsub(&g, &q.hat().eval_on_vector(a, &sensors[i])?);
        }
        let mut image_coeffs = vec![S::zero(); count];
        for (i, q) in reps.iter().enumerate() {
            image_coeffs[i] = q.eval(&S::one());
        }
        image_coeffs[j] = -conductor.eval(&S::one());

        links.push(ChainLink {
            conductor,
            reps,
            characteristic: g,
            image_coeffs,
        });
    }

    let joint = SubspaceBasis::from_independent(d, basis.generators())
        .unwrap_or_else(|_| SubspaceBasis::span(d, basis.generators()).expect("matching lengths"));
    Ok(KrylovChain {
        sensors: sensors.to_vec(),
        links,
        joint,
    })
}

/// `span{g_1, ..., g_L}`.
pub fn characteristic_space<S: Scalar>(chain: &KrylovChain<S>) -> SubspaceBasis<S> {
    let d = chain.joint.ambient_dim();
    SubspaceBasis::span(d, &chain.characteristic_vectors())
        .expect("characteristic vectors have length d")
}

/// `Λ_n b = sum_{j<n} A^j b`.
pub fn lambda_accumulate<S: Scalar>(a: &Mat<S>, b: &[S], n: usize) -> Result<Vec<S>> {
    check_square(a)?;
    check_vector(a, b)?;
    let mut acc = vec![S::zero(); b.len()];
    let mut power = b.to_vec();
    for k in 0..n {
        acc = vadd(&acc, &power);
        if k + 1 < n {
            power = a.mul_vec(&power)?;
        }
    }
    Ok(acc)
}

/// `span{[A^n b_l; Λ_n b_l] : n = 0..=horizon}` in `F^{2d}`. The horizon
/// defaults to `d`, which saturates the span.
pub fn augmented_orbit_space<S: Scalar>(
    a: &Mat<S>,
    sensors: &[Vec<S>],
    horizon: Option<usize>,
) -> Result<SubspaceBasis<S>> {
    check_square(a)?;
    let d = a.rows();
    let horizon = horizon.unwrap_or(d);
    let mut basis: IncrementalBasis<S> = IncrementalBasis::new(2 * d);
    for b in sensors {
        check_vector(a, b)?;
        let mut power = b.clone();
        let mut lambda = vec![S::zero(); d];
        for _ in 0..=horizon {
            let mut stacked = power.clone();
            stacked.extend(lambda.iter().cloned());
            basis.insert(stacked, ());
            lambda = vadd(&lambda, &power);
            power = a.mul_vec(&power)?;
        }
    }
    SubspaceBasis::from_independent(2 * d, basis.generators())
        .or_else(|_| SubspaceBasis::span(2 * d, basis.generators()))
}

/// `prod (A - λ I)^n b`.
pub fn apply_factored<S: Scalar>(a: &Mat<S>, roots: &[(S, usize)], b: &[S]) -> Result<Vec<S>> {
    check_square(a)?;
    check_vector(a, b)?;
    let mut v = b.to_vec();
    for (l, n) in roots {
        let shifted = a.shift(l);
        for _ in 0..*n {
            v = shifted.mul_vec(&v)?;
        }
    }
    Ok(v)
}

/// Solves `(A - I) x = b` inside `Z(A; b)` as `x = q(A) b`, where `q` is the
/// Hermite interpolant of `1/(x - 1)` on the roots of a polynomial that
/// annihilates `b` (given in factored form).
pub fn inverse_via_hermite<S: Scalar>(a: &Mat<S>, b: &[S], roots: &[(S, usize)]) -> Result<Vec<S>> {
    if !is_zero_vec(&apply_factored(a, roots, b)?) {
        return Err(Error::BadFactorization);
    }
    let values = roots
        .iter()
        .map(|(l, n)| reciprocal_shift_values(l, *n))
        .collect::<Result<Vec<_>>>()?;
    let q = hermite_interpolant(roots, &values)?;
    q.eval_on_vector(a, b)
}
