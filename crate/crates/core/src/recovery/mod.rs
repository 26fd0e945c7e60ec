//! Simulation of the sampled system and reconstruction of the source term.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::completeness::{test_general, ProblemDef};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{inner, inverse, vadd, vclose, Mat, Scalar};
use crate::krylov::lambda_accumulate;
use crate::poly::Poly;

/// States `x(0), ..., x(N-1)` of `x(n+1) = A* x(n) + ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<S> {
    pub x0: Vec<S>,
    pub omega: Vec<S>,
    pub states: Vec<Vec<S>>,
}

/// Samples `y_l(n) = <x(n), b_l>`, one series per sensor, indexed by `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSeries<S> {
    pub series: Vec<Vec<S>>,
}

impl<S: Scalar> MeasurementSeries<S> {
    pub fn sensors(&self) -> usize {
        self.series.len()
    }

    /// Keeps the first `n` samples of every series.
    pub fn truncated(&self, n: usize) -> Self {
        MeasurementSeries {
            series: self
                .series
                .iter()
                .map(|s| s[..n.min(s.len())].to_vec())
                .collect(),
        }
    }
}

/// Runs the recursion for `samples` steps and samples every state. The
/// samples are recomputed from the closed form
/// `y_l(n) = <x0, A^n b_l> + <ω, Λ_n b_l>` and the two must agree.
pub fn simulate<S: Scalar>(
    a: &Mat<S>,
    x0: &[S],
    omega: &[S],
    sensors: &[Vec<S>],
    samples: usize,
) -> Result<(Trajectory<S>, MeasurementSeries<S>)> {
    let d = a.rows();
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: a.cols(),
        });
    }
    for v in std::iter::once(x0)
        .chain(std::iter::once(omega))
        .chain(sensors.iter().map(Vec::as_slice))
    {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.len(),
            });
        }
    }
    let a_star = a.adjoint();
    let mut states = Vec::with_capacity(samples);
    let mut x = x0.to_vec();
    for n in 0..samples {
        if n > 0 {
            x = vadd(&a_star.mul_vec(&x)?, omega);
        }
        states.push(x.clone());
    }
    let mut series = Vec::with_capacity(sensors.len());
    for b in sensors {
        let mut ys = Vec::with_capacity(samples);
        let mut power = b.clone();
        for (n, state) in states.iter().enumerate() {
            let y = inner(state, b);
            let closed = inner(x0, &power) + inner(omega, &lambda_accumulate(a, b, n)?);
            let agree = if S::EXACT {
                y == closed
            } else {
                y.close_to(&closed)
            };
            if !agree {
                return Err(Error::SimulationMismatch { step: n });
            }
            ys.push(y);
            power = a.mul_vec(&power)?;
        }
        series.push(ys);
    }
    Ok((
        Trajectory {
            x0: x0.to_vec(),
            omega: omega.to_vec(),
            states,
        },
        MeasurementSeries { series },
    ))
}

/// Linear functionals on the samples that expose `<ω, P_W g_j>`, and the dual
/// frame that turns those values back into `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecoveryPlan<S> {
    /// Number of samples needed per sensor, `n = 0..T`.
    pub horizon: usize,
    /// `alpha[j]` is a `T x L` table: `z_j = sum_{n,l} alpha[j][(n, l)] y_l(n)`.
    pub alpha: Vec<Mat<S>>,
    /// Characteristic vectors `g_j`.
    pub characteristic: Vec<Vec<S>>,
    /// Frame vectors `P_W g_j`.
    pub frame: Vec<Vec<S>>,
    /// `mu[j][l]`: constant-term corrections used in `alpha[j]`.
    pub mu: Vec<Vec<S>>,
    /// Basis `ω_1, ..., ω_K` of `W`.
    pub w_basis: Vec<Vec<S>>,
    /// `F_{jk} = <ω_k, g_j>` (`J x K`).
    pub frame_matrix: Mat<S>,
    /// `(F* F)^{-1} F*` (`K x J`).
    pub dual: Mat<S>,
}

impl<S: Scalar> RecoveryPlan<S> {
    pub fn sensors(&self) -> usize {
        self.alpha.first().map_or(0, Mat::cols)
    }

    /// 2-norm condition number of the frame matrix.
    pub fn condition_number(&self) -> f64 {
        condition_number(&self.frame_matrix)
    }
}

pub fn condition_number<S: Scalar>(m: &Mat<S>) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return f64::INFINITY;
    }
    let dm = DMatrix::<Complex64>::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_c64());
    let sv = dm.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

// Coefficients a_0..a_{D+1} with sum_n a_n Λ_n b = p(A) b and a_0 = mu - c_0.
fn lambda_coordinates<S: Scalar>(p: &Poly<S>, mu: &S, len: usize) -> Vec<S> {
    let mut a = vec![S::zero(); len];
    for (n, slot) in a.iter_mut().enumerate().skip(1) {
        *slot = p.coeff(n - 1) - p.coeff(n);
    }
    a[0] = mu.clone() - p.coeff(0);
    a
}

pub fn build_plan<S: Scalar>(problem: &ProblemDef<S>) -> Result<RecoveryPlan<S>> {
    if !test_general(problem)?.complete {
        return Err(Error::NotComplete);
    }
    let chain = problem.chain()?;
    let l = problem.l();

    // p_{j,l}: the polynomial applied to b_l in g_j.
    let polys: Vec<Vec<Poly<S>>> = chain
        .links
        .iter()
        .enumerate()
        .map(|(j, link)| {
            (0..l)
                .map(|i| match i.cmp(&j) {
                    std::cmp::Ordering::Less => -&link.reps[i].hat(),
                    std::cmp::Ordering::Equal => link.conductor.hat(),
                    std::cmp::Ordering::Greater => Poly::zero(),
                })
                .collect()
        })
        .collect();
    let max_deg = polys.iter().flatten().filter_map(Poly::degree).max();
    let horizon = max_deg.map_or(1, |m| m + 2);

    let mut alpha = Vec::with_capacity(l);
    let mut mu = Vec::with_capacity(l);
    for (link, row) in chain.links.iter().zip(&polys) {
        let mu_j: Vec<S> = link.image_coeffs.iter().map(|c| -c.clone()).collect();
        let mut table = Mat::zeros(horizon, l);
        for (i, p) in row.iter().enumerate() {
            for (n, a) in lambda_coordinates(p, &mu_j[i], horizon)
                .into_iter()
                .enumerate()
            {
                table[(n, i)] = a.conj();
            }
        }
        alpha.push(table);
        mu.push(mu_j);
    }

    let characteristic = chain.characteristic_vectors();
    let frame: Vec<Vec<S>> = characteristic
        .iter()
        .map(|g| problem.projector().mul_vec(g))
        .collect::<Result<_>>()?;
    let w_basis = problem.w().vectors();
    let mut frame_matrix = Mat::zeros(l, problem.k());
    for (j, g) in characteristic.iter().enumerate() {
        for (k, w) in w_basis.iter().enumerate() {
            frame_matrix[(j, k)] = inner(w, g);
        }
    }
    let fs = frame_matrix.adjoint();
    let dual = inverse(&fs.mul(&frame_matrix)?)?.mul(&fs)?;
    Ok(RecoveryPlan {
        horizon,
        alpha,
        characteristic,
        frame,
        mu,
        w_basis,
        frame_matrix,
        dual,
    })
}

/// A recovered source: `omega = sum_k coeffs[k] ω_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recovered<S> {
    pub omega: Vec<S>,
    pub coeffs: Vec<S>,
}

pub fn recover<S: Scalar>(
    plan: &RecoveryPlan<S>,
    measurements: &MeasurementSeries<S>,
) -> Result<Recovered<S>> {
    if measurements.sensors() != plan.sensors() {
        return Err(Error::DimensionMismatch {
            expected: plan.sensors(),
            found: measurements.sensors(),
        });
    }
    for (l, ys) in measurements.series.iter().enumerate() {
        if ys.len() < plan.horizon {
            return Err(Error::InsufficientSamples {
                sensor: l + 1,
                needed: plan.horizon,
                found: ys.len(),
            });
        }
    }
    let z: Vec<S> = plan
        .alpha
        .iter()
        .map(|table| {
            let mut acc = S::zero();
            for n in 0..plan.horizon {
                for (l, ys) in measurements.series.iter().enumerate() {
                    let a = &table[(n, l)];
                    if !a.is_exact_zero() {
                        acc = acc + a.clone() * ys[n].clone();
                    }
                }
            }
            acc
        })
        .collect();
    let coeffs = plan.dual.mul_vec(&z)?;
    let d = plan.w_basis.first().map_or(0, Vec::len);
    let mut omega = vec![S::zero(); d];
    for (c, w) in coeffs.iter().zip(&plan.w_basis) {
        crate::field::axpy(&mut omega, c, w);
    }
    Ok(Recovered { omega, coeffs })
}

/// Recovers every series against one plan.
pub fn recover_batch<S: Scalar>(
    plan: &RecoveryPlan<S>,
    batch: &[MeasurementSeries<S>],
    exec: Execution,
) -> Vec<Result<Recovered<S>>> {
    exec.map(batch, |m| recover(plan, m))
}

/// Two-sample recovery `c_1 = (y(1) - λ y(0)) / <ω_1, b>` for `A b = conj(λ) b`.
pub fn eigen_shortcut_recover<S: Scalar>(
    a: &Mat<S>,
    omega: &[S],
    b: &[S],
    lambda: &S,
    y0: &S,
    y1: &S,
) -> Result<S> {
    let ab = a.mul_vec(b)?;
    let expected: Vec<S> = b.iter().map(|x| x.clone() * lambda.conj()).collect();
    if !vclose(&ab, &expected) {
        return Err(Error::NotAnEigenvector);
    }
    let denom = inner(omega, b);
    if denom.is_zero() {
        return Err(Error::OrthogonalSensor);
    }
    Ok((y1.clone() - lambda.clone() * y0.clone()) / denom)
}
