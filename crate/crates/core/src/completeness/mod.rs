//! Completeness of observational sets, single-source analysis and sensor placement.

mod placement;
mod single;
mod spectral;

pub use placement::{placement_default, placement_greedy, placement_search, SearchResult};
pub use single::{
    fitting_projector_eig1, single_source_construct, single_source_exists, single_vector_test,
};
pub use spectral::spectral_projectors;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{is_zero_vec, kernel, rank, solve, Mat, Scalar, SubspaceBasis};
use crate::krylov::{conductor_chain, KrylovChain};

/// The operator, the source space and an ordered observational set.
#[derive(Clone, Debug)]
pub struct ProblemDef<S> {
    a: Mat<S>,
    w: SubspaceBasis<S>,
    projector: Mat<S>,
    sensors: Vec<Vec<S>>,
}

impl<S: Scalar> ProblemDef<S> {
    /// `w` must be a nonempty independent family; sensors must be nonzero.
    pub fn new(a: Mat<S>, w: &[Vec<S>], sensors: Vec<Vec<S>>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: a.cols(),
            });
        }
        let d = a.rows();
        if w.is_empty() {
            return Err(Error::EmptySubspace);
        }
        let w = SubspaceBasis::from_independent(d, w)?;
        let projector = w.projector()?;
        let problem = ProblemDef {
            a,
            w,
            projector,
            sensors: Vec::new(),
        };
        problem.with_sensors(sensors)
    }

    /// Same operator and source space with a different observational set.
    pub fn with_sensors(&self, sensors: Vec<Vec<S>>) -> Result<Self> {
        for b in &sensors {
            if b.len() != self.d() {
                return Err(Error::DimensionMismatch {
                    expected: self.d(),
                    found: b.len(),
                });
            }
            if is_zero_vec(b) {
                return Err(Error::ZeroVector);
            }
        }
        Ok(ProblemDef {
            a: self.a.clone(),
            w: self.w.clone(),
            projector: self.projector.clone(),
            sensors,
        })
    }

    pub fn a(&self) -> &Mat<S> {
        &self.a
    }

    pub fn w(&self) -> &SubspaceBasis<S> {
        &self.w
    }

    /// Orthogonal projector onto `W`.
    pub fn projector(&self) -> &Mat<S> {
        &self.projector
    }

    pub fn sensors(&self) -> &[Vec<S>] {
        &self.sensors
    }

    pub fn d(&self) -> usize {
        self.a.rows()
    }

    pub fn k(&self) -> usize {
        self.w.dim()
    }

    pub fn l(&self) -> usize {
        self.sensors.len()
    }

    pub fn chain(&self) -> Result<KrylovChain<S>> {
        conductor_chain(&self.a, &self.sensors)
    }

    fn sensor_matrix(&self) -> Mat<S> {
        Mat::from_columns(self.d(), &self.sensors).expect("sensor lengths checked")
    }

    fn project_all(&self, vectors: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
        vectors.iter().map(|v| self.projector.mul_vec(v)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    RankTest,
    GeneralTest,
    SingleSource,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::RankTest => "rank-test",
            Method::GeneralTest => "general-test",
            Method::SingleSource => "single-source",
        })
    }
}

/// Outcome of a completeness test.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict<S> {
    pub complete: bool,
    pub method: Method,
    /// Rank of the witness vectors.
    pub rank: usize,
    /// `K = dim W`.
    pub required: usize,
    /// Witness vectors in `W`: `P_W g_j` for the general test, the columns of
    /// `P_W (A - I)^{-1} B` for the rank test.
    pub witness: Vec<Vec<S>>,
    pub explanation: String,
}

/// Serializable form of a [`Verdict`] with scalars written as exact strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub complete: bool,
    pub method: Method,
    pub rank: usize,
    pub required: usize,
    pub witness: Vec<Vec<Value>>,
    pub explanation: String,
}

impl<S: Scalar> Verdict<S> {
    pub fn record(&self) -> VerdictRecord {
        VerdictRecord {
            complete: self.complete,
            method: self.method,
            rank: self.rank,
            required: self.required,
            witness: self
                .witness
                .iter()
                .map(|v| v.iter().map(Scalar::to_json).collect())
                .collect(),
            explanation: self.explanation.clone(),
        }
    }
}

pub fn has_eigenvalue_one<S: Scalar>(a: &Mat<S>) -> bool {
    !kernel(&a.shift(&S::one())).is_zero()
}

fn explain(complete: bool, rank: usize, k: usize, l: usize, what: &str) -> String {
    if l < k {
        format!("{l} observational vectors cannot cover a source space of dimension {k}")
    } else if complete {
        format!("{what} has rank {rank} = dim W")
    } else {
        format!("{what} has rank {rank} < dim W = {k}")
    }
}

/// Completeness via `rank(P_W (A - I)^{-1} B) = K`; needs `1 ∉ σ(A)`.
pub fn test_rank<S: Scalar>(problem: &ProblemDef<S>) -> Result<Verdict<S>> {
    let shifted = problem.a.shift(&S::one());
    if has_eigenvalue_one(&problem.a) {
        return Err(Error::EigenvalueOnePresent);
    }
    let (k, l) = (problem.k(), problem.l());
    let witness = if l == 0 {
        Vec::new()
    } else {
        let x = solve(&shifted, &problem.sensor_matrix())?;
        problem.project_all(&x.columns())?
    };
    let r = if witness.is_empty() {
        0
    } else {
        rank(&Mat::from_columns(problem.d(), &witness)?)
    };
    let complete = r == k;
    Ok(Verdict {
        complete,
        method: Method::RankTest,
        rank: r,
        required: k,
        witness,
        explanation: explain(complete, r, k, l, "P_W (A - I)^{-1} B"),
    })
}

/// Completeness via `span{P_W g_j} = W`, valid for every `A`.
pub fn test_general<S: Scalar>(problem: &ProblemDef<S>) -> Result<Verdict<S>> {
    let (k, l) = (problem.k(), problem.l());
    let chain = problem.chain()?;
    let witness = problem.project_all(&chain.characteristic_vectors())?;
    let r = if witness.is_empty() {
        0
    } else {
        rank(&Mat::from_columns(problem.d(), &witness)?)
    };
    let complete = l >= k && r == k;
    Ok(Verdict {
        complete,
        method: Method::GeneralTest,
        rank: r,
        required: k,
        witness,
        explanation: explain(complete, r, k, l, "span{P_W g_j}"),
    })
}

/// Rank test when it applies, the general test otherwise.
pub fn test_auto<S: Scalar>(problem: &ProblemDef<S>) -> Result<Verdict<S>> {
    match test_rank(problem) {
        Err(Error::EigenvalueOnePresent) => test_general(problem),
        other => other,
    }
}

/// Checks a user-supplied certificate: `B M = (A - I) G` and `span{P_W g_j} = W`.
pub fn verify_certificate<S: Scalar>(
    problem: &ProblemDef<S>,
    g: &[Vec<S>],
    m: &Mat<S>,
) -> Result<bool> {
    if g.is_empty() {
        return Ok(false);
    }
    let gm = Mat::from_columns(problem.d(), g)?;
    let lhs = problem.sensor_matrix().mul(m)?;
    let rhs = problem.a.shift(&S::one()).mul(&gm)?;
    if !lhs.close_to(&rhs) {
        return Ok(false);
    }
    let projected = problem.projector.mul(&gm)?;
    Ok(rank(&projected) == problem.k())
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
    fn eigenvalue_one_detection() {
        assert!(has_eigenvalue_one(&Mat::<Q>::identity(3)));
        assert!(!has_eigenvalue_one(&Mat::diagonal(&[q(2), q(3)])));
        assert!(has_eigenvalue_one(&j7()));
    }

    #[test]
    fn rank_test_small_cases() {
        let a = Mat::diagonal(&[q(2), q(3)]);
        let p = ProblemDef::new(a.clone(), &[unit(2, 0)], vec![unit(2, 0)]).unwrap();
        assert!(test_rank(&p).unwrap().complete);
        let both = ProblemDef::new(a, &[unit(2, 0), unit(2, 1)], vec![unit(2, 0)]).unwrap();
        assert!(!test_rank(&both).unwrap().complete);
        let ex = Mat::from_rows(&[vec![q(1), q(0)], vec![q(1), q(1)]]).unwrap();
        let p = ProblemDef::new(ex, &[unit(2, 0)], vec![unit(2, 0)]).unwrap();
        assert_eq!(test_rank(&p), Err(Error::EigenvalueOnePresent));
    }

    #[test]
    fn general_test_on_jordan_example() {
        let base = ProblemDef::new(j7(), &[unit(7, 1)], vec![]).unwrap();
        let pair = base.with_sensors(vec![unit(7, 2), unit(7, 0)]).unwrap();
        assert!(test_general(&pair).unwrap().complete);
        for k in 0..7 {
            let single = base.with_sensors(vec![unit(7, k)]).unwrap();
            assert!(!test_general(&single).unwrap().complete, "e{} alone", k + 1);
        }
        let e1 = ProblemDef::new(j7(), &[unit(7, 0)], vec![unit(7, 1)]).unwrap();
        assert!(test_general(&e1).unwrap().complete);
    }

    #[test]
    fn problem_validation() {
        let a = Mat::<Q>::identity(2);
        assert_eq!(
            ProblemDef::new(a.clone(), &[], vec![]).unwrap_err(),
            Error::EmptySubspace
        );
        assert_eq!(
            ProblemDef::new(a.clone(), &[unit(2, 0)], vec![vec![q(0), q(0)]]).unwrap_err(),
            Error::ZeroVector
        );
        assert!(matches!(
            ProblemDef::new(a, &[unit(2, 0)], vec![unit(3, 0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn verdict_record_uses_exact_strings() {
        let a = Mat::diagonal(&[q(2), q(3)]);
        let p = ProblemDef::new(a, &[unit(2, 0)], vec![unit(2, 0)]).unwrap();
        let rec = test_rank(&p).unwrap().record();
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json["method"], "rank-test");
        assert_eq!(json["witness"][0][0], "1/1");
    }

    #[test]
    fn certificate_from_chain_is_accepted() {
        let p = ProblemDef::new(j7(), &[unit(7, 1)], vec![unit(7, 2), unit(7, 0)]).unwrap();
        let chain = p.chain().unwrap();
        let g = chain.characteristic_vectors();
        let m = Mat::from_columns(
            2,
            &chain
                .links
                .iter()
                .map(|l| l.image_coeffs.clone())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(verify_certificate(&p, &g, &m).unwrap());
        let wrong = m.scale(&q(2));
        assert!(!verify_certificate(&p, &g, &wrong).unwrap());
    }
}
