use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{is_zero_vec, rank, solve, Mat, Scalar};
use crate::krylov::IncrementalBasis;

use super::{has_eigenvalue_one, test_general, ProblemDef};

/// `b_k = (I - A) ω_k`, complete with `L = K` whenever `1 ∉ σ(A)`.
pub fn placement_default<S: Scalar>(a: &Mat<S>, w: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
    if has_eigenvalue_one(a) {
        return Err(Error::EigenvalueOnePresent);
    }
    let i_minus_a = Mat::identity(a.rows()).sub(a)?;
    w.iter().map(|v| i_minus_a.mul_vec(v)).collect()
}

/// Minimal complete subsets found by [`placement_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// Indices into the pool, each subset ascending, subsets in lexicographic order.
    pub subsets: Vec<Vec<usize>>,
    /// Number of subsets evaluated.
    pub evaluated: usize,
}

impl SearchResult {
    pub fn size(&self) -> Option<usize> {
        self.subsets.first().map(Vec::len)
    }
}

// Columns of P_W (A - I)^{-1} b for each pool vector; None when 1 ∈ σ(A).
fn rank_signatures<S: Scalar>(
    base: &ProblemDef<S>,
    pool: &[Vec<S>],
) -> Result<Option<Vec<Vec<S>>>> {
    if has_eigenvalue_one(base.a()) || pool.is_empty() {
        return Ok(None);
    }
    let b = Mat::from_columns(base.d(), pool)?;
    let x = solve(&base.a().shift(&S::one()), &b)?;
    let sig = base.projector().mul(&x)?;
    Ok(Some(sig.columns()))
}

/// All complete subsets of the pool with the least cardinality `≤ max_l`.
/// Subsets are tried in size order, and each one is evaluated in pool order.
pub fn placement_search<S: Scalar>(
    base: &ProblemDef<S>,
    pool: &[Vec<S>],
    max_l: usize,
    exec: Execution,
) -> Result<SearchResult> {
    for v in pool {
        if v.len() != base.d() {
            return Err(Error::DimensionMismatch {
                expected: base.d(),
                found: v.len(),
            });
        }
    }
    let usable: Vec<usize> = (0..pool.len())
        .filter(|&i| !is_zero_vec(&pool[i]))
        .collect();
    let signatures = rank_signatures(base, pool)?;
    let k = base.k();
    let mut evaluated = 0;
    for size in k.max(1)..=max_l.min(usable.len()) {
        let candidates: Vec<Vec<usize>> = usable.iter().copied().combinations(size).collect();
        evaluated += candidates.len();
        let verdicts: Vec<Result<bool>> = exec.map(&candidates, |subset| match &signatures {
            Some(sig) => {
                let cols: Vec<Vec<S>> = subset.iter().map(|&i| sig[i].clone()).collect();
                Ok(rank(&Mat::from_columns(base.d(), &cols)?) == k)
            }
            None => {
                let sensors = subset.iter().map(|&i| pool[i].clone()).collect();
                Ok(test_general(&base.with_sensors(sensors)?)?.complete)
            }
        });
        let mut found = Vec::new();
        for (subset, verdict) in candidates.into_iter().zip(verdicts) {
            if verdict? {
                found.push(subset);
            }
        }
        if !found.is_empty() {
            found.sort();
            return Ok(SearchResult {
                subsets: found,
                evaluated,
            });
        }
    }
    Ok(SearchResult {
        subsets: Vec::new(),
        evaluated,
    })
}

/// A complete subset of size `K` chosen greedily in pool order, for `1 ∉ σ(A)`.
/// Completeness is a rank condition there, so the greedy choice is a basis of
/// the signature matroid and any complete pool yields a minimal answer.
pub fn placement_greedy<S: Scalar>(
    base: &ProblemDef<S>,
    pool: &[Vec<S>],
) -> Result<Option<Vec<usize>>> {
    if has_eigenvalue_one(base.a()) {
        return Err(Error::EigenvalueOnePresent);
    }
    let Some(signatures) = rank_signatures(base, pool)? else {
        return Ok(None);
    };
    let mut span: IncrementalBasis<S> = IncrementalBasis::new(base.d());
    let mut chosen = Vec::new();
    for (i, sig) in signatures.into_iter().enumerate() {
        if chosen.len() == base.k() {
            break;
        }
        if is_zero_vec(&pool[i]) || is_zero_vec(&sig) || span.contains(&sig) {
            continue;
        }
        span.insert(sig, ());
        chosen.push(i);
    }
    Ok((chosen.len() == base.k()).then_some(chosen))
}
