//! Hermite interpolation through Newton divided differences on repeated nodes.

use super::Poly;
use crate::error::{Error, Result};
use crate::field::Scalar;

/// The polynomial of degree `< sum n_i` matching `f^{(k)}(λ_i)` for
/// `k < n_i` at every node. `values[i]` lists `f(λ_i), f'(λ_i), ...`.
pub fn hermite_interpolant<S: Scalar>(nodes: &[(S, usize)], values: &[Vec<S>]) -> Result<Poly<S>> {
    if nodes.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: nodes.len(),
            found: values.len(),
        });
    }
    for (i, (li, _)) in nodes.iter().enumerate() {
        if nodes[..i].iter().any(|(lj, _)| lj == li) {
            return Err(Error::DuplicateNode);
        }
    }
    for ((_, n), vals) in nodes.iter().zip(values) {
        if vals.len() != *n {
            return Err(Error::DerivativeCount {
                expected: *n,
                found: vals.len(),
            });
        }
    }

    // Expanded node list z_0, z_1, ... with the owning node of each entry.
    let mut z: Vec<S> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    for (i, (l, n)) in nodes.iter().enumerate() {
        for _ in 0..*n {
            z.push(l.clone());
            owner.push(i);
        }
    }
    let total = z.len();
    if total == 0 {
        return Ok(Poly::zero());
    }

    // column[i] holds f[z_i, ..., z_{i+k}] for the current order k.
    let mut column: Vec<S> = owner.iter().map(|&o| values[o][0].clone()).collect();
    let mut newton = vec![column[0].clone()];
    let mut factorial = S::one();
    for k in 1..total {
        factorial = factorial * S::from_i64(k as i64);
        let next: Vec<S> = (0..total - k)
            .map(|i| {
                if owner[i] == owner[i + k] {
                    values[owner[i]][k].clone() / factorial.clone()
                } else {
                    (column[i + 1].clone() - column[i].clone()) / (z[i + k].clone() - z[i].clone())
                }
            })
            .collect();
        newton.push(next[0].clone());
        column = next;
    }

    let mut p = Poly::constant(newton[total - 1].clone());
    for k in (0..total - 1).rev() {
        p = &(&p * &Poly::linear(&z[k])) + &Poly::constant(newton[k].clone());
    }
    Ok(p)
}

/// Derivative data `f^{(k)}(λ)` for `f(x) = 1/(x - 1)` and `k < n`.
pub fn reciprocal_shift_values<S: Scalar>(lambda: &S, n: usize) -> Result<Vec<S>> {
    let base = lambda.clone() - S::one();
    if base.is_zero() {
        return Err(Error::EigenvalueOnePresent);
    }
    let inv = S::one() / base;
    let mut out = Vec::with_capacity(n);
    // f^{(k)} = (-1)^k k! (λ-1)^{-(k+1)}
    let mut term = inv.clone();
    for k in 0..n {
        out.push(term.clone());
        term = -(term * S::from_i64(k as i64 + 1) * inv.clone());
    }
    Ok(out)
}

/// Derivative data of the indicator of node `target`: value 1 there with
/// vanishing derivatives, and identically 0 at the other nodes.
pub fn indicator_values<S: Scalar>(nodes: &[(S, usize)], target: usize) -> Vec<Vec<S>> {
    nodes
        .iter()
        .enumerate()
        .map(|(i, (_, n))| {
            let mut v = vec![S::zero(); *n];
            if i == target && *n > 0 {
                v[0] = S::one();
            }
            v
        })
        .collect()
}
