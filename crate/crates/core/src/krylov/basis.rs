use crate::field::{axpy, Scalar};

/// Outcome of offering a vector to an [`IncrementalBasis`].
#[derive(Clone, Debug, PartialEq)]
pub enum Insertion<S> {
    /// The vector was independent and is now generator number `index`.
    Added { index: usize },
    /// The vector equals `sum coeffs[k] * generator_k` over the existing generators.
    Dependent { coeffs: Vec<S> },
}

#[derive(Clone, Debug)]
struct Row<S> {
    pivot: usize,
    reduced: Vec<S>,
    // reduced = sum comb[k] * generator_k
    comb: Vec<S>,
}

/// Span of a growing list of labelled generators, kept in triangular form so
/// each new vector is reduced in one pass and dependencies come back as
/// coordinates over the original generators.
#[derive(Clone, Debug)]
pub struct IncrementalBasis<S, L = ()> {
    dim: usize,
    rows: Vec<Row<S>>,
    generators: Vec<Vec<S>>,
    labels: Vec<L>,
    scale: f64,
}

impl<S: Scalar, L: Clone> IncrementalBasis<S, L> {
    pub fn new(dim: usize) -> Self {
        IncrementalBasis {
            dim,
            rows: Vec::new(),
            generators: Vec::new(),
            labels: Vec::new(),
            scale: 0.0,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Vec<S>] {
        &self.generators
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    fn reduce(&self, v: &[S]) -> (Vec<S>, Vec<S>) {
        let n = self.generators.len();
        let mut w = v.to_vec();
        let mut comb = vec![S::zero(); n + 1];
        comb[n] = S::one();
        for row in &self.rows {
            if w[row.pivot].is_exact_zero() {
                continue;
            }
            let f = -(w[row.pivot].clone() / row.reduced[row.pivot].clone());
            axpy(&mut w, &f, &row.reduced);
            w[row.pivot] = S::zero();
            axpy(&mut comb[..row.comb.len()], &f, &row.comb);
        }
        (w, comb)
    }

    fn pivot_of(&self, w: &[S], scale: f64) -> Option<usize> {
        if S::EXACT {
            return w.iter().position(|x| !x.is_zero());
        }
        let (k, best) = w
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))?;
        (!best.negligible(scale)).then_some(k)
    }

    /// Reduces `v` against the generators; adds it when independent.
    pub fn insert(&mut self, v: Vec<S>, label: L) -> Insertion<S> {
        debug_assert_eq!(v.len(), self.dim);
        let scale = self
            .scale
            .max(v.iter().map(Scalar::magnitude).fold(0.0, f64::max));
        let (w, comb) = self.reduce(&v);
        match self.pivot_of(&w, scale) {
            Some(pivot) => {
                self.scale = scale;
                let index = self.generators.len();
                self.rows.push(Row {
                    pivot,
                    reduced: w,
                    comb,
                });
                self.generators.push(v);
                self.labels.push(label);
                Insertion::Added { index }
            }
            None => {
                let n = self.generators.len();
                Insertion::Dependent {
                    coeffs: comb[..n].iter().map(|c| -c.clone()).collect(),
                }
            }
        }
    }

    /// Whether `v` lies in the current span.
    pub fn contains(&self, v: &[S]) -> bool {
        let scale = self
            .scale
            .max(v.iter().map(Scalar::magnitude).fold(0.0, f64::max));
        let (w, _) = self.reduce(v);
        self.pivot_of(&w, scale).is_none()
    }
}
