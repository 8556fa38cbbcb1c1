use std::collections::BTreeMap;

use crate::algebra::{column_echelon_basis, FieldDescriptor, Mat, Scalar, SpanBuilder};
use crate::error::{Error, Result};

/// A Jordan basis of a nilpotent operator: the columns of `basis` are the
/// chains `v, Nv, .., N^{len-1}v` one after another, longest chains first.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanBasis {
    pub basis: Mat,
    /// `(first column, length)` of each chain.
    pub chains: Vec<(usize, usize)>,
}

impl JordanBasis {
    /// Monodromy weight of each basis column: a chain of length `s` gets
    /// `s-1, s-3, .., 1-s` from head to tail.
    pub fn weights(&self) -> Vec<i64> {
        let mut w = Vec::with_capacity(self.basis.cols());
        for &(_, len) in &self.chains {
            w.extend((0..len).map(|i| len as i64 - 1 - 2 * i as i64));
        }
        w
    }

    /// Columns holding the last vector of each chain of length exactly `len`.
    pub fn tails_of_length(&self, len: usize) -> Vec<usize> {
        self.chains
            .iter()
            .filter(|c| c.1 == len)
            .map(|&(start, l)| start + l - 1)
            .collect()
    }

    pub fn max_chain(&self) -> usize {
        self.chains.iter().map(|c| c.1).max().unwrap_or(0)
    }

    /// Indices of basis columns of weight `k`.
    pub fn weight_indices(&self, k: i64) -> Vec<usize> {
        self.weights()
            .iter()
            .enumerate()
            .filter(|(_, &w)| w == k)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Smallest `s` with `N^s = 0`, or `NotNilpotent`.
pub fn nilpotency_index(nilp: &Mat) -> Result<usize> {
    if !nilp.is_square() {
        return Err(Error::NonSquare {
            rows: nilp.rows(),
            cols: nilp.cols(),
        });
    }
    let n = nilp.rows();
    let mut p = Mat::identity(n, nilp.field().clone());
    for s in 0..=n {
        if p.is_zero() {
            return Ok(s);
        }
        p = p.mul(nilp);
    }
    Err(Error::NotNilpotent)
}

/// Jordan chains of a nilpotent operator, built top-down from the kernels
/// `ker N^j`: a new chain of length `j` starts at each vector of `ker N^j`
/// independent of `ker N^{j-1}` and of the level-`j` vectors of longer chains.
pub fn jordan_basis(nilp: &Mat) -> Result<JordanBasis> {
    let s = nilpotency_index(nilp)?;
    let n = nilp.rows();
    let field = nilp.field().clone();
    let mut powers = vec![Mat::identity(n, field.clone())];
    for j in 1..=s {
        powers.push(powers[j - 1].mul(nilp));
    }
    let kernels: Vec<Mat> = powers.iter().map(Mat::kernel).collect();
    let mut chains: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for j in (1..=s).rev() {
        let mut span = SpanBuilder::new();
        for v in kernels[j - 1].columns() {
            span.insert(&v);
        }
        for ch in &chains {
            span.insert(&ch[ch.len() - j]);
        }
        for v in kernels[j].columns() {
            if span.insert(&v) {
                let mut chain = vec![v];
                for _ in 1..j {
                    let next = nilp.mul_vec(chain.last().unwrap());
                    chain.push(next);
                }
                chains.push(chain);
            }
        }
    }
    let mut cols = Vec::with_capacity(n);
    let mut spans = Vec::with_capacity(chains.len());
    for ch in chains {
        spans.push((cols.len(), ch.len()));
        cols.extend(ch);
    }
    debug_assert_eq!(cols.len(), n);
    Ok(JordanBasis {
        basis: Mat::from_columns(n, &cols, field),
        chains: spans,
    })
}

/// An increasing filtration of `field^dim`; `steps[k]` is a canonical
/// column-echelon basis of `M_k`. Below the first stored index `M_k = 0`,
/// above the last `M_k` is everything.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    dim: usize,
    field: FieldDescriptor,
    steps: BTreeMap<i64, Mat>,
}

impl Filtration {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn steps(&self) -> &BTreeMap<i64, Mat> {
        &self.steps
    }

    pub fn step(&self, k: i64) -> Mat {
        match (self.steps.first_key_value(), self.steps.last_key_value()) {
            (Some((&lo, _)), _) if k < lo => Mat::zeros(self.dim, 0, self.field.clone()),
            (_, Some((&hi, _))) if k > hi => Mat::identity(self.dim, self.field.clone()),
            (None, None) => Mat::identity(self.dim, self.field.clone()),
            _ => self.steps[&k].clone(),
        }
    }

    pub fn graded_dim(&self, k: i64) -> usize {
        self.step(k).cols() - self.step(k - 1).cols()
    }

    /// `(k, dim gr_k)` for every nonzero graded piece.
    pub fn graded_dims(&self) -> Vec<(i64, usize)> {
        let Some((&lo, _)) = self.steps.first_key_value() else {
            return Vec::new();
        };
        let hi = *self.steps.last_key_value().unwrap().0;
        (lo..=hi)
            .map(|k| (k, self.graded_dim(k)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    /// Builds a filtration from arbitrary spanning sets of each step.
    pub fn from_spanning_sets(dim: usize, field: FieldDescriptor, sets: BTreeMap<i64, Vec<Vec<Scalar>>>) -> Self {
        let steps = sets
            .into_iter()
            .map(|(k, vs)| (k, column_echelon_basis(dim, &vs, field.clone())))
            .collect();
        Self { dim, field, steps }
    }
}

/// The monodromy filtration of a nilpotent operator, read off a Jordan
/// basis: `M_k` is spanned by the chain vectors of weight at most `k`.
/// Steps are stored for `k` from `-s` (zero) to `s-1` (everything), where
/// `s` is the longest chain.
pub fn monodromy_filtration(nilp: &Mat) -> Result<Filtration> {
    let jb = jordan_basis(nilp)?;
    let n = nilp.rows();
    let weights = jb.weights();
    let s = jb.max_chain() as i64;
    let mut sets = BTreeMap::new();
    if n > 0 {
        for k in -s..s {
            let vs = (0..n).filter(|&i| weights[i] <= k).map(|i| jb.basis.column(i)).collect();
            sets.insert(k, vs);
        }
    }
    Ok(Filtration::from_spanning_sets(n, nilp.field().clone(), sets))
}
