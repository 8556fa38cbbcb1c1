use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::group_algebra::{young_symmetrizer, GroupAlgebraElement};
use super::partition::{hook_content_dim, Partition};
use crate::algebra::{FieldDescriptor, Mat, Scalar, Q};
use crate::error::{Error, Result};

/// Environment variable overriding the tensor-space size cap.
pub const TENSOR_CAP_ENV: &str = "WEYLMOD_TENSOR_CAP";
pub const DEFAULT_TENSOR_CAP: usize = 4096;

/// Largest allowed `n^d`.
pub fn tensor_cap() -> usize {
    std::env::var(TENSOR_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_TENSOR_CAP)
}

fn tensor_size(n: usize, d: usize) -> Result<usize> {
    let cap = tensor_cap();
    match n.checked_pow(d as u32) {
        Some(s) if s <= cap => Ok(s),
        _ => Err(Error::ResourceCap { n, d, cap }),
    }
}

type SparseVec = BTreeMap<usize, Q>;

/// Big-endian digits of a flat tensor index: the first factor is the most
/// significant.
fn digits(mut idx: usize, n: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; d];
    for s in (0..d).rev() {
        out[s] = idx % n;
        idx /= n;
    }
    out
}

fn flat(ds: impl Iterator<Item = usize>, n: usize) -> usize {
    ds.fold(0, |acc, x| acc * n + x)
}

/// `e_I · x` for the right action `(m_1 ⊗ .. ⊗ m_d)·σ = m_σ(1) ⊗ .. ⊗ m_σ(d)`.
fn right_act(idx: usize, x: &GroupAlgebraElement, n: usize) -> SparseVec {
    let d = x.degree();
    let ds = digits(idx, n, d);
    let mut out = SparseVec::new();
    for (p, c) in x.terms() {
        let j = flat((0..d).map(|i| ds[p.apply(i)]), n);
        let e = out.entry(j).or_insert_with(Q::zero);
        *e += c;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Incremental row echelon form over sparse rational vectors. Each stored
/// row is normalized to 1 at its pivot, its smallest index.
#[derive(Default)]
struct SparseEchelon {
    rows: BTreeMap<usize, SparseVec>,
}

fn axpy(v: &mut SparseVec, c: &Q, row: &SparseVec) {
    for (k, x) in row {
        let e = v.entry(*k).or_insert_with(Q::zero);
        *e -= c * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

impl SparseEchelon {
    fn insert(&mut self, mut v: SparseVec) -> bool {
        for (p, row) in &self.rows {
            if let Some(c) = v.get(p).cloned() {
                axpy(&mut v, &c, row);
            }
        }
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for x in v.values_mut() {
            *x *= &inv;
        }
        self.rows.insert(p, v);
        true
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduced rows in pivot order.
    fn into_reduced(self) -> Vec<(usize, SparseVec)> {
        let mut rows: Vec<(usize, SparseVec)> = self.rows.into_iter().collect();
        for k in (0..rows.len()).rev() {
            let (pk, rk) = rows[k].clone();
            for row in rows.iter_mut().take(k) {
                if let Some(c) = row.1.get(&pk).cloned() {
                    axpy(&mut row.1, &c, &rk);
                }
            }
        }
        rows
    }
}

/// Canonical basis of the image of right multiplication by `x` on
/// `(Q^n)^{⊗d}`, as fully reduced sparse rows with their pivots. Stops
/// early once `stop_at` vectors have been found.
fn tensor_image(x: &GroupAlgebraElement, n: usize, stop_at: Option<usize>) -> Result<Vec<(usize, SparseVec)>> {
    let size = tensor_size(n, x.degree())?;
    let mut ech = SparseEchelon::default();
    for idx in 0..size {
        if stop_at.is_some_and(|s| ech.len() >= s) {
            break;
        }
        let v = right_act(idx, x, n);
        if !v.is_empty() {
            ech.insert(v);
        }
    }
    Ok(ech.into_reduced())
}

/// Dimension of `(Q^n)^{⊗d} · x`.
pub fn tensor_image_dim(x: &GroupAlgebraElement, n: usize) -> Result<usize> {
    Ok(tensor_image(x, n, None)?.len())
}

/// A basis of `S_μ(Q^n) ⊆ (Q^n)^{⊗d}`: the reduced row echelon form of the
/// image of the Young symmetrizer, one sparse vector per basis element.
/// Each vector has a 1 at its pivot and 0 at every other pivot, so the
/// coordinates of any vector in the span are its entries at the pivots.
#[derive(Clone, Debug)]
pub struct SchurBasis {
    pub mu: Partition,
    pub n: usize,
    pub dim: usize,
    vectors: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl SchurBasis {
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as the columns of an `n^d x dim` matrix.
    pub fn basis_matrix(&self, field: FieldDescriptor) -> Mat {
        let d = self.mu.size();
        let mut m = Mat::zeros(self.n.pow(d as u32), self.dim, field);
        for (j, v) in self.vectors.iter().enumerate() {
            for (i, c) in v {
                m.set(*i, j, Scalar::Rat(c.clone()));
            }
        }
        m
    }

    fn build(mu: &Partition, n: usize) -> Result<Self> {
        let d = mu.size();
        tensor_size(n, d)?;
        let dim = hook_content_dim(mu, n);
        let y = young_symmetrizer(mu);
        let rows = tensor_image(&y.c, n, Some(dim))?;
        assert_eq!(rows.len(), dim, "image of c_mu has the wrong dimension");
        let (pivots, vectors) = rows.into_iter().unzip();
        Ok(Self {
            mu: mu.clone(),
            n,
            dim,
            vectors,
            pivots,
        })
    }
}

type BasisCache = Mutex<HashMap<(Partition, usize), Arc<SchurBasis>>>;

fn cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The (memoized) Schur basis for `μ` on an `n`-dimensional space. The
/// basis is rational, so it serves every coefficient field.
pub fn schur_basis(mu: &Partition, n: usize) -> Result<Arc<SchurBasis>> {
    tensor_size(n, mu.size())?;
    let key = (mu.clone(), n);
    if let Some(b) = cache().lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let b = Arc::new(SchurBasis::build(mu, n)?);
    cache().lock().unwrap().entry(key).or_insert(b.clone());
    Ok(b)
}

struct Prepared {
    basis: Arc<SchurBasis>,
    pivot_digits: Vec<Vec<usize>>,
    supports: Vec<Vec<(Vec<usize>, Scalar)>>,
}

fn prepare(a: &Mat, mu: &Partition) -> Result<Prepared> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let d = mu.size();
    let basis = schur_basis(mu, n)?;
    let pivot_digits = basis.pivots.iter().map(|&p| digits(p, n, d)).collect();
    let supports = basis
        .vectors
        .iter()
        .map(|v| v.iter().map(|(i, c)| (digits(*i, n, d), Scalar::Rat(c.clone()))).collect())
        .collect();
    Ok(Prepared {
        basis,
        pivot_digits,
        supports,
    })
}

/// Matrix of `A^{⊗d}` on the Schur basis.
pub fn schur_of_matrix(a: &Mat, mu: &Partition) -> Result<Mat> {
    let pre = prepare(a, mu)?;
    let dim = pre.basis.dim;
    let mut out = Mat::zeros(dim, dim, a.field().clone());
    for (j, support) in pre.supports.iter().enumerate() {
        for (i, p) in pre.pivot_digits.iter().enumerate() {
            let mut acc = Scalar::zero();
            'terms: for (c, v) in support {
                let mut prod = v.clone();
                for (ps, cs) in p.iter().zip(c) {
                    let e = a.get(*ps, *cs);
                    if e.is_zero() {
                        continue 'terms;
                    }
                    prod = &prod * e;
                }
                acc = &acc + &prod;
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// Matrix of `Σ_i I ⊗ .. ⊗ N ⊗ .. ⊗ I` (N in slot i) on the Schur basis.
pub fn schur_derivation(nilp: &Mat, mu: &Partition) -> Result<Mat> {
    let pre = prepare(nilp, mu)?;
    let dim = pre.basis.dim;
    let mut out = Mat::zeros(dim, dim, nilp.field().clone());
    for (j, support) in pre.supports.iter().enumerate() {
        for (i, p) in pre.pivot_digits.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (c, v) in support {
                let mismatched: Vec<usize> = (0..p.len()).filter(|&s| p[s] != c[s]).collect();
                let term = match mismatched.as_slice() {
                    [] => p.iter().fold(Scalar::zero(), |s, &x| &s + nilp.get(x, x)),
                    [s] => nilp.get(p[*s], c[*s]).clone(),
                    _ => continue,
                };
                if !term.is_zero() {
                    acc = &acc + &(&term * v);
                }
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}
