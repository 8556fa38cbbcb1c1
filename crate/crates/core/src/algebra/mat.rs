use std::fmt;

use num_traits::{One, Zero};

use super::field::Field;
use super::poly::Poly;
use super::scalar::{FieldDescriptor, Scalar};
use crate::error::{Error, Result};

/// A dense row-major matrix over an exact coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: FieldDescriptor,
}

/// Rank together with canonical kernel and image bases (as columns).
#[derive(Clone, Debug, PartialEq)]
pub struct Subspaces {
    pub rank: usize,
    pub kernel_basis: Mat,
    pub image_basis: Mat,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, field: FieldDescriptor) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
            field,
        }
    }

    pub fn identity(n: usize, field: FieldDescriptor) -> Self {
        Self::from_fn(n, n, field, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: FieldDescriptor,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        Self { rows, cols, data, field }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: FieldDescriptor) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            field,
        }
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>], field: FieldDescriptor) -> Self {
        Self::from_fn(rows, columns.len(), field, |i, j| columns[j][i].clone())
    }

    pub fn diag(entries: &[Scalar], field: FieldDescriptor) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, field, |i, j| if i == j { entries[i].clone() } else { Scalar::zero() })
    }

    /// The matrix unit with a single one at `(i, j)` (0-indexed).
    pub fn unit(n: usize, i: usize, j: usize, field: FieldDescriptor) -> Self {
        let mut m = Self::zeros(n, n, field);
        m.set(i, j, Scalar::one());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn with_field(mut self, field: FieldDescriptor) -> Self {
        self.field = field;
        self
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// First entry (row, col) not belonging to the declared field.
    pub fn foreign_entry(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|s| !self.field.contains(s))
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            field: self.field.clone(),
        }
    }

    pub fn try_map<E>(&self, field: FieldDescriptor, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<Mat, E> {
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, E>>()?,
            field,
        })
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.field.clone(), |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        self.map(|e| e * c)
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
            field: self.field.clone(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
            field: self.field.clone(),
        }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        let mut out = Mat::zeros(self.rows, o.cols, self.field.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.rows, self.field.clone());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Kronecker product; index `(i1, i2)` maps to `i1 * other.rows + i2`.
    pub fn kron(&self, o: &Mat) -> Mat {
        Mat::from_fn(self.rows * o.rows, self.cols * o.cols, self.field.clone(), |i, j| {
            self.get(i / o.rows, j / o.cols) * o.get(i % o.rows, j % o.cols)
        })
    }

    pub fn block_diag(&self, o: &Mat) -> Mat {
        let (r, c) = (self.rows, self.cols);
        Mat::from_fn(r + o.rows, c + o.cols, self.field.clone(), |i, j| {
            if i < r && j < c {
                self.get(i, j).clone()
            } else if i >= r && j >= c {
                o.get(i - r, j - c).clone()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        Mat::from_fn(self.rows, self.cols + o.cols, self.field.clone(), |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        })
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(rows.len(), cols.len(), self.field.clone(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Reduced row echelon form and pivot columns. Pivots are the first
    /// nonzero entry found scanning rows top-down in each column.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn subspaces(&self) -> Subspaces {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let kernel: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect();
        let image: Vec<Vec<Scalar>> = self.columns();
        Subspaces {
            rank: pivots.len(),
            kernel_basis: column_echelon_basis(self.cols, &kernel, self.field.clone()),
            image_basis: column_echelon_basis(self.rows, &image, self.field.clone()),
        }
    }

    pub fn kernel(&self) -> Mat {
        self.subspaces().kernel_basis
    }

    pub fn image(&self) -> Mat {
        column_echelon_basis(self.rows, &self.columns(), self.field.clone())
    }

    pub fn det(&self) -> Result<Scalar> {
        self.require_square()?;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Mat> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hstack(&Mat::identity(n, self.field.clone()));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.select(&rows, &cols))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// `det(xI - M)`, computed through a Hessenberg reduction with exact
    /// field operations.
    pub fn charpoly(&self) -> Result<Poly<Scalar>> {
        self.require_square()?;
        let n = self.rows;
        let mut h = self.to_rows();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let piv_inv = h[m][m - 1].inv();
            for i in m + 1..n {
                let u = &h[i][m - 1] * &piv_inv;
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &h[i][j] - &(&u * &h[m][j]);
                    h[i][j] = v;
                }
                for row in h.iter_mut() {
                    let v = &row[m] + &(&u * &row[i]);
                    row[m] = v;
                }
            }
        }
        let mut p: Vec<Poly<Scalar>> = vec![Poly::one()];
        for m in 1..=n {
            let mut pm = &Poly::linear(h[m - 1][m - 1].clone()) * &p[m - 1];
            let mut t = Scalar::one();
            for i in 1..m {
                t = &t * &h[m - i][m - i - 1];
                if t.is_zero() {
                    break;
                }
                let c = &t * &h[m - i - 1][m - 1];
                pm = &pm - &p[m - i - 1].scale(&c);
            }
            p.push(pm);
        }
        Ok(p.pop().unwrap())
    }

    /// Evaluates a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &Poly<Scalar>) -> Mat {
        let n = self.rows;
        let mut acc = Mat::zeros(n, n, self.field.clone());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Coordinates of `v` in the basis given by the columns of `basis`
    /// (assumed independent); `None` when `v` is outside their span.
    pub fn coordinates(basis: &Mat, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let k = basis.cols;
        let aug = basis.hstack(&Mat::from_columns(basis.rows, &[v.to_vec()], basis.field.clone()));
        let (r, pivots) = aug.rref();
        if pivots.contains(&k) {
            return None;
        }
        debug_assert_eq!(pivots.len(), k, "basis columns are dependent");
        Some((0..k).map(|i| r.get(i, k).clone()).collect())
    }

    /// Matrix of `self` restricted to the invariant subspace spanned by the
    /// columns of `basis`. Panics if the subspace is not invariant.
    pub fn restrict_to(&self, basis: &Mat) -> Mat {
        let k = basis.cols;
        let images = self.mul(basis);
        let aug = basis.hstack(&images);
        let (r, pivots) = aug.rref();
        assert!(pivots.iter().all(|&p| p < k), "subspace is not invariant");
        Mat::from_fn(k, k, self.field.clone(), |i, j| r.get(i, k + j).clone())
    }

    /// Over a number field of degree e, the rational `ne x ne` matrix of the
    /// same operator viewed over Q. Its characteristic polynomial is the
    /// norm of the original one. Other fields are returned unchanged.
    pub fn restrict_scalars(&self) -> Mat {
        let FieldDescriptor::NumberField(k) = &self.field else {
            return self.clone();
        };
        let e = k.degree();
        let mut out = Mat::zeros(self.rows * e, self.cols * e, FieldDescriptor::Q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                match self.get(i, j) {
                    Scalar::Nf(a) => {
                        let mm = a.multiplication_matrix();
                        for (bi, row) in mm.into_iter().enumerate() {
                            for (bj, v) in row.into_iter().enumerate() {
                                out.set(i * e + bi, j * e + bj, Scalar::Rat(v));
                            }
                        }
                    }
                    s => {
                        for b in 0..e {
                            out.set(i * e + b, j * e + b, s.clone());
                        }
                    }
                }
            }
        }
        out
    }
}

/// Incrementally grown span of vectors, kept in row echelon form.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if it is independent of the current span; reports whether
    /// the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        self.rows.push((p, r.iter().map(|x| x * &inv).collect()));
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Canonical basis of the span of `vectors` (each of length `len`): the
/// nonzero rows of the reduced row echelon form of the matrix having the
/// vectors as rows, returned as columns.
pub fn column_echelon_basis(len: usize, vectors: &[Vec<Scalar>], field: FieldDescriptor) -> Mat {
    if vectors.is_empty() {
        return Mat::zeros(len, 0, field);
    }
    let m = Mat::from_rows(vectors.to_vec(), field.clone());
    let (r, pivots) = m.rref();
    Mat::from_fn(len, pivots.len(), field, |i, j| r.get(j, i).clone())
}

/// Rank, kernel basis and image basis of `m`.
pub fn mat_subspaces(m: &Mat) -> Subspaces {
    m.subspaces()
}

/// `det(xI - M)`.
pub fn charpoly(m: &Mat) -> Result<Poly<Scalar>> {
    m.charpoly()
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
