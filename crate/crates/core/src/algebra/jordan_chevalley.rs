use num_traits::Zero;

use super::field::Field;
use super::mat::Mat;
use super::poly::Poly;
use crate::error::{Error, Result};

/// `p / gcd(p, p')`, monic.
pub fn squarefree_part<F: Field>(p: &Poly<F>) -> Result<Poly<F>> {
    p.squarefree_part().ok_or(Error::ZeroPolynomial)
}

/// Semisimple part of a square matrix, without factoring its
/// characteristic polynomial.
///
/// With `f` the squarefree part of the characteristic polynomial, Newton's
/// iteration `S <- S - f(S) f'(S)^-1` started at `M` stays in `Q[M]` and
/// reaches `f(S) = 0` after at most `log2(dim) + 1` steps; `f'(S)` is
/// invertible throughout because `f` and `f'` are coprime.
pub fn semisimple_part(m: &Mat) -> Result<Mat> {
    let f = squarefree_part(&m.charpoly()?)?;
    let fp = f.derivative();
    let mut s = m.clone();
    for _ in 0..=usize::BITS {
        let fs = s.eval_poly(&f);
        if fs.is_zero() {
            return Ok(s);
        }
        let correction = fs.mul(&s.eval_poly(&fp).inverse()?);
        s = s.sub(&correction);
    }
    unreachable!("Newton iteration for the semisimple part did not terminate")
}

/// Multiplicative Jordan-Chevalley decomposition `M = S·U = U·S` of an
/// invertible matrix, with `S` semisimple and `U` unipotent.
pub fn mult_jordan_chevalley(m: &Mat) -> Result<(Mat, Mat)> {
    if m.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let s = semisimple_part(m)?;
    let s_inv = s.inverse()?;
    let n = Mat::identity(m.rows(), m.field().clone());
    // U = I + S^-1 (M - S) = S^-1 M
    let u = n.add(&s_inv.mul(&m.sub(&s)));
    Ok((s, u))
}
