use num_traits::{One, Zero};

use super::partition::Partition;
use crate::algebra::{Field, FieldDescriptor, Mat, Scalar};

/// Complete homogeneous symmetric functions `h_0..=h_m` from power sums
/// `p_1..=p_m` via Newton's identities `k h_k = Σ_{i=1..k} p_i h_{k-i}`.
pub fn complete_from_power_sums(power_sums: &[Scalar]) -> Vec<Scalar> {
    let mut h = vec![Scalar::one()];
    for k in 1..=power_sums.len() {
        let s = (1..=k).fold(Scalar::zero(), |acc, i| &acc + &(&power_sums[i - 1] * &h[k - i]));
        h.push(&s / &Scalar::from_i64(k as i64));
    }
    h
}

/// The Schur polynomial `s_μ` at the eigenvalues whose power sums are
/// `p_1..p_d`, from the Jacobi-Trudi determinant `det(h_{μ_i - i + j})`.
/// With `p_k = tr(A^k)` this is the trace of `A` on `S_μ`.
pub fn schur_trace_oracle(power_sums: &[Scalar], mu: &Partition) -> Scalar {
    let d = mu.size();
    assert!(power_sums.len() >= d, "need {d} power sums");
    let h = complete_from_power_sums(&power_sums[..d]);
    let l = mu.num_rows();
    let field = power_sums
        .iter()
        .find_map(|s| match s {
            Scalar::Rf(_) => Some(FieldDescriptor::Qt),
            Scalar::Nf(e) => Some(FieldDescriptor::NumberField(e.field().clone())),
            Scalar::Rat(_) => None,
        })
        .unwrap_or(FieldDescriptor::Q);
    let jt = Mat::from_fn(l, l, field, |i, j| {
        let k = mu.parts()[i] as i64 - i as i64 + j as i64;
        if k < 0 {
            Scalar::zero()
        } else {
            h[k as usize].clone()
        }
    });
    jt.det().expect("Jacobi-Trudi matrix is square")
}
