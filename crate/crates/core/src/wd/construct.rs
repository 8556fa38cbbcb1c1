use crate::algebra::{semisimple_part, q_int, q_pow, Mat, Scalar};
use crate::error::{Error, Result};
use crate::schur::{schur_derivation, schur_of_matrix, Partition};

use super::rep::{InertiaGen, WDRep};

fn check_compatible(a: &WDRep, b: &WDRep) -> Result<()> {
    if a.q() != b.q() {
        return Err(Error::MismatchedQ(a.q(), b.q()));
    }
    if a.field() != b.field() {
        return Err(Error::MismatchedField(a.field().name(), b.field().name()));
    }
    Ok(())
}

/// Labels of `a` in order, then those of `b` not already present.
fn merged_labels(a: &WDRep, b: &WDRep) -> Vec<String> {
    let mut out: Vec<String> = a.labels().into_iter().map(String::from).collect();
    for l in b.labels() {
        if !out.iter().any(|x| x == l) {
            out.push(l.into());
        }
    }
    out
}

fn gen_or_identity(rho: &WDRep, label: &str) -> Mat {
    rho.inertia_matrix(label)
        .cloned()
        .unwrap_or_else(|| Mat::identity(rho.dim(), rho.field().clone()))
}

/// `Sp_t(r)`: `t` copies of `r`, block `i` with Frobenius `phi_r q^{-i}`,
/// `N` mapping block `i` identically onto block `i+1`.
pub fn sp_construct(t: usize, r: &WDRep) -> Result<WDRep> {
    if t == 0 {
        return Err(Error::DimensionMismatch("Sp_t needs t >= 1".into()));
    }
    if !r.nilp().is_zero() {
        return Err(Error::NonzeroMonodromy);
    }
    let m = r.dim();
    let field = r.field().clone();
    let q = q_int(r.q() as i64);
    let mut phi = Mat::zeros(0, 0, field.clone());
    for i in 0..t {
        phi = phi.block_diag(&r.phi().scale(&Scalar::Rat(q_pow(&q, -(i as i64)))));
    }
    let mut nilp = Mat::zeros(t * m, t * m, field.clone());
    for i in 0..t.saturating_sub(1) {
        for a in 0..m {
            nilp.set((i + 1) * m + a, i * m + a, Scalar::int(1));
        }
    }
    let inertia = r
        .inertia()
        .iter()
        .map(|g| {
            let mut blocks = Mat::zeros(0, 0, field.clone());
            for _ in 0..t {
                blocks = blocks.block_diag(&g.matrix);
            }
            InertiaGen {
                label: g.label.clone(),
                matrix: blocks,
            }
        })
        .collect();
    Ok(WDRep::new(r.q(), field, phi, nilp, inertia))
}

/// Tensor product; inertia generators are matched by label, a label
/// missing on one side acting as the identity there.
pub fn wd_tensor(a: &WDRep, b: &WDRep) -> Result<WDRep> {
    check_compatible(a, b)?;
    let field = a.field().clone();
    let ia = Mat::identity(a.dim(), field.clone());
    let ib = Mat::identity(b.dim(), field.clone());
    let phi = a.phi().kron(b.phi());
    let nilp = ia.kron(b.nilp()).add(&a.nilp().kron(&ib));
    let inertia = merged_labels(a, b)
        .into_iter()
        .map(|label| InertiaGen {
            matrix: gen_or_identity(a, &label).kron(&gen_or_identity(b, &label)),
            label,
        })
        .collect();
    Ok(WDRep::new(a.q(), field, phi, nilp, inertia))
}

/// Block-diagonal sum, inertia matched by label as in [`wd_tensor`].
pub fn wd_direct_sum(a: &WDRep, b: &WDRep) -> Result<WDRep> {
    check_compatible(a, b)?;
    let inertia = merged_labels(a, b)
        .into_iter()
        .map(|label| InertiaGen {
            matrix: gen_or_identity(a, &label).block_diag(&gen_or_identity(b, &label)),
            label,
        })
        .collect();
    Ok(WDRep::new(
        a.q(),
        a.field().clone(),
        a.phi().block_diag(b.phi()),
        a.nilp().block_diag(b.nilp()),
        inertia,
    ))
}

/// The Schur functor applied to a Weil-Deligne representation: group
/// elements act through `S_μ` of their matrices, `N` through the induced
/// derivation.
pub fn wd_schur(rho: &WDRep, mu: &Partition) -> Result<WDRep> {
    let phi = schur_of_matrix(rho.phi(), mu)?;
    let nilp = schur_derivation(rho.nilp(), mu)?;
    let inertia = rho
        .inertia()
        .iter()
        .map(|g| {
            Ok(InertiaGen {
                label: g.label.clone(),
                matrix: schur_of_matrix(&g.matrix, mu)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WDRep::new(rho.q(), rho.field().clone(), phi, nilp, inertia))
}

/// Replaces Frobenius by its semisimple Jordan-Chevalley part. Inertia acts
/// through a finite group and is already semisimple, so it is kept.
pub fn frobenius_semisimplify(rho: &WDRep) -> Result<WDRep> {
    Ok(rho.with_phi(semisimple_part(rho.phi())?))
}
