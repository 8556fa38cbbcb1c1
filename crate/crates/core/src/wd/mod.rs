//! Weil-Deligne representations and the constructions on them.

mod construct;
mod filtration;
mod purity;
mod rep;
mod signature;

pub use construct::{frobenius_semisimplify, sp_construct, wd_direct_sum, wd_schur, wd_tensor};
pub use filtration::{jordan_basis, monodromy_filtration, nilpotency_index, Filtration, JordanBasis};
pub use purity::{log_q_exact, purity_check, GradedPurity, PurityReport, PurityVerdict, WeightSpec};
pub(crate) use rep::enumerate_closure;
pub use rep::{
    inertia_closure, wd_validate, InertiaGen, Violation, WDRep, INERTIA_CLOSURE_CAP, INERTIA_ORDER_BOUND,
};
pub use signature::{fmt_charpoly, frss_signature, Signature, SignatureEntry};
