//! Partitions, the group algebra of S_d, Young symmetrizers and the Schur
//! functor on matrices and on nilpotent derivations.

mod functor;
mod group_algebra;
mod partition;
mod symmetric;

pub use functor::{
    schur_basis, schur_derivation, schur_of_matrix, tensor_cap, tensor_image_dim, SchurBasis,
    DEFAULT_TENSOR_CAP, TENSOR_CAP_ENV,
};
pub use group_algebra::{young_symmetrizer, GroupAlgebraElement, Perm, YoungSymmetrizer};
pub use partition::{factorial, hook_content_dim, Partition};
pub use symmetric::{complete_from_power_sums, schur_trace_oracle};
