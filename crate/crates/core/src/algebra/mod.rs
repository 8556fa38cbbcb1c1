//! Exact coefficient arithmetic and the linear-algebra kernel.

mod field;
mod jordan_chevalley;
mod mat;
mod numfield;
mod poly;
mod ratfunc;
pub mod roots;
mod scalar;

pub use field::{fmt_q, parse_q, q_frac, q_int, q_pow, Field, Q};
pub use jordan_chevalley::{mult_jordan_chevalley, semisimple_part, squarefree_part};
pub use mat::{charpoly, column_echelon_basis, mat_subspaces, Mat, SpanBuilder, Subspaces};
pub use numfield::{NfElem, NumberField};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use roots::{default_eps, root_moduli_certified, ModulusInterval};
pub use scalar::{FieldDescriptor, Scalar};
