//! Finite fields `F_{p^k}`.

mod elem;
mod ext;
mod field;

pub use elem::{gf_arith, gf_frobenius, gf_pow, GfElem, GfOp};
pub use ext::{embed, embedding, extend, gf_all_nth_roots, gf_nth_root};
pub use field::{Elem, Field, FieldSpec, MAX_FIELD_SIZE};
pub(crate) use field::prime_factors;
