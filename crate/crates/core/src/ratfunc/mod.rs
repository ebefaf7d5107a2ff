//! Polynomials over `F_q`, the rational function field `F_q(t)`, and
//! polynomials over it.

mod bipoly;
pub mod expr;
pub mod factor;
mod poly;
mod rat;
mod ratpoly;

pub use bipoly::{bipoly_ops, eval_at_rat, BiOp, BiPoly};
pub use factor::{poly_factor, Factorization};
pub use poly::{poly_arith, Poly, PolyOp, PolyResult};
pub use rat::{rat_arith, RatFunc, RatOp};
pub use ratpoly::{from_roots, rat_eval, RatPoly};
