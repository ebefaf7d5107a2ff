//! Expansion of iterates in the parameter and colliding orbits.

pub mod expand;
pub mod search;
pub mod target;

pub use expand::{expand_iterate, lemma51_check, IterateExpansion, Lemma51Report};
pub use search::{collision_search, collision_search_with, verify_hits, CollisionHit, CollisionSet};
pub use target::{polynomial_roots, target_param_polys, TargetPoly, TargetReport};
