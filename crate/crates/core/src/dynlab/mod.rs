//! Dynamics of the binomial family `f_lambda = c1 x^d1 + c2 x^d2 + lambda`.

pub mod eps;
pub mod family;
pub mod height;
pub mod identities;
pub mod orbit;
pub mod params;
pub mod verdict;

pub use eps::{eps_sequences, EpsSequences};
pub use family::{classify, iterate, monic_normalize, BinomialFamily, Regime};
pub use height::{global_canonical_height, local_canonical_height, Exactness, HeightReport, LocalHeight};
pub use orbit::{preperiodic, OrbitReport, OrbitStatus};
pub use params::{distinct_root_count, param_preperiodicity_polys, ParamPoly};
pub use verdict::{prep_verdict, Outcome, Verdict};
