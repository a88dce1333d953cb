//! Schmidt-number certification from correlations in arbitrary coordinated
//! measurement bases.
//!
//! The crate is organised bottom-up:
//!
//! * [`qcore`]: complex linear algebra, bipartite states, bases and overlap tables.
//! * [`numtheory`]: exact integer arithmetic and quadratic Gauss sums.
//! * [`bases`]: constructors for every measurement-basis family.
//! * [`witness`]: witness value, tight and loosened bounds, fidelity bounds, certification.
//! * [`states`]: isotropic and noisy purified thermal benchmark families.
//! * [`analysis`]: noise thresholds, bias tolerances, Welch/Lévy diagnostics, quartic optimiser.
//! * [`baseline`]: the fidelity-based comparison witness built on tilted bases.
//! * [`json`]: serialization formats shared with the command-line front end.
//!
//! Data-parallel loops go through [`exec::Exec`], which dispatches to rayon when
//! the `parallel` feature is enabled and runs sequentially otherwise.

pub mod analysis;
pub mod baseline;
pub mod bases;
pub mod error;
pub mod exec;
pub mod json;
pub mod numtheory;
pub mod qcore;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use exec::Exec;
pub use qcore::{
    Basis, BasisSet, CMatrix, CVector, DensityMatrix, Ket, MeasuredCounts, OverlapTable,
};
