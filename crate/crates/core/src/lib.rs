//! Numerical laboratory for periodically kicked quantum systems.
//!
//! The crate builds Floquet operators for rank-N kicked Hamiltonians and the
//! spin-1 kicked top, and evaluates the diagnostics used to tell pure-point
//! quasi-energy behaviour from continuous behaviour at finite truncation:
//! Combescure's `B⁻¹(x)` series and its counting lower bounds, point masses,
//! the cotangent eigenphase identity, equidistribution of eigenphase
//! sequences (discrepancy, Erdős–Turán, Weyl sums), stroboscopic dynamics and
//! the Cantor staircase as a worked singular continuous measure.
//!
//! Everything here is pure computation: no IO, no global state. The crate is
//! `no_std` and only needs `alloc`.
//!
//! Phase convention: eigenphases are reported as `x ∈ [0, 2π)` with
//! eigenvalue `e^{ix}`. The unperturbed propagator is
//! `U = diag(e^{-iα_n T/ℏ}) = diag(e^{-iθ_n})`; see [`kicked::KickedSystemSpec::combescure_phase`]
//! for the map into the frame where the spectral identities are written.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod cantor;
pub mod dynamics;
pub mod kicked;
pub mod numtheory;
pub mod op;
pub mod quad;
pub mod spectra;
pub mod tol;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use op::{
    CMatrix, CVector, EigenphaseDecomposition, HermitianOperator, StateVector, UnitaryOperator,
};
