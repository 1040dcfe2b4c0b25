//! Numerical laboratory for the quantum Rabi model on a truncated Fock
//! space.
//!
//! The crate reconstructs the model, its unitary transforms, and its
//! renormalized variant, and exposes the observables of macroscopic quantum
//! tunneling: the ground-pair energy bifurcation, spontaneous Z₂-symmetry
//! breaking along the LMT1 (g → ∞) and LMT2 (r → 1) limits, N=2 SUSY at
//! resonance, and the effective instanton Euclidean action extracted from
//! the tunneling gap.
//!
//! Modules:
//! - [`operators`] — ladder operators, quadratures, parity, displacement,
//!   tensor products on the 2n-dimensional composite space.
//! - [`hamiltonians`] — H_QR, its renormalized and transformed variants, the
//!   U₀/U₁/U_φ unitaries, and the parity operators P, P̃.
//! - [`spectra`] — dense Hermitian eigensolution with truncation-convergence
//!   control, parity-sector labels, degeneracy and SUSY pattern detection.
//! - [`analysis`] — tunneling gap, Euclidean action, G(g), q₀, heat-kernel
//!   energies E±, resolvent distance, and the LMT1/LMT2 sweep drivers.
//! - [`oracle`] — independent position-grid discretization used to
//!   cross-validate the Fock pipeline.
//! - [`cli`] — the `rabi-lab` command-line front end with deterministic CSV
//!   output.
//!
//! Every runnable capability has a worked example under `examples/`; start
//! with `cargo run --release --example susy_resonance`.

pub mod analysis;
pub mod cli;
mod eigen;
pub mod error;
pub mod hamiltonians;
pub mod operators;
pub mod oracle;
pub mod spectra;

pub use error::{RabiError, Result};
pub use hamiltonians::ModelKind;
pub use operators::{ModelParams, OperatorMatrix};
pub use spectra::{SpectrumResult, TruncationSpec};
