//! Numerical harmonic analysis on the affine, Weyl–Heisenberg, and shearlet
//! groups: square-integrable representations, matrix coefficients and
//! admissibility constants, linear-dependency certificates for translations,
//! independence probes via Gram spectra, and exact group-ring convolution.
//!
//! Hot loops run on rayon when the default `parallel` feature is enabled;
//! disabling it swaps in identical sequential kernels.

pub mod coefficients;
pub mod dependency;
pub mod error;
pub mod exec;
pub mod functions;
pub mod groupring;
pub mod groups;
pub mod numerics;
pub mod report;
pub mod representations;
pub mod suites;

pub use error::{Error, Result};
pub use numerics::C64;
