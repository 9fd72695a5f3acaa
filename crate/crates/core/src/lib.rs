//! Simulation laboratory for passive quantum property testing of Boolean
//! functions.
//!
//! The crate is organised bottom-up:
//!
//! * [`boolfn`]: truth tables, Walsh spectra, property predicates and exact
//!   distance oracles.
//! * [`qstate`]: measurement statistics of function, phase and subset states,
//!   sampled exactly from the truth table, plus copy accounting.
//! * [`testers`]: the passive testers (monotonicity, symmetry,
//!   triangle-freeness, Maiorana–McFarland membership, 2-fold intersection)
//!   and the classical triangle baseline.
//! * [`ensembles`]: hard-instance generators with exact certification.
//! * [`spectra`]: dense state vectors and density matrices, a cyclic Jacobi
//!   eigensolver, and the closed-form combinatorics of twin-ensemble
//!   difference matrices.
//! * [`experiment`]: seeded, reproducible experiment runner behind the CLI.

pub mod boolfn;
pub mod ensembles;
pub mod error;
pub mod experiment;
pub mod qstate;
pub mod spectra;
pub mod testers;

pub use boolfn::{BooleanFunction, DistanceReport, FourierSpectrum};
pub use error::{Error, Result};
pub use qstate::{CopyLedger, RngStream, SubsetState};
