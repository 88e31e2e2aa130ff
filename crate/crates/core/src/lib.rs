//! Bound-state spectra and spinor wavefunctions of the Dirac equation with a
//! combined Hulthén and Yukawa-class potential plus a Coulomb-like tensor
//! coupling, under spin and pseudospin symmetry.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod limits;
pub mod oracle;
pub mod parallel;
pub mod potentials;
pub mod quadrature;
pub mod roots;
pub mod special;
pub mod spectra;
pub mod susyqm;
pub mod wavefunctions;

pub use error::{Result, SolverError};
pub use potentials::{PotentialParams, Symmetry, SymmetryLimit};
pub use spectra::{EnergyRoot, QuantumNumbers, SearchConfig};
