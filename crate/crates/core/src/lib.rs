//! Quasi-static quantum Otto engines with spin working media.
//!
//! The library models a four-stroke Otto cycle (two quantum adiabats, two
//! isochores) for two working media: a single spin of arbitrary magnitude in
//! a magnetic field, and a spin-1/2 coupled to a spin-s by isotropic
//! Heisenberg exchange. Units are chosen so that k_B = ħ = μ_B = 1 and the
//! gyromagnetic ratio is 2, so a lone spin has Zeeman levels 2mB.
//!
//! Everything is organized around label-indexed energy spectra: the adiabatic
//! strokes preserve occupation per label, so heats and work pair level k at
//! the hot field with level k at the cold field. Analytic spectra, canonical
//! ensembles, majorisation diagnostics, and the coupling functionals all live
//! in their own modules; [`verify`] holds an independent dense-matrix oracle
//! (exact diagonalization, thermal states, partial traces) that every
//! analytic path is tested against.

pub mod coupled;
pub mod error;
pub mod majorize;
pub mod numeric;
pub mod spectra;
pub mod spin;
pub mod thermo;
pub mod verify;

pub use error::{Error, Result};
pub use spectra::{coupled_spectrum, hamiltonian_matrix, ordering_threshold, single_spin_spectrum, DenseHamiltonian, EnergySpectrum, Medium};
pub use spin::SpinMagnitude;
pub use thermo::{canonical_distribution, otto_cycle, CycleReport, OperationMode, ThermalDistribution};
