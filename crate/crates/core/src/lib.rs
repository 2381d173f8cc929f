//! Numerical models for ancilla-aided integrated detection (AID) of spin
//! qubits via spin-to-charge conversion.
//!
//! The crate is organized around the measurement chain of an AID experiment:
//!
//! - [`stochastics`]: the Bernoulli/Poisson building blocks of the readout
//!   models, exact mean/variance propagation for their compounds, and a
//!   brute-force enumeration oracle.
//! - [`sensitivity`]: closed-form SNR and sensitivity expressions for SOS,
//!   SCC, and AID readout, including limiting regimes.
//! - [`carrier`]: a cylindrical reaction-diffusion solver for photo-carrier
//!   generation, diffusion, and trapping, producing ancilla activation
//!   curves and effective capture efficiencies.
//! - [`montecarlo`]: photon-by-photon simulation of ODMR/Rabi/echo
//!   experiments for SOS and AID readout.
//! - [`imaging`]: synthetic fluorescence scans and ring-based extraction of
//!   the spin signal from charge patterns.
//! - [`rng`]: seeded, counter-addressable random streams shared by the
//!   sampling code paths.

pub mod carrier;
pub mod imaging;
pub mod montecarlo;
pub mod rng;
pub mod sensitivity;
pub mod stochastics;
