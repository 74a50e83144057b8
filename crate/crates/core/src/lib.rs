//! Riesz products on the circle, worked out on the Fourier side.
//!
//! * [`riesz`]: validated product specs, exact sparse expansions of partial
//!   products, spectral bands, convolution and the centered-exponential Gram
//!   system.
//! * [`analysis`]: α-energies, de la Vallée Poussin smoothing, interval
//!   masses and their upper bounds, local Hölder exponents and dimension
//!   brackets.
//! * [`classify`]: mutual singularity and equivalence criteria for pairs of
//!   products, plus the ℓ² divergence witness.
//! * [`qi`]: quasi-independent sets, the recursive matrix construction, its
//!   flattening into ℤ, mesh counts and Sidon constant bounds.
//! * [`cli`]: the batch front end behind the `riesz` binary.

pub mod trig;
pub mod analysis;
pub mod classify;
pub mod qi;
pub mod riesz;
pub mod cli;

pub use trig::TrigPolynomial;
