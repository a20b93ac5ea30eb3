//! Numerical laboratory for damped wave equations with a delayed velocity
//! feedback, either through the boundary or through a localized interior
//! damping region.
//!
//! The delay is carried by an auxiliary transport field over a unit
//! pseudo-coordinate, which turns the delayed system into a first-order
//! evolution `Φ_t = A Φ` for the stacked state `Φ = (y, z, u)`. The crate
//! assembles the discrete generator `A` together with the Gram matrix `G`
//! of the weighted energy inner product, integrates the evolution with a
//! norm-contractive one-step scheme, computes the explicit constant
//! equilibrium each trajectory converges to, fits decay models to the
//! distance from equilibrium, and probes the generator spectrum and
//! resolvent along the imaginary axis.
//!
//! Modules mirror that pipeline:
//!
//! - [`params`]: scalar coefficient sets and their admissibility windows
//! - [`mesh`]: interval/rectangle grids, Neumann Laplacian, damping fields
//! - [`delayline`]: upwind transport line and exact ring-buffer delay
//! - [`generator`]: generator/Gram assembly, conserved functional
//! - [`evolve`]: contractive time stepping and trajectory trackers
//! - [`analyze`]: equilibria and decay-model fitting
//! - [`spectral`]: eigenvalues, spectral abscissa, resolvent sweeps
//! - [`cli`]: scenario configs, presets, CSV outputs

pub mod analyze;
pub mod cli;
pub mod delayline;
pub mod error;
pub mod evolve;
pub mod generator;
pub mod linalg;
pub mod mesh;
pub mod params;
pub mod spectral;

pub use error::{Error, Result};
