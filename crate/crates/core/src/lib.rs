//! Quantum slit diffraction in space and time.
//!
//! The library computes matter-wave diffraction patterns behind single and
//! double slits, with the slit screen modelled by Dirichlet, Neumann, free
//! (absorbing) or general image-combination boundary conditions:
//!
//! - [`free_propagators`]: free and uniform-gravity Green functions,
//!   Gaussian packets, image-combination Green functions.
//! - [`dit1d`]: the 1D diffraction-in-time (shutter) problem, closed erfc
//!   form plus a time-integral oracle.
//! - [`point_source`]: the exact closed-form 3D one-point-source slit
//!   propagator, its semiclassical stationary-phase approximation, and a
//!   complex-time-deformed quadrature oracle.
//! - [`aperture`]: integration of the point propagator over slit shapes and
//!   evaluation of normalized screen patterns.
//! - [`approx`]: the truncation (classical-axial-motion) approximation, the
//!   4th-order Fraunhofer correction, and regime diagnostics.
//! - [`gravity`]: the slit propagator in a uniform gravity field, including
//!   the quintic stationary-time solver.
//! - [`analysis`]: fringe extraction (minima, spacings, shifts, envelopes).
//! - [`numerics`]: Fresnel integrals, the complex error function, adaptive
//!   Gauss–Kronrod quadrature and polynomial root isolation.

pub mod analysis;
pub mod aperture;
pub mod approx;
pub mod dit1d;
pub mod error;
pub mod free_propagators;
pub mod gravity;
pub mod numerics;
pub mod point_source;
pub mod types;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use types::{BoundaryCondition, Particle, SpacetimePoint, Vec3};
