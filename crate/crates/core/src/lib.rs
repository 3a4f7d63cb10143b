//! Casimir-Polder interaction energies of two anisotropically polarizable
//! atoms near a perfectly conducting plate.
//!
//! The plate occupies `z = 0` with normal `ẑ`; atoms sit at `z ≥ 0`. Natural
//! units are used throughout (`ħ = c = 1`): lengths carry a single global unit
//! `L`, polarizabilities are `L³` and energies come out in `L⁻¹`.
//!
//! Two independent routes compute every energy term:
//!
//! * [`analytic`] evaluates closed forms built on the kernel
//!   [`analytic::f_kernel`], and [`special`] holds the reduced formulas for
//!   the symmetric geometries (isotropic, z-only and transverse-only atoms).
//! * [`oracle`] integrates the dyadic Green-function traces over imaginary
//!   frequency with adaptive Gauss-Kronrod quadrature.
//!
//! The crate is `no_std` and needs only `alloc`, for the adaptive quadrature
//! and the sweep tables.

#![cfg_attr(not(test), no_std)]
// Negated comparisons are used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analytic;
mod error;
pub mod geometry;
pub mod linalg;
pub mod oracle;
pub mod propagator;
pub mod quadrature;
pub mod special;
pub mod sweep;

pub use analytic::{EnergyBreakdown, KernelCoefficients};
pub use error::{Error, Result};
pub use geometry::{AtomSpec, GeometryDerived, PolarizabilityTensor, ReflectedTensor, SystemConfig};
pub use linalg::{Matrix3, Vector3};
pub use oracle::{OracleResult, QuadratureSettings, Term, VerificationReport};
pub use sweep::{FigurePreset, Sweep, SweepAxis, SweepRow};
