use core::fmt;

use crate::oracle::{OracleResult, Term};

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by geometry validation, the energy formulas and the
/// quadrature oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar or vector input was NaN or infinite.
    NonFinite(&'static str),
    /// A polarizability tensor differs from its transpose beyond tolerance.
    Asymmetric { max_deviation: f64 },
    /// An atom sits below the plate.
    NegativeHeight { atom: u8, z: f64 },
    /// An atom touches the plate but the configuration was not flagged as a
    /// contact configuration.
    ContactNotAllowed { atom: u8 },
    /// The two atoms occupy the same point.
    CoincidentAtoms,
    /// A separation vector vanished where a propagator or kernel needs it.
    ZeroSeparation,
    /// A length that has to be strictly positive was not.
    NonPositiveLength { name: &'static str, value: f64 },
    /// `γ` or `Γ` below one, which no geometry can produce.
    RatioBelowOne { name: &'static str, value: f64 },
    /// Special-case inputs that do not describe a realizable geometry.
    InconsistentGeometry(&'static str),
    /// Bad quadrature settings.
    InvalidSettings(&'static str),
    /// Sweep definitions that cannot be evaluated.
    InvalidSweep(&'static str),
    /// Adaptive quadrature hit its subdivision limit before reaching the
    /// requested tolerance.
    QuadratureFailed { term: Term, partial: OracleResult },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite(what) => write!(f, "non-finite value in {what}"),
            Error::Asymmetric { max_deviation } => write!(
                f,
                "polarizability tensor is not symmetric (max |a_ij - a_ji| = {max_deviation:e})"
            ),
            Error::NegativeHeight { atom, z } => {
                write!(f, "atom {atom} is below the plate (z = {z})")
            }
            Error::ContactNotAllowed { atom } => write!(
                f,
                "atom {atom} touches the plate; set the contact flag to evaluate this point"
            ),
            Error::CoincidentAtoms => f.write_str("atoms are coincident"),
            Error::ZeroSeparation => f.write_str("zero separation vector"),
            Error::NonPositiveLength { name, value } => {
                write!(f, "{name} must be positive, got {value}")
            }
            Error::RatioBelowOne { name, value } => {
                write!(f, "{name} must be at least 1, got {value}")
            }
            Error::InconsistentGeometry(msg) => write!(f, "inconsistent geometry: {msg}"),
            Error::InvalidSettings(msg) => write!(f, "invalid quadrature settings: {msg}"),
            Error::InvalidSweep(msg) => write!(f, "invalid sweep: {msg}"),
            Error::QuadratureFailed { term, partial } => write!(
                f,
                "quadrature for {term} did not converge after {} evaluations (value {:e}, error estimate {:e})",
                partial.evaluations, partial.value, partial.error_estimate
            ),
        }
    }
}

impl core::error::Error for Error {}
