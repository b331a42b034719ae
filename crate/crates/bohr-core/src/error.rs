//! Crate-wide error type.

use core::fmt;

/// Errors reported by the radius catalog, series builders and evaluators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The zero polynomial has no well-defined square-free part or roots.
    EmptyPolynomial,
    /// A radius equation has no root in the open interval `(0, 1)`; the
    /// parameter combination is outside the catalog's validity range.
    NoRootInInterval,
    /// A family-specific integer constraint is violated (e.g. `N > 2m`).
    FamilyConstraint(&'static str),
    /// A real parameter is outside its admissible range.
    ParamRange(&'static str),
    /// A Blaschke zero lies on or outside the unit circle.
    NotInDisk,
    /// The evaluation radius must lie in `[0, 1)`.
    RadiusRange,
    /// The series is not supported on the required lacunary index set.
    SupportMismatch,
    /// The functional requires a series vanishing at the origin.
    RequiresVanishingOrigin,
    /// The evaluation point must lie in the open unit polydisk.
    OutsidePolydisk,
    /// A slice direction must be nonzero.
    ZeroDirection,
    /// The map does not satisfy the structural hypothesis of the requested
    /// norm functional.
    HypothesisUnmet(&'static str),
    /// No sign change of `lhs - threshold` was found in `(0, 0.99)`.
    NoCrossover,
    /// The functional kind is not defined for this input shape.
    UnsupportedFunctional,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPolynomial => write!(f, "zero polynomial"),
            Error::NoRootInInterval => write!(f, "no root in (0, 1)"),
            Error::FamilyConstraint(s) => write!(f, "family constraint violated: {s}"),
            Error::ParamRange(s) => write!(f, "parameter out of range: {s}"),
            Error::NotInDisk => write!(f, "Blaschke zero not in the open unit disk"),
            Error::RadiusRange => write!(f, "radius must lie in [0, 1)"),
            Error::SupportMismatch => write!(f, "series support does not match the lacunary profile"),
            Error::RequiresVanishingOrigin => write!(f, "functional requires f(0) = 0"),
            Error::OutsidePolydisk => write!(f, "point outside the open unit polydisk"),
            Error::ZeroDirection => write!(f, "slice direction must be nonzero"),
            Error::HypothesisUnmet(s) => write!(f, "structural hypothesis unmet: {s}"),
            Error::NoCrossover => write!(f, "no threshold crossing in (0, 0.99)"),
            Error::UnsupportedFunctional => write!(f, "functional kind not defined for this input"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
