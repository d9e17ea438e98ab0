//! Exact computations for PBW deformations of quantum complete intersections:
//! scalars, presentations, the Koszul-type resolution, cohomology and the
//! cocycles attached to braided-central nilpotent generators.

pub mod cocycles;
pub mod cohomology;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod presentations;
pub mod qscalar;
pub mod report;
pub mod resolution;

pub use cocycles::{BarChain, Cocycles, FiltrationDegree};
pub use cohomology::{ChainMap, ChainMaps, CohomologyMonomial};
pub use error::{Error, Result};
pub use format::{parse_assignment, parse_element, parse_presentation, parse_scalar, print_presentation};
pub use presentations::{AlgebraElement, AlgebraMode, Monomial, MonomialOrder, Presentation, Word};
pub use qscalar::{canonical_q, Assignment, LaurentScalar, ParamIndex, QMonomialTerm};
pub use report::{Check, Report};
pub use resolution::{PhiGenerator, Resolution, ResolutionElement};

/// Deliberate corruptions used as negative controls for the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fault {
    /// `tau_l(a_l)` replaced by `tau_l(a_l) + 1` for `a_l > 0` in the differential.
    DExponent,
    /// The same shift in the scalar of `xi_i`.
    XiExponent,
    /// `zeta_i` reads the coefficient of `x_i^{N_i + 1}` instead of `x_i^{N_i}`.
    ZetaFunctional,
}

impl Fault {
    pub const ALL: [Fault; 3] = [Fault::DExponent, Fault::XiExponent, Fault::ZetaFunctional];

    pub fn name(self) -> &'static str {
        match self {
            Fault::DExponent => "d-exponent",
            Fault::XiExponent => "xi-exponent",
            Fault::ZetaFunctional => "zeta-functional",
        }
    }
}

impl std::str::FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown fault `{s}`"))
    }
}
