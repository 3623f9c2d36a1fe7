use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

/// Errors shared by every module of the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Malformed polynomial text; `pos` is a byte offset into the input.
    Syntax {
        pos: usize,
        message: String,
    },
    /// An identifier that is neither a declared variable nor the parameter.
    UnknownIdentifier {
        pos: usize,
        name: String,
    },
    /// An exponent written with a minus sign.
    NegativeExponent {
        pos: usize,
    },
    /// Variable index outside `0..nvars`.
    IndexOutOfRange {
        index: usize,
        nvars: usize,
    },
    /// The zero polynomial has no multiplicity.
    ZeroPolynomial,
    /// Operation requires the deformation parameter to be specialized first.
    ParametricInput,
    /// Mixed exponent lengths or mismatched variable sets.
    VarMismatch,
    EmptySupport,
    /// The support contains the origin, i.e. the germ has a constant term.
    OriginInSupport,
    /// The Newton polyhedron misses a coordinate axis and the caller did not
    /// ask for stabilization.
    NotConvenient,
    /// The alternating volume sum did not cancel to an integer; this signals
    /// a bug in the volume computation, never bad input.
    NonIntegerNewtonNumber,
    /// Newton numbers kept changing up to the stabilization cap: either the
    /// singularity is non-isolated along a missed axis or the cap is too small.
    StabilizationFailed {
        cap_exponent: u64,
    },
    /// The face does not belong to the Newton complex of this polynomial.
    FaceNotOfComplex,
    /// Macaulay truncation degree must be at least 2.
    TruncationTooSmall {
        given: u32,
    },
    /// The Jacobian quotient never certified up to the degree cap.
    NotIsolated {
        cap: u32,
    },
    /// Newton-route Milnor number requested for a degenerate germ.
    DegenerateInput,
    /// The two Milnor routes disagreed where they must agree.
    RouteMismatch {
        newton: BigInt,
        macaulay: BigInt,
    },
    /// A sample violated the upper semicontinuity of the Milnor number.
    SemicontinuityViolation {
        t0: BigRational,
        mu_base: BigInt,
        mu_sample: BigInt,
    },
    /// The deformation is not a germ family: F(z, 0) is zero or F(0, 0) != 0.
    InvalidFamily {
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { pos, message } => write!(f, "syntax error at {pos}: {message}"),
            Error::UnknownIdentifier { pos, name } => {
                write!(f, "unknown identifier `{name}` at {pos}")
            }
            Error::NegativeExponent { pos } => write!(f, "negative exponent at {pos}"),
            Error::IndexOutOfRange { index, nvars } => {
                write!(
                    f,
                    "variable index {index} out of range for {nvars} variables"
                )
            }
            Error::ZeroPolynomial => write!(f, "the zero polynomial is not a valid input"),
            Error::ParametricInput => {
                write!(
                    f,
                    "operation requires a specialized (non-parametric) polynomial"
                )
            }
            Error::VarMismatch => write!(f, "mismatched variable sets"),
            Error::EmptySupport => write!(f, "empty support"),
            Error::OriginInSupport => {
                write!(f, "the germ has a constant term (f(0) != 0)")
            }
            Error::NotConvenient => write!(
                f,
                "Newton polyhedron misses a coordinate axis; stabilization required"
            ),
            Error::NonIntegerNewtonNumber => {
                write!(
                    f,
                    "internal error: Newton number did not cancel to an integer"
                )
            }
            Error::StabilizationFailed { cap_exponent } => write!(
                f,
                "Newton number did not stabilize up to axis exponent {cap_exponent}; \
                 the singularity may be non-isolated"
            ),
            Error::FaceNotOfComplex => write!(f, "face does not belong to this Newton complex"),
            Error::TruncationTooSmall { given } => {
                write!(f, "truncation degree {given} is too small (need N >= 2)")
            }
            Error::NotIsolated { cap } => write!(
                f,
                "Jacobian quotient did not certify below degree {cap}; \
                 the singularity appears non-isolated"
            ),
            Error::DegenerateInput => {
                write!(
                    f,
                    "Newton-route Milnor number needs a non-degenerate convenient germ"
                )
            }
            Error::RouteMismatch { newton, macaulay } => write!(
                f,
                "internal error: Newton route gave {newton} but the Macaulay oracle gave {macaulay}"
            ),
            Error::SemicontinuityViolation {
                t0,
                mu_base,
                mu_sample,
            } => write!(
                f,
                "Milnor number {mu_sample} at t = {t0} exceeds the base value {mu_base}; \
                 the sample is outside the germ range of the family"
            ),
            Error::InvalidFamily { message } => write!(f, "invalid family: {message}"),
        }
    }
}

impl std::error::Error for Error {}
