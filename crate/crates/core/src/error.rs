//! Error type shared by every soliton-forge crate.
//!
//! Errors fall into two families. *Schema* errors describe malformed input
//! (bad files, wrong lengths, unparsable numbers). *Numeric* errors describe
//! well-formed input on which a numerical method cannot deliver its
//! guarantee. The command-line front end maps them to different exit codes.

use thiserror::Error;

/// Convenience alias used throughout the workspace.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation
    /// (for example a spectral parameter with `Im z <= 0`).
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical method lost control of its error (overflow, non-finite
    /// values, failure to converge).
    #[error("numeric error: {0}")]
    Numeric(String),
    /// A spectral parameter hit an eigenvalue where a regular point was
    /// required.
    #[error("spectral error: {0}")]
    Spectral(String),
    /// The transmission inverse nearly vanishes on an integration contour.
    #[error("zero of the transmission inverse on the contour near {re}{im:+}i (|T^-1| = {modulus:e})")]
    ZeroOnContour {
        /// Real part of the offending contour point.
        re: f64,
        /// Imaginary part of the offending contour point.
        im: f64,
        /// Modulus of `T^-1` there.
        modulus: f64,
    },
    /// The winding number could not be resolved to an integer.
    #[error("resolution error: winding residual {residual} with {samples} contour samples")]
    Resolution {
        /// Distance of the computed winding number from the nearest integer.
        residual: f64,
        /// Number of contour samples used in the last attempt.
        samples: usize,
    },
    /// A linear system is too ill-conditioned to be trusted.
    #[error("conditioning error: condition number {0:e}")]
    Conditioning(f64),
    /// A Gram system is numerically singular because eigenvalues nearly
    /// coincide.
    #[error("confluence error: Gram condition number {0:e}")]
    Confluence(f64),
    /// A documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Soliton removal was requested in a region without eigenvalues.
    #[error("empty spectrum: no eigenvalue in the requested region")]
    EmptySpectrum,
    /// An eigenvalue lies on the imaginary ray used by an energy integral.
    #[error("eigenvalue on the integration ray near {0}i")]
    PoleOnRay(f64),
    /// A probe spectral parameter coincides with an added eigenvalue or its
    /// conjugate.
    #[error("pole error: probe parameter coincides with a soliton eigenvalue")]
    Pole,
    /// The time integrator detected growth far beyond the initial bound.
    #[error("instability at t = {t}: sup|u| = {sup}")]
    Instability {
        /// Time at which growth was detected.
        t: f64,
        /// Observed supremum.
        sup: f64,
    },
    /// The two-soliton parameters are in the single-bump regime.
    #[error("single-bump regime: |alpha0| = {0} is below the two-bump threshold")]
    SingleBump(f64),
    /// Malformed input data.
    #[error("schema error: {0}")]
    Schema(String),
    /// File-system failure.
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Numeric(_) => "numeric",
            Error::Spectral(_) => "spectral",
            Error::ZeroOnContour { .. } => "zero_on_contour",
            Error::Resolution { .. } => "resolution",
            Error::Conditioning(_) => "conditioning",
            Error::Confluence(_) => "confluence",
            Error::Precondition(_) => "precondition",
            Error::EmptySpectrum => "empty_spectrum",
            Error::PoleOnRay(_) => "pole_on_ray",
            Error::Pole => "pole",
            Error::Instability { .. } => "instability",
            Error::SingleBump(_) => "single_bump",
            Error::Schema(_) => "schema",
            Error::Io(_) => "io",
        }
    }

    /// Whether the error describes malformed input rather than a numerical
    /// failure.
    pub fn is_schema(&self) -> bool {
        matches!(self, Error::Schema(_) | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}
