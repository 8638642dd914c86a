use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value is rational; a quadratic irrational needs q != 0 and a non-square radicand")]
    Rational,
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("radicand {0} exceeds the supported bound {1}")]
    RadicandTooLarge(u64, u64),
    #[error("pole: denominator a + b*lambda vanishes")]
    Pole,
    #[error("expected a positive value")]
    NotPositive,
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("determinant is {0}, expected 1")]
    NotUnimodular(i128),
    #[error("invalid cusp ({0}, {1}): need positive coprime exponents")]
    InvalidCusp(u64, u64),
    #[error("depth {depth} is too small to certify a complete run")]
    NoCompleteRun { depth: usize },
    #[error("need at least 2 distinct convergents, conv_depth {0} gives {1}")]
    TooFewConvergents(usize, usize),
    #[error("input not of unit modulus (|z| = {0})")]
    NotUnitModulus(f64),
    #[error("point outside the closed unit bidisc")]
    OutsideBidisc,
    #[error("radial decomposition undefined at the origin")]
    Origin,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("slope mismatch: declared {declared}, transported {transported}")]
    SlopeMismatch { declared: f64, transported: f64 },
    #[error("{kind} residual {value:e} exceeds tolerance {tolerance:e} at cell ({i}, {j})")]
    Residual {
        kind: ResidualKind,
        value: f64,
        tolerance: f64,
        i: usize,
        j: usize,
    },
    #[error("deck matrix estimate is not integral (residual {0:e})")]
    NonIntegralDeck(f64),
    #[error("matrix mismatch between decompositions")]
    MatrixMismatch,
    #[error("sign condition fails for (m, n) = ({m}, {n}): am+bn = {first}, cm+dn = {second}")]
    SignCondition {
        m: u64,
        n: u64,
        first: i128,
        second: i128,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Which residual of a lift decomposition tripped a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualKind {
    Deck,
    Parallel,
    Periodicity,
}

impl std::fmt::Display for ResidualKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ResidualKind::Deck => "deck",
            ResidualKind::Parallel => "parallel",
            ResidualKind::Periodicity => "periodicity",
        })
    }
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Rational => "rational",
            Error::ZeroDenominator => "zero_denominator",
            Error::RadicandTooLarge(..) => "radicand_too_large",
            Error::Pole => "pole",
            Error::NotPositive => "not_positive",
            Error::ZeroDepth => "zero_depth",
            Error::NotUnimodular(_) => "not_unimodular",
            Error::InvalidCusp(..) => "invalid_cusp",
            Error::NoCompleteRun { .. } => "no_complete_run",
            Error::TooFewConvergents(..) => "too_few_convergents",
            Error::NotUnitModulus(_) => "not_unit_modulus",
            Error::OutsideBidisc => "outside_bidisc",
            Error::Origin => "origin",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::SlopeMismatch { .. } => "slope_mismatch",
            Error::Residual { .. } => "residual",
            Error::NonIntegralDeck(_) => "non_integral_deck",
            Error::MatrixMismatch => "matrix_mismatch",
            Error::SignCondition { .. } => "sign_condition",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
