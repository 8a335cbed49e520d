use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("term `{term}` has bidegree ({found_s},{found_t}), expected ({expected_s},{expected_t})")]
    BidegreeMismatch { term: String, found_s: u32, found_t: u32, expected_s: u32, expected_t: u32 },

    #[error("form is not homogeneous: term `{term}` has degree {found}, expected {expected}")]
    NotHomogeneous { term: String, found: u32, expected: u32 },

    #[error("coefficient `{0}` is undefined in this field")]
    BadCoefficient(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("Hilbert function of R/I did not stabilize: r = {at_2m} at mu = 2m but {at_2m1} at mu = 2m+1 (common factor or infinite base locus)")]
    StabilizationFailure { at_2m: usize, at_2m1: usize },

    #[error("negative second difference {value} at degree {degree} in syzygy kernel dimensions")]
    NegativeSecondDifference { degree: u32, value: i64 },

    #[error("bound violated: {0}")]
    BoundViolated(String),

    #[error("V' is not contained in W in bidegree ({mu},{nu})")]
    Containment { mu: u32, nu: u32 },

    #[error("Koszul image is not in the span of the moving planes")]
    InconsistentSolve,

    #[error("complex is only assembled at (mu-1, n-1) with mu >= mu0 = {mu0}, got mu = {mu}")]
    OutsideResolutionRange { mu: u32, mu0: u32 },

    #[error("no column subset with an invertible d2 minor")]
    NoAdmissibleSubset,

    #[error("minor ratio is not an exact polynomial division")]
    InexactDivision,

    #[error("minor ratios for column subsets {first:?} and {second:?} are not proportional")]
    SubsetDisagreement { first: Vec<usize>, second: Vec<usize> },

    #[error("exactness shape violated: d1 is {rows}x{cols}, d2 has {z2} columns")]
    ShapeMismatch { rows: usize, cols: usize, z2: usize },

    #[error("composition d1*d2 is not zero")]
    NonZeroComposition,

    #[error("more than {0} degenerate draws of the generic combinations")]
    DegenerateDraws(usize),

    #[error("resample budget exhausted after {0} base-point hits")]
    ResampleBudget(usize),

    #[error("no implicit equation of degree <= {0}; the image is not a surface")]
    NoImplicitEquation(u32),

    #[error("interpolation precondition: {have} samples, need {need}")]
    TooFewSamples { have: usize, need: usize },
}

impl Error {
    /// Errors caused by malformed or degenerate user input rather than internal failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::BidegreeMismatch { .. }
                | Error::NotHomogeneous { .. }
                | Error::BadCoefficient(_)
                | Error::InvalidInput(_)
                | Error::StabilizationFailure { .. }
                | Error::ResampleBudget(_)
                | Error::NoImplicitEquation(_)
                | Error::OutsideResolutionRange { .. }
        )
    }
}
