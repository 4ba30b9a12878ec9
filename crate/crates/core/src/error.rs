use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("division by a non-constant expression")]
    NonConstantDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent out of machine-integer range")]
    ExponentOverflow,
    #[error("no value assigned to parameter `{0}`")]
    MissingParameter(String),
    #[error("denominator vanishes at the given assignment")]
    VanishingDenominator,

    #[error("structure constants are not square over the basis: {0}")]
    BadShape(String),
    #[error("not associative on basis ({i}, {j}, {k}): (ab)c = {left}, a(bc) = {right}")]
    NonAssociative {
        i: String,
        j: String,
        k: String,
        left: String,
        right: String,
    },
    #[error("unit law fails on basis element {0}")]
    BadUnit(String),
    #[error("map is not multiplicative on basis pair ({0}, {1})")]
    NotMultiplicative(String, String),
    #[error("map does not send 1 to 1")]
    NotUnital,
    #[error("coefficient matrix is singular")]
    Singular,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("leg mismatch: {0}")]
    LegMismatch(String),
    #[error("position out of range: {0}")]
    PositionOutOfRange(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("grouping must split the legs into consecutive blocks")]
    NonConsecutiveGrouping,
    #[error("input is not certified: {0}")]
    Uncertified(String),
    #[error("component mismatch: {0}")]
    ComponentMismatch(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownFixture(String),
    #[error("catalog entry `{name}` failed certification at {axiom}")]
    FixtureCertification { name: String, axiom: String },
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// Stable machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownParameter(_) => "unknown_parameter",
            Error::NonConstantDivision => "non_constant_division",
            Error::DivisionByZero => "division_by_zero",
            Error::ExponentOverflow => "exponent_overflow",
            Error::MissingParameter(_) => "missing_parameter",
            Error::VanishingDenominator => "vanishing_denominator",
            Error::BadShape(_) => "bad_shape",
            Error::NonAssociative { .. } => "non_associative",
            Error::BadUnit(_) => "bad_unit",
            Error::NotMultiplicative(..) => "not_multiplicative",
            Error::NotUnital => "not_unital",
            Error::Singular => "singular",
            Error::NotInvertible => "not_invertible",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::LegMismatch(_) => "leg_mismatch",
            Error::PositionOutOfRange(_) => "position_out_of_range",
            Error::AlgebraMismatch(_) => "algebra_mismatch",
            Error::NonConsecutiveGrouping => "non_consecutive_grouping",
            Error::Uncertified(_) => "uncertified",
            Error::ComponentMismatch(_) => "component_mismatch",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::UnknownFixture(_) => "unknown_fixture",
            Error::FixtureCertification { .. } => "fixture_certification",
            Error::Input(_) => "input",
        }
    }
}
