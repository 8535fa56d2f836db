use thiserror::Error;

/// Everything that can go wrong while building or checking an object.
///
/// Most variants are not "bugs" in the usual sense: an inexact division by a
/// power of 5 or a non-vanishing identity is precisely the failure a
/// verification is looking for, so it is reported rather than rounded away.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leading coefficient {0} is not a unit (expected +1 or -1)")]
    NonUnitLeading(String),

    #[error("eta quotient has fractional q-prefactor: sum of delta*r_delta = {0} is not divisible by 24")]
    FractionalPrefactor(i64),

    #[error("inexact division by {divisor} at index {index}")]
    InexactDivision { divisor: String, index: i64 },

    #[error("series is not a polynomial in y of degree <= {max_deg}: residual at q^{index}")]
    NotPolynomial { max_deg: usize, index: i64 },

    #[error("{name}({m}, {r}) is outside its domain (m >= 1, r >= 1)")]
    DomainError { name: &'static str, m: i64, r: i64 },

    #[error("identity {identity} fails: first nonzero coefficient at q^{index}")]
    IdentityViolation { identity: String, index: i64 },

    #[error("fundamental relation U^({i})(y^{k}) disagrees with the numeric operator at q^{index}")]
    FundamentalRelationViolation { i: u8, k: usize, index: i64 },

    #[error("symbolic and numeric evaluation of {what} disagree at q^{index}")]
    SymbolicNumericMismatch { what: String, index: i64 },

    #[error("valuation violation for U^({i})(y^{m}/(1+5y)^{n}) at y^{r}: v5 = {found}, required {required}")]
    ValuationViolation { i: u8, m: u32, n: i64, r: usize, found: u32, required: i64 },

    #[error("support violation for U^({i})(y^{m}/(1+5y)^{n}): nonzero coefficient at y^{r}")]
    SupportViolation { i: u8, m: u32, n: i64, r: usize },

    #[error("denominator exponent {found} exceeds the expected {expected}")]
    DenominatorMismatch { expected: i64, found: i64 },

    #[error("congruence {display} fails at {witness}")]
    CongruenceViolation { display: String, witness: String },

    #[error("table {table} cell (m={m}, r={r}): computed {computed}, printed {printed}")]
    TableMismatch { table: u8, m: i64, r: i64, computed: i64, printed: i64 },

    #[error("property {property} fails for witness {witness}")]
    PropertyViolation { property: String, witness: String },

    #[error("orders of {function} at level {level} do not sum to zero (sum = {sum})")]
    ValenceMismatch { function: String, level: u64, sum: String },

    #[error("membership {kind} fails at y^{m}")]
    MembershipViolation { kind: String, m: usize },

    #[error("precision {have} is too low, need at least {need}")]
    InsufficientPrecision { have: i64, need: i64 },

    #[error("eta exponent key {delta} does not divide level {level}")]
    NotADivisor { delta: u64, level: u64 },

    #[error("eta quotient {0} fails Newman's conditions")]
    NotModular(String),

    #[error("malformed series text: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
