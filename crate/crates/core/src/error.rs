use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u32),

    #[error("cyclotomic order mismatch: Q(zeta_{left}) vs Q(zeta_{right})")]
    OrderMismatch { left: u32, right: u32 },

    #[error("cyclotomic order must be positive")]
    ZeroOrder,

    #[error("parameter mismatch: (n, m) = ({}, {}) vs ({}, {})", .left.0, .left.1, .right.0, .right.1)]
    ParamMismatch {
        left: (u32, usize),
        right: (u32, usize),
    },

    #[error("invalid parameters n = {n}, m = {m}: {reason}")]
    InvalidParams { n: u32, m: usize, reason: String },

    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("group index {index} out of range (group order {order})")]
    GroupIndexOutOfRange { index: usize, order: usize },

    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid group element: {0}")]
    InvalidElement(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("box ({row}, {col}) lies outside the shape {shape:?}")]
    BoxOutsideShape {
        row: usize,
        col: usize,
        shape: Vec<usize>,
    },

    #[error("invalid labelled partition: {0}")]
    InvalidBeta(String),

    #[error("symmetric-group sum has ambient size {found}, expected {expected}")]
    WrongAmbientSize { expected: usize, found: usize },

    #[error("{check} needs group order {order}, which exceeds the cap {cap}")]
    CapExceeded {
        check: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("coefficient {0} of the projection to k[S_m] is not rational")]
    NonRationalCoefficient(String),

    #[error("malformed serialized value: {0}")]
    Malformed(String),

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
}
