//! Error type shared across the crate.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },

    #[error("zero input not allowed")]
    ZeroInput,

    #[error("division by zero polynomial")]
    ZeroDivisor,

    #[error("substitution image is not a unit")]
    NotAUnit,

    #[error("evaluation at a pole of variable {var}")]
    PoleAtEvaluation { var: String },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("term v^{v_exp}*z^{z_exp} has odd exponent sum; no homogeneous degree-0 preimage")]
    ParityViolation { v_exp: i64, z_exp: i64 },

    #[error("polynomial has odd-parity terms (link, not knot): {detail}")]
    NotAKnotPolynomial { detail: String },

    #[error("graph must be connected")]
    Disconnected,

    #[error("graph must be 2-connected")]
    NotTwoConnected,

    #[error("input exceeds configured bound: {detail}")]
    BoundExceeded { detail: String },

    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: i64 },

    #[error("terms do not share a single bidegree")]
    NotBihomogeneous,

    #[error("missing knot: {name}")]
    MissingKnot { name: String },

    #[error("invalid knot name '{name}': cannot extract crossing number")]
    BadKnotName { name: String },

    #[error("internal consistency violation: {detail}")]
    Inconsistency { detail: String },

    #[error("malformed input: {detail}")]
    Malformed { detail: String },
}
