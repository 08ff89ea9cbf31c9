use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("malformed rational {0:?}: expected an integer, p/q, or a finite decimal")]
    MalformedRational(String),

    #[error("empty or inverted range: n + alpha + beta = {n} + {alpha} + {beta} = {length} <= 0")]
    EmptyRange {
        n: usize,
        alpha: Box<Rational>,
        beta: Box<Rational>,
        length: Box<Rational>,
    },

    #[error("invalid interval [{a}, {b}]: need finite a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integrand is not finite at node index {index} (t = {node}): {value}")]
    NonFinite { index: i64, node: f64, value: f64 },

    #[error(
        "corrections need samples at node indices {missing:?}, but only 0..={last} are available"
    )]
    MissingSamples { missing: Vec<i64>, last: i64 },

    #[error("singular linear system")]
    Singular,
}
