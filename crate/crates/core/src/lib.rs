//! End-corrected equispaced quadrature rules in exact arithmetic.
//!
//! A rule keeps unit weights on the nodes `0..=n` and adds `m + 1`
//! corrections at each end. The corrections depend only on the offset of the
//! terminal from the end node (`alpha` on the left, `beta` on the right) and
//! are computed exactly from two triangular systems. Particular offsets give
//! the Gregory rules and closed Newton-Cotes rules (`alpha = 0`), open
//! Newton-Cotes rules (`alpha = 1`), corrected midpoint rules (`alpha = 1/2`),
//! finite-difference corrected trapezoid and midpoint rules (negative
//! offsets), and Adams-Bashforth/Moulton weights (unequal offsets).
//!
//! ```
//! use equiquad::{build_weights, ratio, RuleSpec};
//!
//! // Simpson's 1/3 rule from the Gregory corrections with m = n = 2.
//! let spec = RuleSpec::symmetric(ratio(0, 1), 2, 2).unwrap();
//! let rule = build_weights(&spec).unwrap();
//! assert_eq!(rule.weights, vec![ratio(1, 3), ratio(4, 3), ratio(1, 3)]);
//! ```

pub mod catalog;
pub mod corrections;
pub mod error;
pub mod oracle;
pub mod polynomial;
pub mod quadrature;
pub mod rational;
pub mod rules;

pub use catalog::{
    adams_bashforth, adams_moulton, discretized_corrected_midpoint,
    discretized_corrected_trapezoid, gregory_rule, lacroix_rule, newton_cotes_closed,
    newton_cotes_open, Direction, RuleName, CATALOG_NAMES,
};
pub use corrections::{b_to_c, c_to_b, correction_set, solve_b, CorrectionCache, CorrectionSet};
pub use error::{Error, Result};
pub use oracle::vandermonde_oracle;
pub use polynomial::Polynomial;
pub use quadrature::{
    estimate_order, integrate_function, integrate_polynomial_exact, integrate_samples,
    paired_estimate, ConvergenceReport, Level, Order, OrderStudy, PairedEstimate, SampleSet,
};
pub use rational::{binomial_general, ratio, Rational};
pub use rules::{
    build_weights, map_to_interval, map_to_interval_exact, PhysicalRule, RuleSpec, WeightVector,
};
