//! Classical rules expressed as parameterizations of [`build_weights`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::rules::{build_weights, RuleSpec, WeightVector};

fn build(alpha: Rational, beta: Rational, m: usize, n: usize) -> Result<WeightVector> {
    build_weights(&RuleSpec::new(alpha, beta, m, m, n)?)
}

/// Closed Newton-Cotes rule with `points` nodes (Gregory corrections with
/// `m = n = points - 1`).
pub fn newton_cotes_closed(points: usize) -> Result<WeightVector> {
    if points < 2 {
        return Err(Error::InvalidParameter(format!(
            "closed Newton-Cotes needs at least 2 points, got {points}"
        )));
    }
    build(Rational::zero(), Rational::zero(), points - 1, points - 1)
}

/// Open Newton-Cotes rule with `points` nodes, outermost nodes one step in.
pub fn newton_cotes_open(points: usize) -> Result<WeightVector> {
    if points < 1 {
        return Err(Error::InvalidParameter(
            "open Newton-Cotes needs at least 1 point".into(),
        ));
    }
    build(Rational::one(), Rational::one(), points - 1, points - 1)
}

/// Gregory rule: the trapezoid-like closed rule with `m + 1` end corrections.
pub fn gregory_rule(m: usize, n: usize) -> Result<WeightVector> {
    build(Rational::zero(), Rational::zero(), m, n)
}

/// The Gregory rule with three corrections per end.
pub fn lacroix_rule(n: usize) -> Result<WeightVector> {
    gregory_rule(2, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// Adams-Bashforth weights for a `steps`-step method.
///
/// Forward places the nodes `0..steps` so the step runs from the last node to
/// one step beyond it (`alpha = -(steps - 1)`, `beta = 1`). Backward is the
/// mirror image: the step ends at node 0 and runs from one step before it
/// (`alpha = 1`, `beta = 1 - steps`).
pub fn adams_bashforth(steps: usize, direction: Direction) -> Result<WeightVector> {
    if steps < 1 {
        return Err(Error::InvalidParameter(
            "Adams-Bashforth needs at least 1 step".into(),
        ));
    }
    let depth = steps - 1;
    let far = -Rational::from(depth);
    match direction {
        Direction::Forward => build(far, Rational::one(), depth, depth),
        Direction::Backward => build(Rational::one(), far, depth, depth),
    }
}

/// Forward Adams-Moulton weights over `steps` nodes, the last of which is the
/// new point.
pub fn adams_moulton(steps: usize) -> Result<WeightVector> {
    if steps < 2 {
        return Err(Error::InvalidParameter(format!(
            "Adams-Moulton needs at least 2 steps, got {steps}"
        )));
    }
    let depth = steps - 1;
    build(
        Rational::one() - Rational::from(depth),
        Rational::zero(),
        depth,
        depth,
    )
}

/// Composite trapezoid over `[h, (n-1) h]` with finite-difference end
/// corrections; the outer nodes sit one step outside the range.
pub fn discretized_corrected_trapezoid(n: usize) -> Result<WeightVector> {
    let minus_one = -Rational::one();
    build(minus_one.clone(), minus_one, 2, n)
}

/// Composite midpoint rule with finite-difference end corrections; the outer
/// nodes sit half a step outside the range.
pub fn discretized_corrected_midpoint(n: usize) -> Result<WeightVector> {
    build(ratio(-1, 2), ratio(-1, 2), 1, n)
}

/// A named entry of the rule catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleName {
    Trapezoid,
    Simpson13,
    Simpson38,
    Boole,
    NewtonCotesClosed(usize),
    NewtonCotesOpen(usize),
    Gregory { m: usize, n: usize },
    Lacroix(usize),
    AdamsBashforth(usize, Direction),
    AdamsMoulton(usize),
    CorrectedTrapezoid(usize),
    CorrectedMidpoint(usize),
}

/// Accepted name patterns, for help and error text.
pub const CATALOG_NAMES: &[&str] = &[
    "trapezoid",
    "simpson13",
    "simpson38",
    "boole",
    "nc-closed:<points>",
    "nc-open:<points>",
    "gregory:<m>:<n>",
    "lacroix:<n>",
    "ab:<steps>:{fwd,bwd}",
    "am:<steps>",
    "ctrap:<n>",
    "cmid:<n>",
];

impl RuleName {
    pub fn weights(&self) -> Result<WeightVector> {
        match *self {
            RuleName::Trapezoid => newton_cotes_closed(2),
            RuleName::Simpson13 => newton_cotes_closed(3),
            RuleName::Simpson38 => newton_cotes_closed(4),
            RuleName::Boole => newton_cotes_closed(5),
            RuleName::NewtonCotesClosed(k) => newton_cotes_closed(k),
            RuleName::NewtonCotesOpen(k) => newton_cotes_open(k),
            RuleName::Gregory { m, n } => gregory_rule(m, n),
            RuleName::Lacroix(n) => lacroix_rule(n),
            RuleName::AdamsBashforth(k, dir) => adams_bashforth(k, dir),
            RuleName::AdamsMoulton(k) => adams_moulton(k),
            RuleName::CorrectedTrapezoid(n) => discretized_corrected_trapezoid(n),
            RuleName::CorrectedMidpoint(n) => discretized_corrected_midpoint(n),
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleName::Trapezoid => write!(f, "trapezoid"),
            RuleName::Simpson13 => write!(f, "simpson13"),
            RuleName::Simpson38 => write!(f, "simpson38"),
            RuleName::Boole => write!(f, "boole"),
            RuleName::NewtonCotesClosed(k) => write!(f, "nc-closed:{k}"),
            RuleName::NewtonCotesOpen(k) => write!(f, "nc-open:{k}"),
            RuleName::Gregory { m, n } => write!(f, "gregory:{m}:{n}"),
            RuleName::Lacroix(n) => write!(f, "lacroix:{n}"),
            RuleName::AdamsBashforth(k, Direction::Forward) => write!(f, "ab:{k}:fwd"),
            RuleName::AdamsBashforth(k, Direction::Backward) => write!(f, "ab:{k}:bwd"),
            RuleName::AdamsMoulton(k) => write!(f, "am:{k}"),
            RuleName::CorrectedTrapezoid(n) => write!(f, "ctrap:{n}"),
            RuleName::CorrectedMidpoint(n) => write!(f, "cmid:{n}"),
        }
    }
}

impl FromStr for RuleName {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let unknown = || {
            Error::InvalidParameter(format!(
                "unknown rule {text:?}; valid names: {}",
                CATALOG_NAMES.join(", ")
            ))
        };
        let parts: Vec<&str> = text.trim().split(':').collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        let name = match parts.as_slice() {
            ["trapezoid"] => RuleName::Trapezoid,
            ["simpson13"] => RuleName::Simpson13,
            ["simpson38"] => RuleName::Simpson38,
            ["boole"] => RuleName::Boole,
            ["nc-closed", k] => RuleName::NewtonCotesClosed(num(k)?),
            ["nc-open", k] => RuleName::NewtonCotesOpen(num(k)?),
            ["gregory", m, n] => RuleName::Gregory {
                m: num(m)?,
                n: num(n)?,
            },
            ["lacroix", n] => RuleName::Lacroix(num(n)?),
            ["ab", k, dir] => {
                let dir = match *dir {
                    "fwd" => Direction::Forward,
                    "bwd" => Direction::Backward,
                    _ => return Err(unknown()),
                };
                RuleName::AdamsBashforth(num(k)?, dir)
            }
            ["am", k] => RuleName::AdamsMoulton(num(k)?),
            ["ctrap", n] => RuleName::CorrectedTrapezoid(num(n)?),
            ["cmid", n] => RuleName::CorrectedMidpoint(num(n)?),
            _ => return Err(unknown()),
        };
        Ok(name)
    }
}
