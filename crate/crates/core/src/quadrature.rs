//! Applying rules to integrands and sampled data, and measuring convergence.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::rules::{
    build_weights, map_to_interval, map_to_interval_exact, place_f64, PhysicalRule, RuleSpec,
};

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `sum_j w_j f(x_j)` over a placed rule, with the rounding scale
/// `sum_j |w_j f(x_j)|`. Fails on the first non-finite ordinate.
fn apply<F: Fn(f64) -> f64>(rule: &PhysicalRule<f64>, f: F) -> Result<(f64, f64)> {
    let mut total = CompensatedSum::default();
    let mut scale = 0.0;
    for ((&index, &node), &weight) in rule.indices.iter().zip(&rule.nodes).zip(&rule.weights) {
        let value = f(node);
        if !value.is_finite() {
            return Err(Error::NonFinite { index, node, value });
        }
        total.add(weight * value);
        scale += (weight * value).abs();
    }
    Ok((total.value(), scale))
}

/// Integrates `f` over `[a, b]` with the rule described by `spec`.
pub fn integrate_function<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &RuleSpec) -> Result<f64> {
    let rule = map_to_interval(spec, a, b)?;
    apply(&rule, f).map(|(total, _)| total)
}

/// Exact rule estimate for a polynomial integrand with rational coefficients.
pub fn integrate_polynomial_exact(
    poly: &Polynomial,
    a: &Rational,
    b: &Rational,
    spec: &RuleSpec,
) -> Result<Rational> {
    let rule = map_to_interval_exact(spec, a, b)?;
    Ok(rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(x, w)| w * poly.eval(x))
        .sum())
}

/// Ordinates at equispaced abscissae, with the terminals placed `alpha` steps
/// before the first sample and `beta` steps after the last.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub values: Vec<f64>,
    pub h: f64,
    pub alpha: Rational,
    pub beta: Rational,
}

impl SampleSet {
    pub fn new(values: Vec<f64>, h: f64, alpha: Rational, beta: Rational) -> Result<Self> {
        let set = SampleSet {
            values,
            h,
            alpha,
            beta,
        };
        set.validate()?;
        Ok(set)
    }

    /// Spacing implied by integration limits: `h = (b - a) / (len - 1 + alpha + beta)`.
    pub fn over_interval(
        values: Vec<f64>,
        a: f64,
        b: f64,
        alpha: Rational,
        beta: Rational,
    ) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInterval { a, b });
        }
        if values.is_empty() {
            return Err(Error::InvalidParameter("sample set is empty".into()));
        }
        let span = Rational::from(values.len() - 1) + &alpha + &beta;
        if !span.is_positive() {
            return Err(Error::EmptyRange {
                n: values.len() - 1,
                alpha: Box::new(alpha),
                beta: Box::new(beta),
                length: Box::new(span),
            });
        }
        SampleSet::new(values, (b - a) / span.to_f64(), alpha, beta)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidParameter("sample set is empty".into()));
        }
        if !(self.h.is_finite() && self.h > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sample spacing must be positive, got {}",
                self.h
            )));
        }
        RuleSpec::new(
            self.alpha.clone(),
            self.beta.clone(),
            0,
            0,
            self.values.len() - 1,
        )
        .map(|_| ())
    }
}

/// Integrates sampled data. Every node the rule touches must be present in
/// the sample set.
pub fn integrate_samples(samples: &SampleSet, m_left: usize, m_right: usize) -> Result<f64> {
    samples.validate()?;
    let last = samples.values.len() as i64 - 1;
    let spec = RuleSpec::new(
        samples.alpha.clone(),
        samples.beta.clone(),
        m_left,
        m_right,
        last as usize,
    )?;
    let rule = build_weights(&spec)?;
    let missing: Vec<i64> = rule.indices().filter(|i| *i < 0 || *i > last).collect();
    if !missing.is_empty() {
        return Err(Error::MissingSamples { missing, last });
    }
    let mut total = CompensatedSum::default();
    for (i, w) in rule.iter() {
        let value = samples.values[i as usize];
        if !value.is_finite() {
            return Err(Error::NonFinite {
                index: i,
                node: i as f64 * samples.h,
                value,
            });
        }
        total.add(w.to_f64() * value);
    }
    Ok(total.value() * samples.h)
}

/// Two estimates from the same ordinates, with depths `m` and `m + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairedEstimate {
    pub lower: f64,
    pub higher: f64,
    pub difference: f64,
}

/// Estimates with `m` and `m + 1` corrections on the same `n + 1` unit nodes.
///
/// When the deeper rule touches nodes beyond the shallower one, the ordinates
/// of the shared nodes are still evaluated only once.
pub fn paired_estimate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    alpha: &Rational,
    beta: &Rational,
    m: usize,
    n: usize,
) -> Result<PairedEstimate> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    let low = build_weights(&RuleSpec::new(alpha.clone(), beta.clone(), m, m, n)?)?;
    let high = build_weights(&RuleSpec::new(
        alpha.clone(),
        beta.clone(),
        m + 1,
        m + 1,
        n,
    )?)?;
    // The deeper rule covers every index of the shallower one.
    let placed = place_f64(&high, a, b);
    let mut ordinates = Vec::with_capacity(placed.nodes.len());
    for (&index, &node) in placed.indices.iter().zip(&placed.nodes) {
        let value = f(node);
        if !value.is_finite() {
            return Err(Error::NonFinite { index, node, value });
        }
        ordinates.push(value);
    }
    let h = placed.h;
    let sum_with = |rule: &crate::rules::WeightVector| {
        rule.iter()
            .map(|(i, w)| w.to_f64() * ordinates[(i - high.lo) as usize])
            .collect::<CompensatedSum>()
            .value()
            * h
    };
    let lower = sum_with(&low);
    let higher = sum_with(&high);
    Ok(PairedEstimate {
        lower,
        higher,
        difference: (lower - higher).abs(),
    })
}

/// Study parameters for [`estimate_order`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderStudy {
    pub alpha: Rational,
    pub beta: Rational,
    pub m: usize,
    /// First level uses `n0 + 1` nodes; each doubling doubles the node count.
    pub n0: usize,
    pub doublings: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub n: usize,
    pub nodes: usize,
    pub h: f64,
    pub estimate: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    /// Some level reproduced the exact value to within rounding.
    Exact,
    Estimated(f64),
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Exact => s.serialize_str("exact"),
            Order::Estimated(p) => s.serialize_f64(*p),
        }
    }
}

impl Order {
    pub fn value(&self) -> Option<f64> {
        match self {
            Order::Exact => None,
            Order::Estimated(p) => Some(*p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub levels: Vec<Level>,
    /// `error[k] / error[k+1]`.
    pub ratios: Vec<f64>,
    /// `ln(ratio[k]) / ln(h[k] / h[k+1])` for each refinement.
    pub observed_orders: Vec<f64>,
    pub estimated_order: Order,
}

/// Errors at or below this many unit roundoffs of `sum |w_j f(x_j)|` count as
/// zero.
const ROUNDOFF_ULPS: f64 = 16.0;

/// Runs the node-doubling experiment: node counts `n0+1, 2(n0+1), 4(n0+1), ...`
/// on a fixed `[a, b]`.
///
/// The overall order is `ln(e_first / e_last) / ln(h_first / h_last)`.
pub fn estimate_order<F: Fn(f64) -> f64>(
    f: F,
    exact: f64,
    a: f64,
    b: f64,
    study: &OrderStudy,
) -> Result<ConvergenceReport> {
    if study.doublings < 1 {
        return Err(Error::InvalidParameter("need at least one doubling".into()));
    }
    let mut levels = Vec::with_capacity(study.doublings + 1);
    let mut any_exact = false;
    for k in 0..=study.doublings {
        let nodes = (study.n0 + 1) << k;
        let n = nodes - 1;
        let spec = RuleSpec::new(study.alpha.clone(), study.beta.clone(), study.m, study.m, n)?;
        let rule = map_to_interval(&spec, a, b)?;
        let (estimate, scale) = apply(&rule, &f)?;
        let scale = scale.max(exact.abs());
        let error = (estimate - exact).abs();
        if error <= ROUNDOFF_ULPS * f64::EPSILON * scale {
            any_exact = true;
        }
        levels.push(Level {
            n,
            nodes,
            h: rule.h,
            estimate,
            error,
        });
    }
    let ratios: Vec<f64> = levels.windows(2).map(|w| w[0].error / w[1].error).collect();
    let observed_orders = levels
        .windows(2)
        .zip(&ratios)
        .map(|(w, r)| r.ln() / (w[0].h / w[1].h).ln())
        .collect();
    let estimated_order = if any_exact {
        Order::Exact
    } else {
        let first = levels.first().expect("at least two levels");
        let last = levels.last().expect("at least two levels");
        Order::Estimated((first.error / last.error).ln() / (first.h / last.h).ln())
    };
    Ok(ConvergenceReport {
        levels,
        ratios,
        observed_orders,
        estimated_order,
    })
}
