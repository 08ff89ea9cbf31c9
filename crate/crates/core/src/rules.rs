//! Weight assembly for end-corrected equispaced rules.
//!
//! A rule integrates over `[-alpha h, (n + beta) h]` using nodes `i h`. Every
//! node in `0..=n` starts with unit weight; the left corrections `c_i` for
//! `alpha` are added at index `i` and the right corrections `d_i` for `beta`
//! at index `n - i`. Overlapping corrections add. Corrections that run past
//! the unit block land on nodes whose base weight is zero, which may have
//! negative indices or indices beyond `n`.

use serde::Serialize;

use crate::corrections::correction_set;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Full parameterization of one rule instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RuleSpec {
    /// Left terminal offset, in step-lengths, measured inward to node 0.
    pub alpha: Rational,
    /// Right terminal offset, measured inward to node `n`.
    pub beta: Rational,
    pub m_left: usize,
    pub m_right: usize,
    /// Index of the last unit-weight node.
    pub n: usize,
}

impl RuleSpec {
    pub fn new(
        alpha: Rational,
        beta: Rational,
        m_left: usize,
        m_right: usize,
        n: usize,
    ) -> Result<Self> {
        let spec = RuleSpec {
            alpha,
            beta,
            m_left,
            m_right,
            n,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Same offset and depth at both ends.
    pub fn symmetric(alpha: Rational, m: usize, n: usize) -> Result<Self> {
        RuleSpec::new(alpha.clone(), alpha, m, m, n)
    }

    /// `n + alpha + beta`, the number of step-lengths between the terminals.
    pub fn span(&self) -> Rational {
        Rational::from(self.n) + &self.alpha + &self.beta
    }

    pub fn validate(&self) -> Result<()> {
        let length = self.span();
        if !length.is_positive() {
            return Err(Error::EmptyRange {
                n: self.n,
                alpha: Box::new(self.alpha.clone()),
                beta: Box::new(self.beta.clone()),
                length: Box::new(length),
            });
        }
        Ok(())
    }

    /// The spec seen from the other end (`alpha` and `beta` swapped).
    pub fn mirrored(&self) -> RuleSpec {
        RuleSpec {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            m_left: self.m_right,
            m_right: self.m_left,
            n: self.n,
        }
    }

    /// Smallest node index carrying weight.
    pub fn lo(&self) -> i64 {
        (self.n as i64 - self.m_right as i64).min(0)
    }

    /// Largest node index carrying weight.
    pub fn hi(&self) -> i64 {
        self.n.max(self.m_left) as i64
    }
}

/// Exact weights over the consecutive node indices `lo..=hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub lo: i64,
    pub weights: Vec<Rational>,
    pub spec: RuleSpec,
}

impl WeightVector {
    pub fn hi(&self) -> i64 {
        self.lo + self.weights.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight at node `index`; zero outside `lo..=hi`.
    pub fn get(&self, index: i64) -> Rational {
        usize::try_from(index - self.lo)
            .ok()
            .and_then(|offset| self.weights.get(offset))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        (self.lo..).zip(self.weights.iter())
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn sum(&self) -> Rational {
        self.weights.iter().sum()
    }

    /// `sum_i w_i i^k`.
    pub fn moment(&self, k: u32) -> Rational {
        self.iter()
            .map(|(i, w)| w * Rational::from(i).pow(k as i32).expect("non-negative power"))
            .sum()
    }

    /// Exact integral of `t^k` over the rule's range, in step units:
    /// `((n + beta)^(k+1) - (-alpha)^(k+1)) / (k + 1)`.
    pub fn exact_moment(&self, k: u32) -> Rational {
        let upper = Rational::from(self.spec.n) + &self.spec.beta;
        let lower = -&self.spec.alpha;
        let p = k as i32 + 1;
        (upper.pow(p).expect("positive power") - lower.pow(p).expect("positive power"))
            / Rational::from(p)
    }

    /// Weights read from the right end, with the matching mirrored spec.
    pub fn reversed(&self) -> WeightVector {
        let spec = self.spec.mirrored();
        WeightVector {
            lo: self.spec.n as i64 - self.hi(),
            weights: self.weights.iter().rev().cloned().collect(),
            spec,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.weights.iter().map(Rational::to_f64).collect()
    }
}

/// Builds the weight vector for `spec`.
pub fn build_weights(spec: &RuleSpec) -> Result<WeightVector> {
    spec.validate()?;
    let left = correction_set(&spec.alpha, spec.m_left);
    let right = if spec.beta == spec.alpha && spec.m_right == spec.m_left {
        left.clone()
    } else {
        correction_set(&spec.beta, spec.m_right)
    };

    let lo = spec.lo();
    let hi = spec.hi();
    let n = spec.n as i64;
    let mut weights = vec![Rational::zero(); (hi - lo + 1) as usize];
    let slot = |index: i64| (index - lo) as usize;

    for i in 0..=n {
        weights[slot(i)] += Rational::one();
    }
    for (i, c) in left.c.iter().enumerate() {
        weights[slot(i as i64)] += c;
    }
    for (i, d) in right.c.iter().enumerate() {
        weights[slot(n - i as i64)] += d;
    }

    Ok(WeightVector {
        lo,
        weights,
        spec: spec.clone(),
    })
}

/// A rule placed on a concrete interval `[a, b]`.
///
/// `weights` already include the factor `h`, so the estimate is
/// `sum_j weights[j] * f(nodes[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalRule<T> {
    pub a: T,
    pub b: T,
    pub h: T,
    /// Node index of each entry, `lo..=hi`.
    pub indices: Vec<i64>,
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

/// Maps a rule onto `[a, b]` in floating point.
///
/// `h = (b - a) / (n + alpha + beta)` and node `i` sits at `a + (alpha + i) h`,
/// which can lie outside `[a, b]`.
pub fn map_to_interval(spec: &RuleSpec, a: f64, b: f64) -> Result<PhysicalRule<f64>> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    let rule = build_weights(spec)?;
    Ok(place_f64(&rule, a, b))
}

pub(crate) fn place_f64(rule: &WeightVector, a: f64, b: f64) -> PhysicalRule<f64> {
    let spec = &rule.spec;
    let h = (b - a) / spec.span().to_f64();
    let indices: Vec<i64> = rule.indices().collect();
    let nodes = indices
        .iter()
        .map(|&i| a + (&spec.alpha + Rational::from(i)).to_f64() * h)
        .collect();
    let weights = rule.weights.iter().map(|w| w.to_f64() * h).collect();
    PhysicalRule {
        a,
        b,
        h,
        indices,
        nodes,
        weights,
    }
}

/// Maps a rule onto `[a, b]` keeping nodes and weights exact.
pub fn map_to_interval_exact(
    spec: &RuleSpec,
    a: &Rational,
    b: &Rational,
) -> Result<PhysicalRule<Rational>> {
    if a >= b {
        return Err(Error::InvalidInterval {
            a: a.to_f64(),
            b: b.to_f64(),
        });
    }
    let rule = build_weights(spec)?;
    let h = (b - a) / spec.span();
    let indices: Vec<i64> = rule.indices().collect();
    let nodes = indices
        .iter()
        .map(|&i| a + (&spec.alpha + Rational::from(i)) * &h)
        .collect();
    let weights = rule.weights.iter().map(|w| w * &h).collect();
    Ok(PhysicalRule {
        a: a.clone(),
        b: b.clone(),
        h,
        indices,
        nodes,
        weights,
    })
}
