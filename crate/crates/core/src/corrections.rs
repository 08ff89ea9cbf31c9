//! End corrections for the unit-weight equispaced rule.
//!
//! For a terminal that lies `alpha` step-lengths outside the first node
//! (positive `alpha` puts the node inside the range), the `m + 1` corrections
//! `c_0..c_m` are added to the unit weights starting at the end node and working
//! inward. They are found in two triangular steps:
//!
//! 1. the difference coefficients `b_k` solve the lower-triangular,
//!    unit-diagonal system
//!    `sum_{k<=i} (-1)^(i-k) / (i-k+1) * b_k = (-1)^(i+1) / (i+2) - C(-alpha, i+1)`
//!    for `i = 0..=m`, by forward substitution;
//! 2. `c_i = sum_{k>=i} C(k, i) (-1)^(k-i) b_k`, which is the expansion of
//!    `sum_k b_k Δ^k f(0)` in ordinates.
//!
//! Index `i` of `c` counts inward from the end node: `c[0]` multiplies the
//! outermost ordinate.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::rational::{binomial, binomial_general, Rational};

/// Corrections for one end of a rule, together with their difference form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionSet {
    pub alpha: Rational,
    pub m: usize,
    /// Difference coefficients `b_0..b_m`.
    pub b: Vec<Rational>,
    /// Ordinate corrections `c_0..c_m`, outermost first.
    pub c: Vec<Rational>,
}

/// Solves for `b_0..b_m` by forward substitution.
///
/// Raising `m` only appends entries; earlier coefficients do not change.
pub fn solve_b(alpha: &Rational, m: usize) -> Vec<Rational> {
    let neg_alpha = -alpha;
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let mut rhs = Rational::sign_power(i + 1) / Rational::from(i + 2)
            - binomial_general(&neg_alpha, i + 1);
        for (k, bk) in b.iter().enumerate() {
            let coeff = Rational::sign_power(i - k) / Rational::from(i - k + 1);
            rhs -= coeff * bk;
        }
        b.push(rhs);
    }
    b
}

/// Converts difference coefficients to ordinate corrections.
pub fn b_to_c(b: &[Rational]) -> Vec<Rational> {
    (0..b.len())
        .map(|i| {
            b.iter()
                .enumerate()
                .skip(i)
                .map(|(k, bk)| binomial(k, i) * Rational::sign_power(k - i) * bk)
                .sum()
        })
        .collect()
}

/// Inverse of [`b_to_c`], by back-substitution from `b_m` down to `b_0`.
pub fn c_to_b(c: &[Rational]) -> Vec<Rational> {
    let len = c.len();
    let mut b = vec![Rational::zero(); len];
    for i in (0..len).rev() {
        let mut value = c[i].clone();
        for (k, bk) in b.iter().enumerate().skip(i + 1) {
            value -= binomial(k, i) * Rational::sign_power(k - i) * bk;
        }
        b[i] = value;
    }
    b
}

/// Corrections of depth `m` for a terminal offset `alpha`.
pub fn correction_set(alpha: &Rational, m: usize) -> CorrectionSet {
    let b = solve_b(alpha, m);
    let c = b_to_c(&b);
    CorrectionSet {
        alpha: alpha.clone(),
        m,
        b,
        c,
    }
}

/// Thread-safe memo of correction sets keyed by `(alpha, m)`.
#[derive(Debug, Default)]
pub struct CorrectionCache {
    entries: RwLock<HashMap<(Rational, usize), Arc<CorrectionSet>>>,
}

impl CorrectionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, alpha: &Rational, m: usize) -> Arc<CorrectionSet> {
        let key = (alpha.clone(), m);
        if let Some(hit) = self.entries.read().expect("cache lock poisoned").get(&key) {
            return Arc::clone(hit);
        }
        let computed = Arc::new(correction_set(alpha, m));
        let mut entries = self.entries.write().expect("cache lock poisoned");
        Arc::clone(entries.entry(key).or_insert(computed))
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
