//! Interpolatory weights from the moment equations.
//!
//! Given `N` distinct node indices, the weights that integrate `t^k` exactly
//! over `[-alpha, n + beta]` (in step units) for `k = 0..N-1` are unique. They
//! are found here by exact Gaussian elimination on the Vandermonde system,
//! with no reference to end corrections, so they serve as an independent check
//! on [`crate::rules::build_weights`].

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Solves `sum_j w_j i_j^k = ((n + beta)^(k+1) - (-alpha)^(k+1)) / (k + 1)`,
/// `k = 0..len-1`, for the weights `w_j` at `node_indices`.
pub fn vandermonde_oracle(
    node_indices: &[i64],
    alpha: &Rational,
    beta: &Rational,
    n: i64,
) -> Result<Vec<Rational>> {
    let size = node_indices.len();
    if size == 0 {
        return Err(Error::InvalidParameter(
            "oracle needs at least one node".into(),
        ));
    }
    let upper = Rational::from(n) + beta;
    let lower = -alpha;

    // Augmented matrix: row k holds i_j^k and the k-th moment.
    let mut rows: Vec<Vec<Rational>> = (0..size)
        .map(|k| {
            let p = k as i32;
            let mut row: Vec<Rational> = node_indices
                .iter()
                .map(|&i| Rational::from(i).pow(p).expect("non-negative power"))
                .collect();
            let moment = (upper.pow(p + 1).expect("positive power")
                - lower.pow(p + 1).expect("positive power"))
                / Rational::from(p + 1);
            row.push(moment);
            row
        })
        .collect();

    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(Error::Singular)?;
        rows.swap(col, pivot);
        let head = rows[col].clone();
        for row in rows.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &head[col];
            for (x, h) in row.iter_mut().zip(&head).skip(col) {
                *x -= &factor * h;
            }
        }
    }

    let mut weights = vec![Rational::zero(); size];
    for col in (0..size).rev() {
        let mut value = rows[col][size].clone();
        for j in (col + 1)..size {
            value -= &rows[col][j] * &weights[j];
        }
        weights[col] = value / &rows[col][col];
    }
    Ok(weights)
}
