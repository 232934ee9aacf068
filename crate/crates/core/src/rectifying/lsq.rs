//! Small dense least-squares solves.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Largest accepted condition number of a column-normalized design.
pub const MAX_CONDITION: f64 = 1e8;

/// Least-squares solution of `design · x ≈ rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct LsqFit {
    pub coeffs: Vec<f64>,
    /// Condition number of the design with unit-norm columns.
    pub condition: f64,
    pub rms_residual: f64,
}

/// Solves by SVD after scaling every column to unit Euclidean norm, so the
/// reported condition number ignores plain unit changes.
pub fn solve(rows: &[Vec<f64>], rhs: &[f64]) -> Result<LsqFit> {
    let (m, n) = (rows.len(), rows.first().map_or(0, Vec::len));
    if m < n || n == 0 {
        return Err(Error::IllConditionedFit { condition: f64::INFINITY });
    }
    let mut a = DMatrix::from_fn(m, n, |i, j| rows[i][j]);
    let scales: Vec<f64> = (0..n).map(|j| a.column(j).norm()).collect();
    if scales.iter().any(|s| !(*s > 0.0)) {
        return Err(Error::IllConditionedFit { condition: f64::INFINITY });
    }
    for (j, s) in scales.iter().enumerate() {
        a.column_mut(j).unscale_mut(*s);
    }
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let condition = sv.max() / sv.min();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditionedFit { condition });
    }
    let b = DVector::from_column_slice(rhs);
    let x = svd.solve(&b, 0.0).map_err(|_| Error::IllConditionedFit { condition })?;
    let resid = &a * &x - &b;
    let coeffs = x.iter().zip(&scales).map(|(v, s)| v / s).collect();
    Ok(LsqFit { coeffs, condition, rms_residual: (resid.norm_squared() / m as f64).sqrt() })
}

/// Least-squares polynomial of the given degree; coefficients from the
/// constant term upward.
pub fn polyfit(x: &[f64], y: &[f64], degree: usize) -> Result<LsqFit> {
    let rows: Vec<Vec<f64>> = x.iter().map(|&xi| (0..=degree).map(|k| xi.powi(k as i32)).collect()).collect();
    solve(&rows, y)
}
