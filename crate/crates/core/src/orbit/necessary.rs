use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::frame::Frame;
use crate::linalg::norm;

/// Quick checks every orbit frame satisfies. A failing check rules out all
/// orderings; passing proves nothing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NecessaryReport {
    /// Rows of the cross Gram matrix agree as multisets.
    pub ip_sets_equal: bool,
    pub ip_sets_mismatch: f64,
    /// `<f_n, h_n>` does not depend on `n`.
    pub diag_constant: bool,
    pub diag_spread: f64,
    pub tight: bool,
    /// Tight frames only: all vectors share one norm.
    pub norm_constant: Option<bool>,
    /// Tight frames only: no vector reaches `sqrt(B)` unless the frame is an
    /// orthogonal basis.
    pub onb_extremal: Option<bool>,
}

impl NecessaryReport {
    pub fn all_pass(&self) -> bool {
        self.ip_sets_equal
            && self.diag_constant
            && self.norm_constant.unwrap_or(true)
            && self.onb_extremal.unwrap_or(true)
    }
}

pub fn necessary_conditions(frame: &Frame) -> Result<NecessaryReport> {
    let zero_tol = frame.tol().zero_tol;
    let g = frame.dual_cross_gram()?;
    let m = frame.len();
    let scale = g.max_abs().max(f64::MIN_POSITIVE);
    let bucket = 1e3 * zero_tol * scale;

    let sorted_row = |i: usize| {
        let mut row: Vec<Complex64> = g.row(i).to_vec();
        row.sort_by_key(|z| ((z.re / bucket).round() as i64, (z.im / bucket).round() as i64));
        row
    };
    let reference = sorted_row(0);
    let mut ip_sets_mismatch = 0.0f64;
    for i in 1..m {
        for (a, b) in sorted_row(i).iter().zip(&reference) {
            ip_sets_mismatch = ip_sets_mismatch.max((a - b).norm());
        }
    }
    let ip_sets_equal = ip_sets_mismatch <= bucket;

    let diag: Vec<f64> = (0..m).map(|n| g[(n, n)].re).collect();
    let lo = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let diag_spread = hi - lo;
    let diag_constant = diag_spread <= zero_tol * scale;

    let (a, b) = frame.frame_bounds()?;
    let tight = b - a <= zero_tol * b;
    let (norm_constant, onb_extremal) = if tight {
        let sqrt_b = b.sqrt();
        let reaches = frame
            .vectors()
            .iter()
            .any(|v| norm(v) >= sqrt_b * (1.0 - zero_tol));
        let gram = frame.gram();
        let orthogonal = (0..m).all(|i| {
            (0..m).all(|j| i == j || gram[(i, j)].norm() <= zero_tol * gram.max_abs())
        });
        let extremal_ok = !reaches || (m == frame.dim() && orthogonal);
        (Some(frame.is_norm_constant()), Some(extremal_ok))
    } else {
        (None, None)
    };

    Ok(NecessaryReport {
        ip_sets_equal,
        ip_sets_mismatch,
        diag_constant,
        diag_spread,
        tight,
        norm_constant,
        onb_extremal,
    })
}
