use serde::Serialize;

use crate::error::Result;
use crate::frame::{Frame, IndexModel};
use crate::linalg::ComplexMatrix;

/// Witness pair for a broken shift structure:
/// `magnitude = |G[i][j] - G[succ i][succ j]|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftStructure {
    pub pass: bool,
    pub max_violation: f64,
    pub threshold: f64,
    /// First violating pair in row-major order.
    pub violation: Option<Violation>,
}

/// Checks `G[i][j] = G[succ i][succ j]` for every pair on which the
/// successor is defined: circulant for cyclic models, Toeplitz for windowed.
pub fn shift_structure(g: &ComplexMatrix, model: IndexModel, zero_tol: f64) -> ShiftStructure {
    let threshold = zero_tol * g.max_abs();
    let m = g.rows();
    let mut max_violation = 0.0f64;
    let mut violation = None;
    for i in 0..m {
        let Some(si) = model.successor(i) else { continue };
        for j in 0..m {
            let Some(sj) = model.successor(j) else { continue };
            let magnitude = (g[(i, j)] - g[(si, sj)]).norm();
            max_violation = max_violation.max(magnitude);
            if magnitude > threshold && violation.is_none() {
                violation = Some(Violation { i, j, magnitude });
            }
        }
    }
    ShiftStructure {
        pass: violation.is_none(),
        max_violation,
        threshold,
        violation,
    }
}

/// Shift structure of the frame / canonical-dual cross Gram matrix
/// `<f_i, h_j>`.
pub fn circulant_cross_gram_test(frame: &Frame) -> Result<ShiftStructure> {
    let g = frame.dual_cross_gram()?;
    Ok(shift_structure(&g, frame.index_model(), frame.tol().zero_tol))
}

/// Shift structure of the plain Gram matrix `<f_i, f_j>`; on a
/// representable frame it holds exactly when the generator is unitary.
pub fn gram_shift_test(frame: &Frame) -> ShiftStructure {
    shift_structure(&frame.gram(), frame.index_model(), frame.tol().zero_tol)
}
