use num_complex::Complex64;
use serde::Serialize;

use crate::frame::{Frame, IndexKind};
use crate::linalg::{inner, norm, nullspace, ComplexMatrix, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftDirection {
    /// `c -> (c_{n-1})_n`, the coefficient map behind `T`.
    Forward,
    /// `c -> (c_{n+1})_n`, the coefficient map behind `T^{-1}`.
    Backward,
}

/// A kernel vector whose shift leaves the kernel, or (windowed model) whose
/// escaping coordinate is not negligible.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCertificate {
    pub direction: ShiftDirection,
    pub vector: Vec<Complex64>,
    /// Distance of the shifted vector from the kernel.
    pub residual: f64,
    /// Windowed model only: magnitude of the coordinate dropped by the shift.
    pub escaping: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelShiftResult {
    pub pass: bool,
    pub kernel_dim: usize,
    /// Largest out-of-kernel residual (or escaping magnitude) over the basis.
    pub residual: f64,
    pub certificate: Option<KernelCertificate>,
}

/// Tests whether the kernel of the synthesis operator is invariant under the
/// coefficient shift in both directions.
pub fn kernel_shift_invariance(frame: &Frame) -> KernelShiftResult {
    let tol = frame.tol();
    let kernel = nullspace(&frame.synthesis_matrix(), tol).expect("SVD of a validated frame");
    let Some(kernel) = kernel else {
        return KernelShiftResult {
            pass: true,
            kernel_dim: 0,
            residual: 0.0,
            certificate: None,
        };
    };
    let basis = kernel.columns();
    let mut worst = 0.0f64;
    let mut certificate = None;
    for direction in [ShiftDirection::Forward, ShiftDirection::Backward] {
        for c in &basis {
            let (shifted, escaping) = shift(c, direction, frame.kind());
            let escaped = escaping.filter(|&e| e > tol.zero_tol);
            let residual = match escaped {
                Some(e) => e,
                None => distance_to_span(&shifted, &kernel),
            };
            if residual > worst {
                worst = residual;
            }
            if residual > tol.zero_tol && certificate.is_none() {
                certificate = Some(KernelCertificate {
                    direction,
                    vector: c.clone(),
                    residual: if escaped.is_some() {
                        0.0
                    } else {
                        residual
                    },
                    escaping,
                });
            }
        }
    }
    KernelShiftResult {
        pass: certificate.is_none(),
        kernel_dim: basis.len(),
        residual: worst,
        certificate,
    }
}

fn shift(c: &[Complex64], direction: ShiftDirection, kind: IndexKind) -> (Vec<Complex64>, Option<f64>) {
    let m = c.len();
    let mut out = vec![ZERO; m];
    match direction {
        ShiftDirection::Forward => {
            out[1..].copy_from_slice(&c[..m - 1]);
            match kind {
                IndexKind::Cyclic => {
                    out[0] = c[m - 1];
                    (out, None)
                }
                IndexKind::Windowed => (out, Some(c[m - 1].norm())),
            }
        }
        ShiftDirection::Backward => {
            out[..m - 1].copy_from_slice(&c[1..]);
            match kind {
                IndexKind::Cyclic => {
                    out[m - 1] = c[0];
                    (out, None)
                }
                IndexKind::Windowed => (out, Some(c[0].norm())),
            }
        }
    }
}

/// `||v - Q Q* v||` for `Q` with orthonormal columns.
fn distance_to_span(v: &[Complex64], q: &ComplexMatrix) -> f64 {
    let mut rest = v.to_vec();
    for col in q.columns() {
        let coef = inner(v, &col);
        for (r, x) in rest.iter_mut().zip(&col) {
            *r -= coef * x;
        }
    }
    norm(&rest)
}
