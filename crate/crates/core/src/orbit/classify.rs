use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{inverse, spectral_norm, ComplexMatrix, Tolerance};

/// Slack applied to the power-norm bounds `1 <= ||T^n|| <= sqrt(B/A)`.
pub const NORM_BOUND_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassFlags {
    pub invertible: bool,
    pub unitary: bool,
    pub normal: bool,
    pub hermitian: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorClass {
    pub flags: ClassFlags,
    pub norm_t: f64,
    pub norm_tinv: f64,
    /// `||T^n||` for `n = 1..=m`.
    pub power_norms: Vec<f64>,
    /// `||T^{-n}||` for `n = 1..=m`.
    pub inverse_power_norms: Vec<f64>,
    pub bound: f64,
    pub within_bounds: bool,
}

impl OperatorClass {
    pub fn max_power(&self) -> f64 {
        self.power_norms.iter().cloned().fold(0.0, f64::max)
    }
}

/// Classifies `T` and checks the power norms for `n = 1..=m` against
/// `[1, sqrt(b / a)]`, where `a, b` are the frame bounds of the orbit.
pub fn classify_operator(t: &ComplexMatrix, a: f64, b: f64, m: usize, tol: &Tolerance) -> Result<OperatorClass> {
    if !t.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "operator must be square, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    if !(a > 0.0 && b >= a && b.is_finite()) {
        return Err(Error::InvalidParams(format!("frame bounds must satisfy 0 < A <= B, got A = {a}, B = {b}")));
    }
    let tinv = inverse(t, tol)?;
    let d = t.rows();
    let tt = t.adjoint();
    let norm_t = spectral_norm(t)?;
    let norm_tinv = spectral_norm(&tinv)?;

    let unitary = spectral_norm(&(&tt * t).sub(&ComplexMatrix::identity(d)))? <= tol.zero_tol;
    let normal = spectral_norm(&(&tt * t).sub(&(t * &tt)))? <= tol.zero_tol * norm_t * norm_t;
    let hermitian = spectral_norm(&t.sub(&tt))? <= tol.zero_tol * norm_t;

    let mut power_norms = Vec::with_capacity(m);
    let mut inverse_power_norms = Vec::with_capacity(m);
    let mut p = t.clone();
    let mut q = tinv.clone();
    for n in 1..=m {
        power_norms.push(spectral_norm(&p)?);
        inverse_power_norms.push(spectral_norm(&q)?);
        if n < m {
            p = &p * t;
            q = &q * &tinv;
        }
    }
    let bound = (b / a).sqrt();
    let within_bounds = power_norms
        .iter()
        .chain(&inverse_power_norms)
        .all(|&x| x >= 1.0 - NORM_BOUND_SLACK && x <= bound + NORM_BOUND_SLACK);
    Ok(OperatorClass {
        flags: ClassFlags {
            invertible: true,
            unitary,
            normal,
            hermitian,
        },
        norm_t,
        norm_tinv,
        power_norms,
        inverse_power_norms,
        bound,
        within_bounds,
    })
}
