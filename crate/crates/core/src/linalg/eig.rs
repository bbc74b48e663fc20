use num_complex::Complex64;

use super::{ComplexMatrix, Tolerance, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending; column `k` of
/// `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V f(diag(lambda)) V*`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            for i in 0..n {
                let vi = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vi * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().unwrap()
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary, then applies the real symmetric Jacobi rotation.
pub fn hermitian_eig(m: &ComplexMatrix, tol: &Tolerance) -> Result<HermitianEig> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let scale = m.max_abs();
    let asymmetry = m.hermitian_defect();
    let allowed = tol.zero_tol * scale;
    if asymmetry > allowed {
        return Err(Error::NotHermitian { asymmetry, allowed });
    }

    let n = m.rows();
    // symmetrize so the iteration sees an exactly Hermitian matrix
    let mut a = m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0));
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);
    let fro = a.frobenius();

    if fro > 0.0 {
        let target = f64::EPSILON * 1e-3 * fro;
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal(&a) <= target {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal(&a) > target {
            return Err(Error::NumericalFailure(format!(
                "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (k, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, k)] = v[(i, src)];
        }
    }
    Ok(HermitianEig { values, vectors })
}

fn off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.rows();

    // D = diag(.., 1 at p, conj(phase) at q, ..) makes the pivot real.
    let dq = (apq / mag).conj();
    for k in 0..n {
        a[(k, q)] *= dq;
    }
    for k in 0..n {
        a[(q, k)] *= dq.conj();
    }
    for k in 0..n {
        v[(k, q)] *= dq;
    }
    a[(p, q)] = Complex64::new(mag, 0.0);
    a[(q, p)] = Complex64::new(mag, 0.0);

    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * s;
        a[(k, q)] = akp * s + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * s;
        a[(q, k)] = apk * s + aqk * c;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * s;
        v[(k, q)] = vkp * s + vkq * c;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

/// `M^{-1/2}` for Hermitian positive definite `M`.
pub fn inv_sqrt_hermitian(m: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m, tol)?;
    let (lo, hi) = (eig.min(), eig.max());
    if hi <= 0.0 || lo <= tol.zero_tol * hi {
        let margin = if hi > 0.0 { lo / hi } else { 0.0 };
        return Err(Error::NotPositiveDefinite { margin });
    }
    Ok(eig.apply_fn(|x| 1.0 / x.sqrt()))
}
