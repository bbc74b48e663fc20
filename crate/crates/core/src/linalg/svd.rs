use num_complex::Complex64;

use super::{ComplexMatrix, Tolerance, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Singular value decomposition `A V = W`, where `V` is `n x n` unitary and
/// the columns of `W` are mutually orthogonal with norms equal to the
/// singular values. Columns are sorted by decreasing singular value.
#[derive(Debug, Clone)]
pub struct Svd {
    pub sigma: Vec<f64>,
    /// `A V`, columns `sigma_k u_k`.
    pub scaled_left: ComplexMatrix,
    pub right: ComplexMatrix,
}

impl Svd {
    /// One-sided (Hestenes) Jacobi on the columns of `a`.
    pub fn compute(a: &ComplexMatrix) -> Result<Svd> {
        let m = a.rows();
        let n = a.cols();
        let mut w = a.columns();
        let mut v: Vec<Vec<Complex64>> = (0..n)
            .map(|j| {
                let mut e = vec![ZERO; n];
                e[j] = Complex64::new(1.0, 0.0);
                e
            })
            .collect();

        // columns below eps * ||A||_F sit under every rank cutoff; rotating
        // them further only chases rounding noise
        let negligible = (f64::EPSILON * a.frobenius()).powi(2);
        let mut converged = n == 1;
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    rotated |= orthogonalize_pair(&mut w, &mut v, p, q, negligible);
                }
            }
            if !rotated {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NumericalFailure(format!(
                "one-sided Jacobi SVD did not converge in {MAX_SWEEPS} sweeps"
            )));
        }

        let norms: Vec<f64> = w.iter().map(|c| super::norm(c)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        // stable sort keeps ties in column order
        order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
        let sigma = order.iter().map(|&k| norms[k]).collect();
        let mut scaled_left = ComplexMatrix::zeros(m, n);
        let mut right = ComplexMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            scaled_left.set_column(dst, &w[src]);
            right.set_column(dst, &v[src]);
        }
        Ok(Svd {
            sigma,
            scaled_left,
            right,
        })
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma[0]
    }

    pub fn rank(&self, tol: &Tolerance) -> usize {
        let cutoff = tol.rank_cutoff(self.scaled_left.rows(), self.right.rows(), self.sigma_max());
        self.sigma.iter().filter(|&&s| s > cutoff).count()
    }
}

fn orthogonalize_pair(
    w: &mut [Vec<Complex64>],
    v: &mut [Vec<Complex64>],
    p: usize,
    q: usize,
    negligible: f64,
) -> bool {
    let alpha: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
    let beta: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
    if alpha.min(beta) <= negligible {
        return false;
    }
    let gamma: Complex64 = w[p].iter().zip(&w[q]).map(|(a, b)| a.conj() * b).sum();
    let g = gamma.norm();
    let slack = w[p].len().max(4) as f64 * f64::EPSILON;
    if g == 0.0 || g <= slack * (alpha * beta).sqrt() {
        return false;
    }
    // rotate column q by conj(phase) so that <w_p, w_q> becomes real
    let phase = (gamma / g).conj();
    let zeta = (beta - alpha) / (2.0 * g);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;
    for cols in [&mut *w, &mut *v] {
        let (lo, hi) = cols.split_at_mut(q);
        let (cp, cq) = (&mut lo[p], &mut hi[0]);
        for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
            let yq = *y * phase;
            let xp = *x;
            *x = xp * c - yq * s;
            *y = xp * s + yq * c;
        }
    }
    true
}

pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(Svd::compute(a)?.sigma)
}

/// Largest singular value.
pub fn spectral_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(Svd::compute(a)?.sigma_max())
}

pub fn rank(a: &ComplexMatrix, tol: &Tolerance) -> Result<usize> {
    Ok(Svd::compute(a)?.rank(tol))
}

/// Orthonormal basis of the kernel of `a`, one basis vector per column.
/// Returns `None` when the kernel is trivial (a matrix needs at least one
/// column).
pub fn nullspace(a: &ComplexMatrix, tol: &Tolerance) -> Result<Option<ComplexMatrix>> {
    let svd = Svd::compute(a)?;
    let r = svd.rank(tol);
    let n = a.cols();
    if r == n {
        return Ok(None);
    }
    let cols: Vec<Vec<Complex64>> = (r..n).map(|j| svd.right.column(j)).collect();
    Ok(Some(ComplexMatrix::from_columns(&cols)?))
}

/// Least-squares solution of `A X = B` via the pseudo-inverse. Succeeds only
/// when the residual `||A X - B||_F` is at most `zero_tol * ||B||_F`.
pub fn solve_exact_or_reject(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<ComplexMatrix> {
    let x = least_squares(a, b, tol)?;
    let residual = a.matmul(&x)?.sub(b).frobenius();
    if residual <= tol.zero_tol * b.frobenius() {
        Ok(x)
    } else {
        Err(Error::NoExactSolution { residual })
    }
}

/// Minimum-norm least-squares solution `A^+ B`.
pub fn least_squares(a: &ComplexMatrix, b: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows but B has {}",
            a.rows(),
            b.rows()
        )));
    }
    let svd = Svd::compute(a)?;
    let r = svd.rank(tol);
    let n = a.cols();
    let k = b.cols();
    let mut x = ComplexMatrix::zeros(n, k);
    for j in 0..r {
        let s2 = svd.sigma[j] * svd.sigma[j];
        let wj = svd.scaled_left.column(j);
        for col in 0..k {
            let coef: Complex64 = (0..a.rows()).map(|i| wj[i].conj() * b[(i, col)]).sum::<Complex64>() / s2;
            for i in 0..n {
                x[(i, col)] += svd.right[(i, j)] * coef;
            }
        }
    }
    Ok(x)
}

/// Inverse of a square matrix; fails with `SingularOperator` when the
/// smallest singular value is below the rank cutoff.
pub fn inverse(a: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("inverse needs a square matrix".into()));
    }
    let svd = Svd::compute(a)?;
    if svd.rank(tol) < a.rows() {
        return Err(Error::SingularOperator {
            sigma_min: *svd.sigma.last().unwrap(),
        });
    }
    least_squares(a, &ComplexMatrix::identity(a.rows()), tol)
}
