use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::linalg::{root_of_unity, ComplexMatrix, Tolerance, ZERO};

/// `f_n[k] = w_M^{n k} / sqrt(d)`: tight with bound `M / d`, the orbit of
/// `diag(w_M^k)`.
pub fn harmonic_frame(d: usize, m: usize) -> Result<Frame> {
    if d == 0 || m < d {
        return Err(Error::InvalidParams(format!("harmonic frame needs M >= d >= 1, got d = {d}, M = {m}")));
    }
    let s = 1.0 / (d as f64).sqrt();
    let vectors = (0..m)
        .map(|n| (0..d).map(|k| root_of_unity((n * k) as i64, m) * s).collect())
        .collect();
    Frame::cyclic(vectors)
}

/// Fractional modulation `diag(e^{2 pi i k / (N d)})`.
pub fn exponential_generator(d: usize, n: usize) -> ComplexMatrix {
    let diag: Vec<Complex64> = (0..d).map(|k| root_of_unity(k as i64, n * d)).collect();
    ComplexMatrix::from_diagonal(&diag)
}

/// The `N d` vectors `f_m = diag(e^{2 pi i k / (N d)})^m g`. The window must
/// stay away from zero, otherwise the lower frame bound collapses. `tol`
/// only drives that check; the frame carries the default tolerance.
pub fn exponential_frame(g: &[Complex64], n: usize, tol: &Tolerance) -> Result<Frame> {
    if g.is_empty() || n == 0 {
        return Err(Error::InvalidParams("exponential frame needs a nonempty window and N >= 1".into()));
    }
    if let Some((index, z)) = g.iter().enumerate().find(|(_, z)| z.norm() <= tol.zero_tol) {
        return Err(Error::WindowVanishes {
            index,
            magnitude: z.norm(),
        });
    }
    let d = g.len();
    let m = n * d;
    let vectors = (0..m)
        .map(|j| {
            g.iter()
                .enumerate()
                .map(|(k, gk)| root_of_unity((j * k) as i64, m) * gk)
                .collect()
        })
        .collect();
    Frame::cyclic(vectors)
}

/// `K` coordinate blocks of size `L = d / K`, each carrying the exponentials
/// `w_{N L}^{m x} / sqrt(L)`, interleaved so that element `n = m K + k` lives
/// on block `k`. The generator moves block `k` onto block `k + 1` and applies
/// the phase `diag(w_{N L}^x)` as a block wraps around to block 0.
pub fn block_harmonic_frame(d: usize, k_blocks: usize, n: usize) -> Result<(Frame, ComplexMatrix)> {
    if d == 0 || k_blocks == 0 || !d.is_multiple_of(k_blocks) || n == 0 {
        return Err(Error::InvalidParams(format!(
            "block-harmonic frame needs K | d and N >= 1, got d = {d}, K = {k_blocks}, N = {n}"
        )));
    }
    let l = d / k_blocks;
    let per_block = n * l;
    let s = 1.0 / (l as f64).sqrt();
    let mut vectors = Vec::with_capacity(n * d);
    for m in 0..per_block {
        for k in 0..k_blocks {
            let mut v = vec![ZERO; d];
            for x in 0..l {
                v[k * l + x] = root_of_unity((m * x) as i64, per_block) * s;
            }
            vectors.push(v);
        }
    }
    let mut t = ComplexMatrix::zeros(d, d);
    for k in 0..k_blocks {
        let next = (k + 1) % k_blocks;
        for x in 0..l {
            let phase = if next == 0 {
                root_of_unity(x as i64, per_block)
            } else {
                Complex64::new(1.0, 0.0)
            };
            t[(next * l + x, k * l + x)] = phase;
        }
    }
    Ok((Frame::cyclic(vectors)?, t))
}
