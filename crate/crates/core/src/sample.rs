//! Seeded random matrices and frames for tests, demos and corpus runs.

use num_complex::Complex64;
use rand::Rng;

use crate::frame::{Frame, IndexKind};
use crate::linalg::{inner, norm, root_of_unity, ComplexMatrix};

pub fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn vector<R: Rng>(rng: &mut R, d: usize) -> Vec<Complex64> {
    (0..d).map(|_| complex(rng)).collect()
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| complex(rng)).collect();
    ComplexMatrix::from_row_major(rows, cols, data).expect("finite entries")
}

/// Uniform-ish random unitary from Gram-Schmidt on a random matrix.
pub fn unitary<R: Rng>(rng: &mut R, d: usize) -> ComplexMatrix {
    loop {
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
        let mut ok = true;
        for _ in 0..d {
            let mut v = vector(rng, d);
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for q in &cols {
                    let c = inner(&v, q);
                    for (x, y) in v.iter_mut().zip(q) {
                        *x -= c * y;
                    }
                }
            }
            let n = norm(&v);
            if n < 1e-6 {
                ok = false;
                break;
            }
            cols.push(v.into_iter().map(|x| x / n).collect());
        }
        if ok {
            return ComplexMatrix::from_columns(&cols).expect("square");
        }
    }
}

/// Random frame of `m` vectors in `C^d`, resampled until it spans.
pub fn frame<R: Rng>(rng: &mut R, d: usize, m: usize) -> Frame {
    assert!(m >= d, "a frame of C^{d} needs at least {d} vectors");
    loop {
        let f = Frame::new((0..m).map(|_| vector(rng, d)).collect(), IndexKind::Cyclic)
            .expect("nonzero random vectors");
        if let Ok((a, b)) = f.frame_bounds() {
            if a > 1e-3 * b {
                return f;
            }
        }
    }
}

/// Cyclic orbit `{T^n f0}` of a random unitary `T` with `T^m = I`.
///
/// `T = Q diag(w^{k_j}) Q*` with distinct exponents `k_j` drawn from `Z_m`,
/// so the orbit spans whenever `f0` has no zero coordinate in the eigenbasis.
pub fn unitary_orbit<R: Rng>(rng: &mut R, d: usize, m: usize) -> (Frame, ComplexMatrix) {
    assert!(m >= d);
    let q = unitary(rng, d);
    let mut exps: Vec<i64> = (0..m as i64).collect();
    for i in 0..d {
        let j = rng.gen_range(i..m);
        exps.swap(i, j);
    }
    let diag: Vec<Complex64> = exps[..d].iter().map(|&k| root_of_unity(k, m)).collect();
    let t = &(&q * &ComplexMatrix::from_diagonal(&diag)) * &q.adjoint();
    let coeffs: Vec<Complex64> = (0..d)
        .map(|_| {
            let z = complex(rng);
            z / z.norm() * rng.gen_range(0.5..1.5)
        })
        .collect();
    let f0 = q.mul_vec(&coeffs);
    let mut vectors = Vec::with_capacity(m);
    let mut cur = f0;
    for _ in 0..m {
        let next = t.mul_vec(&cur);
        vectors.push(cur);
        cur = next;
    }
    (Frame::cyclic(vectors).expect("nonzero orbit"), t)
}

/// Cyclic orbit of a non-unitary generator `T = P D P^{-1}` (with `D` the
/// diagonal of distinct `m`-th roots of unity and `P` a random well
/// conditioned matrix), so `T^m = I` but the frame is usually not tight.
pub fn similar_orbit<R: Rng>(rng: &mut R, d: usize, m: usize) -> (Frame, ComplexMatrix) {
    let (unit, _) = unitary_orbit(rng, d, m);
    let mut p = matrix(rng, d, d);
    for i in 0..d {
        p[(i, i)] += Complex64::new(2.0, 0.0);
    }
    let vectors = unit.vectors().iter().map(|v| p.mul_vec(v)).collect();
    let f = Frame::cyclic(vectors).expect("nonzero orbit");
    let u = f.synthesis_matrix();
    let mut shifted = u.columns();
    shifted.rotate_left(1);
    let b = ComplexMatrix::from_columns(&shifted).expect("shape");
    let t = crate::linalg::least_squares(&u.adjoint(), &b.adjoint(), f.tol())
        .expect("shapes agree")
        .adjoint();
    (f, t)
}
