//! Structured frame families on `Z_d`: Gabor systems, harmonic and
//! exponential frames, block-harmonic orbits, Fourier-band frames and unions
//! of orthonormal bases.

mod bands;
mod gabor;
mod harmonic;

pub use bands::{dft_matrix, dyadic_band_frame, union_onb_frame, BandSpec, UnionOrder};
pub use gabor::{
    gabor_dual_window, gabor_system, phase_orbit_check, GaborOrdering, GaborParams, PhaseOrbitEntry,
    PhaseOrbitReport,
};
pub use harmonic::{block_harmonic_frame, exponential_frame, exponential_generator, harmonic_frame};

use num_complex::Complex64;

use crate::linalg::{root_of_unity, ComplexMatrix, ONE};

/// Cyclic shift `(T_a f)(x) = f(x - a)`.
pub fn translation_op(d: usize, a: usize) -> ComplexMatrix {
    let mut t = ComplexMatrix::zeros(d, d);
    for x in 0..d {
        t[((x + a) % d, x)] = ONE;
    }
    t
}

/// Diagonal modulation `(E_b f)(x) = e^{2 pi i b x / d} f(x)`.
pub fn modulation_op(d: usize, b: usize) -> ComplexMatrix {
    let diag: Vec<Complex64> = (0..d).map(|x| root_of_unity((b * x) as i64, d)).collect();
    ComplexMatrix::from_diagonal(&diag)
}

/// Largest entry of `T_a E_b - e^{-2 pi i a b / d} E_b T_a`.
pub fn weyl_phase_check(d: usize, a: usize, b: usize) -> f64 {
    let t = translation_op(d, a);
    let e = modulation_op(d, b);
    let phase = root_of_unity(-((a * b) as i64), d);
    (&t * &e).max_abs_diff(&(&e * &t).scale(phase))
}
