use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::{Frame, FrameDiagnostics, IndexKind};
use crate::linalg::{least_squares, norm, nullspace, sub_vec, ComplexMatrix, Svd, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub matrix: ComplexMatrix,
    /// `max_n ||T f_n - f_{succ n}||` over the pairs the model defines.
    pub residual: f64,
    pub kind: IndexKind,
}

/// Builds `T` with `T f_n = f_{succ n}`.
///
/// The least-squares candidate is `T = U_tail U_head^+ + Q_tail Q_head^*`
/// where `Q_head`, `Q_tail` are orthonormal bases of the complements of the
/// spans of the vectors with a successor and of their successors. Under the
/// cyclic model both spans coincide and the second term is the projector
/// onto the complement, so `T` is the identity there. The candidate is
/// accepted when every defined pair is matched to within
/// `zero_tol * max ||f_n||`.
pub fn build_generator(frame: &Frame) -> Result<Generator> {
    let tol = frame.tol();
    let d = frame.dim();
    let model = frame.index_model();
    let pairs: Vec<(usize, usize)> = (0..frame.len())
        .filter_map(|n| model.successor(n).map(|s| (n, s)))
        .collect();
    if pairs.is_empty() {
        return Ok(Generator {
            matrix: ComplexMatrix::identity(d),
            residual: 0.0,
            kind: frame.kind(),
        });
    }
    let head: Vec<Vec<Complex64>> = pairs.iter().map(|&(n, _)| frame.vector(n).to_vec()).collect();
    let tail: Vec<Vec<Complex64>> = pairs.iter().map(|&(_, s)| frame.vector(s).to_vec()).collect();
    let head = ComplexMatrix::from_columns(&head)?;
    let tail = ComplexMatrix::from_columns(&tail)?;
    let pinv = least_squares(&head, &ComplexMatrix::identity(d), tol)?;
    let mut t = tail.matmul(&pinv)?;
    let head_perp = nullspace(&head.adjoint(), tol)?;
    let tail_perp = match frame.kind() {
        IndexKind::Cyclic => head_perp.clone(),
        IndexKind::Windowed => nullspace(&tail.adjoint(), tol)?,
    };
    // complements of different dimension leave T singular; the rank check
    // below reports it
    if let (Some(qh), Some(qt)) = (head_perp, tail_perp) {
        if qh.cols() == qt.cols() {
            t = t.add(&qt.matmul(&qh.adjoint())?);
        }
    }

    let residual = pairs
        .iter()
        .map(|&(n, s)| norm(&sub_vec(&t.mul_vec(frame.vector(n)), frame.vector(s))))
        .fold(0.0, f64::max);
    if residual > tol.zero_tol * frame.max_norm() {
        return Err(Error::NoExactSolution { residual });
    }
    let svd = Svd::compute(&t)?;
    if svd.rank(tol) < d {
        return Err(Error::SingularGenerator {
            sigma_min: *svd.sigma.last().unwrap(),
        });
    }
    Ok(Generator {
        matrix: t,
        residual,
        kind: frame.kind(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    pub frame: Frame,
    pub is_frame: bool,
    pub diagnostics: Option<FrameDiagnostics>,
}

/// Generates `{T^n f0 : 0 <= n < m}`. Under the cyclic model the orbit must
/// close: `||T^m f0 - f0|| <= zero_tol ||f0||`.
pub fn verify_orbit(
    t: &ComplexMatrix,
    f0: &[Complex64],
    m: usize,
    kind: IndexKind,
    tol: &Tolerance,
) -> Result<OrbitReport> {
    tol.validate()?;
    if !t.is_square() || t.rows() != f0.len() {
        return Err(Error::DimensionMismatch(format!(
            "T is {}x{} but f0 has length {}",
            t.rows(),
            t.cols(),
            f0.len()
        )));
    }
    if m == 0 {
        return Err(Error::InvalidParams("orbit length must be at least 1".into()));
    }
    let mut vectors = Vec::with_capacity(m);
    let mut cur = f0.to_vec();
    for _ in 0..m {
        let next = t.mul_vec(&cur);
        vectors.push(cur);
        cur = next;
    }
    if kind == IndexKind::Cyclic {
        let residual = norm(&sub_vec(&cur, f0));
        if residual > tol.zero_tol * norm(f0) {
            return Err(Error::NotCyclic { residual });
        }
    }
    let frame = Frame::new(vectors, kind)?.with_tolerance(*tol)?;
    let is_frame = frame.is_frame();
    let diagnostics = if is_frame {
        Some(frame.diagnostics()?)
    } else {
        None
    };
    Ok(OrbitReport {
        frame,
        is_frame,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{root_of_unity, ONE, ZERO};
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_generator_is_cyclic_permutation() {
        let f = Frame::cyclic(ComplexMatrix::identity(3).columns()).unwrap();
        let g = build_generator(&f).unwrap();
        let mut expected = ComplexMatrix::zeros(3, 3);
        expected[(1, 0)] = ONE;
        expected[(2, 1)] = ONE;
        expected[(0, 2)] = ONE;
        assert!(g.matrix.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn harmonic_generator_is_diagonal() {
        let s = 1.0 / 2f64.sqrt();
        let f = Frame::cyclic(
            (0..4)
                .map(|n| vec![Complex64::new(s, 0.0), root_of_unity(n, 4) * s])
                .collect(),
        )
        .unwrap();
        let g = build_generator(&f).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[ONE, root_of_unity(1, 4)]);
        assert!(g.matrix.max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn swapped_harmonic_has_no_generator() {
        let s = 1.0 / 2f64.sqrt();
        let f = Frame::cyclic(
            [0, 2, 1, 3]
                .iter()
                .map(|&n| vec![Complex64::new(s, 0.0), root_of_unity(n, 4) * s])
                .collect(),
        )
        .unwrap();
        assert!(matches!(build_generator(&f), Err(Error::NoExactSolution { .. })));
    }

    #[test]
    fn windowed_generator_stays_invertible() {
        // {e0, e1} in C^3: T e0 = e1 and the complement of e0 goes onto the
        // complement of e1
        let e = ComplexMatrix::identity(3).columns();
        let f = Frame::new(vec![e[0].clone(), e[1].clone()], IndexKind::Windowed).unwrap();
        let t = build_generator(&f).unwrap().matrix;
        assert!(norm(&sub_vec(&t.mul_vec(&e[0]), &e[1])) < 1e-14);
        assert!(norm(&t.mul_vec(&e[1])) > 0.99);
        let tt = &t.adjoint() * &t;
        assert!(tt.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn cyclic_generator_is_identity_off_span() {
        let minus = Complex64::new(-1.0, 0.0);
        let f = Frame::cyclic(vec![vec![ONE, ZERO], vec![minus, ZERO]]).unwrap();
        let t = build_generator(&f).unwrap().matrix;
        let expected = ComplexMatrix::from_diagonal(&[minus, ONE]);
        assert!(t.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn recovers_planted_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let (f, t) = sample::unitary_orbit(&mut rng, 3, 5);
            let g = build_generator(&f).unwrap();
            assert!(g.matrix.max_abs_diff(&t) < 1e-9);
            let (f, t) = sample::similar_orbit(&mut rng, 3, 6);
            let g = build_generator(&f).unwrap();
            assert!(g.matrix.max_abs_diff(&t) < 1e-8);
        }
    }

    #[test]
    fn identity_orbit_of_length_one() {
        let tol = Tolerance::default();
        let one = verify_orbit(&ComplexMatrix::identity(1), &[ONE], 1, IndexKind::Cyclic, &tol).unwrap();
        assert!(one.is_frame);
        let two = verify_orbit(&ComplexMatrix::identity(2), &[ONE, ZERO], 1, IndexKind::Cyclic, &tol)
            .unwrap();
        assert!(!two.is_frame);
        assert!(two.diagnostics.is_none());
    }

    #[test]
    fn open_orbit_rejected_under_cyclic_model() {
        let tol = Tolerance::default();
        let jordan = ComplexMatrix::from_rows(&[vec![ONE, ONE], vec![ZERO, ONE]]).unwrap();
        let err = verify_orbit(&jordan, &[ZERO, ONE], 3, IndexKind::Cyclic, &tol).unwrap_err();
        assert!(matches!(err, Error::NotCyclic { .. }));
        let ok = verify_orbit(&jordan, &[ZERO, ONE], 3, IndexKind::Windowed, &tol).unwrap();
        assert!(ok.is_frame);
    }
}
