use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::frame::Frame;
use crate::linalg::{inverse, ComplexMatrix, Tolerance};
use crate::sample;

/// Orbit frames, shuffled orbit frames and unstructured frames.
fn corpus(seed: u64, n: usize) -> Vec<Frame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..n {
        let d = rng.gen_range(1..=4);
        let m = rng.gen_range(d.max(2)..=7);
        let f = match i % 4 {
            0 => sample::unitary_orbit(&mut rng, d, m).0,
            1 => sample::similar_orbit(&mut rng, d, m).0,
            2 => {
                let (f, _) = sample::unitary_orbit(&mut rng, d, m);
                let mut perm: Vec<usize> = (0..m).collect();
                perm.shuffle(&mut rng);
                f.reordered(&perm).unwrap()
            }
            _ => sample::frame(&mut rng, d, m),
        };
        out.push(f);
    }
    out
}

#[test]
fn three_criteria_agree() {
    let mut representable = 0;
    let mut rejected = 0;
    for f in corpus(1, 400) {
        let v = represent(&f).unwrap();
        assert!(v.consistent(), "{:?}\n{:?}", f, v);
        if v.representable() {
            representable += 1;
        } else {
            rejected += 1;
            assert!(v.violation.is_some());
        }
    }
    assert!(representable > 150 && rejected > 50, "{representable} / {rejected}");
}

#[test]
fn tight_orbits_have_unitary_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..60 {
        let d = rng.gen_range(1..=4);
        let m = rng.gen_range(d.max(2)..=8);
        let (f, _) = sample::similar_orbit(&mut rng, d, m);
        let tight = f.canonical_tight().unwrap();
        let v = represent(&tight).unwrap();
        let class = v.class.expect("orbit of a tight frame is representable");
        assert!(class.flags.unitary);
        assert!(gram_shift_test(&tight).pass);
    }
}

#[test]
fn gram_shift_matches_unitarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..80 {
        let d = rng.gen_range(2..=4);
        let m = rng.gen_range(d + 1..=8);
        let (f, _) = if i % 2 == 0 {
            sample::unitary_orbit(&mut rng, d, m)
        } else {
            sample::similar_orbit(&mut rng, d, m)
        };
        let v = represent(&f).unwrap();
        let unitary = v.class.unwrap().flags.unitary;
        assert_eq!(gram_shift_test(&f).pass, unitary);
        assert_eq!(unitary, i % 2 == 0);
    }
}

#[test]
fn normal_powers_are_unitary_and_never_hermitian() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..80 {
        let d = rng.gen_range(1..=4);
        let m = rng.gen_range(3.max(d)..=8);
        let (f, t) = if i % 2 == 0 {
            sample::unitary_orbit(&mut rng, d, m)
        } else {
            sample::similar_orbit(&mut rng, d, m)
        };
        let (a, b) = f.frame_bounds().unwrap();
        let c = classify_operator(&t, a, b, m, &tol).unwrap();
        if f.duplicate_pairs().is_empty() {
            assert!(!c.flags.hermitian, "M >= 3 distinct vectors");
        }
        for s in 1..m {
            let ts = t.pow(s);
            let cs = classify_operator(&ts, a, b, 1, &tol).unwrap();
            if cs.flags.normal {
                assert!(cs.flags.unitary, "normal power T^{s} is not unitary");
            }
        }
    }
}

#[test]
fn power_norms_within_frame_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let d = rng.gen_range(1..=4);
        let m = rng.gen_range(d.max(2)..=8);
        let (f, _) = sample::similar_orbit(&mut rng, d, m);
        let class = represent(&f).unwrap().class.unwrap();
        for &x in class.power_norms.iter().chain(&class.inverse_power_norms) {
            assert!(x >= 1.0 - 1e-6 && x <= class.bound + 1e-6, "{x} vs {}", class.bound);
        }
        assert!(class.within_bounds);
    }
}

#[test]
fn dual_frame_generated_by_inverse_adjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let d = rng.gen_range(1..=4);
        let m = rng.gen_range(d.max(2)..=8);
        let (f, _) = sample::similar_orbit(&mut rng, d, m);
        let t = build_generator(&f).unwrap().matrix;
        let dual = f.canonical_dual().unwrap();
        let td = build_generator(&dual).unwrap().matrix;
        let expected = inverse(&t.adjoint(), f.tol()).unwrap();
        assert!(td.max_abs_diff(&expected) < 1e-7 * expected.max_abs());
    }
}

#[test]
fn successor_preserves_orthogonality_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let d = rng.gen_range(2..=4);
        let m = rng.gen_range(d..=7);
        // a block orbit: T permutes an orthonormal basis, so the graph has
        // structure to preserve
        let (f, _) = sample::unitary_orbit(&mut rng, d, m);
        let g = f.dual_cross_gram().unwrap();
        let thr = 1e-9 * g.max_abs();
        for i in 0..m {
            for j in 0..m {
                let here = g[(i, j)].norm() > thr;
                let next = g[((i + 1) % m, (j + 1) % m)].norm() > thr;
                assert_eq!(here, next);
            }
        }
    }
    let basis = Frame::cyclic(ComplexMatrix::identity(4).columns()).unwrap();
    let r = orthogonality_components(&basis).unwrap();
    assert_eq!(r.obstruction.verdict, ObstructionVerdict::Inconclusive);
}

#[test]
fn orbit_frames_pass_necessary_conditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..60 {
        let d = rng.gen_range(1..=4);
        let m = rng.gen_range(d.max(2)..=8);
        let (f, _) = if i % 2 == 0 {
            sample::unitary_orbit(&mut rng, d, m)
        } else {
            sample::similar_orbit(&mut rng, d, m)
        };
        let r = necessary_conditions(&f).unwrap();
        assert!(r.all_pass(), "{r:?}");
        let c = orthogonality_components(&f).unwrap();
        assert_eq!(c.obstruction.verdict, ObstructionVerdict::Inconclusive);
    }
}

#[test]
fn verify_orbit_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let (f, t) = sample::similar_orbit(&mut rng, 3, 5);
        let rep = verify_orbit(&t, f.vector(0), 5, crate::frame::IndexKind::Cyclic, f.tol()).unwrap();
        assert!(rep.is_frame);
        for n in 0..5 {
            let diff = crate::linalg::sub_vec(rep.frame.vector(n), f.vector(n));
            assert!(crate::linalg::norm(&diff) < 1e-8);
        }
    }
}

#[test]
fn verdict_json_shape() {
    let f = Frame::cyclic(ComplexMatrix::identity(2).columns()).unwrap();
    let v = represent(&f).unwrap().to_json();
    assert_eq!(v["model"], "cyclic");
    assert_eq!(v["criteria"]["kernel_shift"]["pass"], true);
    assert_eq!(v["class"]["unitary"], true);
    assert_eq!(v["class"]["hermitian"], true);
    assert!(v["violation"].is_null());
    assert_eq!(v["generator"][0][1], serde_json::json!([1.0, 0.0]));
}
