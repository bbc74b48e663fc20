//! Named end-to-end scenarios with PASS/FAIL reports.

use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use frameorbit::linalg::{spectral_norm, ZERO};
use frameorbit::orbit::{
    build_generator, circulant_cross_gram_test, gram_shift_test, orthogonality_components, ordering_search,
    represent, verify_orbit, ObstructionVerdict, SearchMode, SearchVerdict,
};
use frameorbit::structured::{
    block_harmonic_frame, dyadic_band_frame, gabor_dual_window, gabor_system, harmonic_frame, phase_orbit_check,
    BandSpec, GaborParams,
};
use frameorbit::{cross_gram, sample, ComplexMatrix, Frame};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    RieszAlways,
    TightUnitary,
    SwapBreaks,
    GaborCompactSupport,
    FiniteUnionCounterexample,
    DyadicObstruction,
    PhaseOrbit,
}

impl DemoName {
    pub fn as_str(self) -> &'static str {
        match self {
            DemoName::RieszAlways => "riesz-always",
            DemoName::TightUnitary => "tight-unitary",
            DemoName::SwapBreaks => "swap-breaks",
            DemoName::GaborCompactSupport => "gabor-compact-support",
            DemoName::FiniteUnionCounterexample => "finite-union-counterexample",
            DemoName::DyadicObstruction => "dyadic-obstruction",
            DemoName::PhaseOrbit => "phase-orbit",
        }
    }
}

pub struct Report {
    name: DemoName,
    header: &'static str,
    checks: Vec<(String, bool, String)>,
    data: Value,
}

impl Report {
    fn new(name: DemoName, header: &'static str) -> Self {
        Report {
            name,
            header,
            checks: Vec::new(),
            data: Value::Null,
        }
    }

    fn check(&mut self, id: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push((id.into(), pass, detail.into()));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    pub fn text(&self) -> String {
        let mut out = format!("# {}: {}\n", self.name.as_str(), self.header);
        for (id, pass, detail) in &self.checks {
            out += &format!("{} {id} {detail}\n", if *pass { "PASS" } else { "FAIL" });
        }
        let passed = self.checks.iter().filter(|c| c.1).count();
        out += &format!("OK {passed}/{}\n", self.checks.len());
        out
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|(id, pass, detail)| json!({"id": id, "pass": pass, "detail": detail}))
            .collect();
        json!({
            "demo": self.name.as_str(),
            "header": self.header,
            "assertions": checks,
            "all_pass": self.all_pass(),
            "data": self.data,
        })
    }
}

pub fn run(name: DemoName) -> Report {
    match name {
        DemoName::RieszAlways => riesz_always(),
        DemoName::TightUnitary => tight_unitary(),
        DemoName::SwapBreaks => swap_breaks(),
        DemoName::GaborCompactSupport => gabor_compact_support(),
        DemoName::FiniteUnionCounterexample => finite_union(),
        DemoName::DyadicObstruction => dyadic_obstruction(),
        DemoName::PhaseOrbit => phase_orbit(),
    }
}

fn riesz_always() -> Report {
    let mut r = Report::new(DemoName::RieszAlways, "every ordering of a basis is an operator orbit");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut rows = Vec::new();
    for d in 2..=5 {
        let f = sample::frame(&mut rng, d, d);
        let s = match ordering_search(&f, SearchMode::Exhaustive, 0) {
            Ok(s) => s,
            Err(e) => {
                r.check(format!("basis-d{d}"), false, e.to_string());
                continue;
            }
        };
        r.check(
            format!("basis-d{d}-orderings"),
            s.passing_total == s.tested,
            format!("{}/{} orderings representable", s.passing_total, s.tested),
        );
        let v = represent(&f).map(|v| v.representable()).unwrap_or(false);
        r.check(format!("basis-d{d}-generator"), v, "generator built in the given order");
        rows.push(json!({"d": d, "tested": s.tested, "passing": s.passing_total}));
    }
    r.data = json!(rows);
    r
}

fn tight_unitary() -> Report {
    let mut r = Report::new(DemoName::TightUnitary, "a tight orbit frame has a unitary generator");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    let mut all_unitary = true;
    let mut gram_agrees = true;
    let trials = 40;
    for _ in 0..trials {
        let d = rng.gen_range(1..=4);
        let m = rng.gen_range(d.max(2)..=8);
        let (f, _) = sample::similar_orbit(&mut rng, d, m);
        let Ok(tight) = f.canonical_tight() else {
            all_unitary = false;
            continue;
        };
        match build_generator(&tight) {
            Ok(g) => {
                let t = g.matrix;
                let dev = spectral_norm(&(&t.adjoint() * &t).sub(&ComplexMatrix::identity(d))).unwrap_or(f64::INFINITY);
                worst = worst.max(dev);
                all_unitary &= dev <= 1e-8;
                gram_agrees &= gram_shift_test(&tight).pass;
            }
            Err(_) => all_unitary = false,
        }
    }
    r.check("tight-generators-unitary", all_unitary, format!("{trials} frames, max ||T*T - I|| = {worst:.2e}"));
    r.check("gram-shift-invariant", gram_agrees, "plain Gram matrix is circulant for every tight orbit");
    r.data = json!({"trials": trials, "max_unitarity_defect": worst});
    r
}

fn swap_breaks() -> Report {
    let mut r = Report::new(DemoName::SwapBreaks, "exchanging two vectors of an orbit frame can destroy the orbit");
    let h = harmonic_frame(2, 4).expect("valid parameters");
    let natural = represent(&h).map(|v| v.representable()).unwrap_or(false);
    r.check("natural-order", natural, "harmonic(2,4) in natural order is an orbit");
    let swapped = h.reordered(&[0, 2, 1, 3]).expect("permutation");
    match circulant_cross_gram_test(&swapped) {
        Ok(c) => {
            let v = c.violation;
            r.check(
                "swapped-order",
                !c.pass,
                match v {
                    Some(v) => format!("violation at ({}, {}) of magnitude {:.4}", v.i, v.j, v.magnitude),
                    None => "no violation".into(),
                },
            );
            r.check(
                "certificate",
                v.is_some_and(|v| (v.i, v.j) == (0, 1) && v.magnitude >= 0.1),
                "first violating pair is (0, 1)",
            );
        }
        Err(e) => r.check("swapped-order", false, e.to_string()),
    }
    match ordering_search(&swapped, SearchMode::Exhaustive, 10) {
        Ok(s) => {
            r.check(
                "reorder-recovers",
                s.verdict == SearchVerdict::Some && s.passing.contains(&vec![0, 2, 1, 3]),
                format!("{} of {} orderings pass", s.passing_total, s.tested),
            );
            r.data = serde_json::to_value(&s).expect("plain struct");
        }
        Err(e) => r.check("reorder-recovers", false, e.to_string()),
    }
    r
}

fn gabor_compact_support() -> Report {
    let mut r = Report::new(
        DemoName::GaborCompactSupport,
        "a window supported on one translation step splits the Gabor frame by translation",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut rows = Vec::new();
    for (d, a, b) in [(8, 2, 2), (8, 4, 1), (6, 2, 1), (6, 3, 2)] {
        let mut g = vec![ZERO; d];
        for x in g.iter_mut().take(a) {
            *x = sample::complex(&mut rng) + Complex64::new(0.1, 0.0);
        }
        let p = GaborParams::new(d, a, b, g);
        let id = format!("d{d}-a{a}-b{b}");
        let (f, h) = match (gabor_system(&p), gabor_dual_window(&p)) {
            (Ok(f), Ok(h)) => (f, h),
            (Err(e), _) | (_, Err(e)) => {
                r.check(id, false, e.to_string());
                continue;
            }
        };
        let dual = f.canonical_dual().expect("frame");
        let g_cross = cross_gram(&f, &dual).expect("same shape");
        let nm = p.modulations();
        let mut leak = 0.0f64;
        for i in 0..f.len() {
            for j in 0..f.len() {
                if i / nm != j / nm {
                    leak = leak.max(g_cross[(i, j)].norm());
                }
            }
        }
        r.check(format!("{id}-cross-gram"), leak <= 1e-9, format!("max |<g_i, h_j>| across translations = {leak:.1e}"));
        let support_ok = h.iter().skip(a).all(|z| z.norm() <= 1e-12);
        r.check(format!("{id}-dual-support"), support_ok, "dual window keeps the support of g");
        let comps = orthogonality_components(&f).expect("cyclic frame");
        let expected: Vec<usize> = if a * b == d { vec![1; f.len()] } else { vec![nm; p.translations()] };
        r.check(
            format!("{id}-components"),
            comps.sizes == expected,
            format!("component sizes {:?}", comps.sizes),
        );
        rows.push(json!({"d": d, "a": a, "b": b, "sizes": comps.sizes, "leak": leak}));
    }
    r.data = json!(rows);
    r
}

fn finite_union() -> Report {
    let mut r = Report::new(
        DemoName::FiniteUnionCounterexample,
        "a finite union of mutually orthogonal blocks can still be an orbit",
    );
    let (f, t) = block_harmonic_frame(4, 2, 2).expect("valid parameters");
    let (a, b) = f.frame_bounds().expect("frame");
    r.check("tight", (b - a).abs() <= 1e-9, format!("A = {a:.6}, B = {b:.6}, M = {}", f.len()));
    let comps = orthogonality_components(&f).expect("cyclic frame");
    r.check("components", comps.sizes == vec![4, 4], format!("component sizes {:?}", comps.sizes));
    r.check(
        "obstruction-silent",
        comps.obstruction.verdict == ObstructionVerdict::Inconclusive,
        comps.obstruction.reason.clone(),
    );
    let circ = circulant_cross_gram_test(&f).map(|c| c.pass).unwrap_or(false);
    r.check("circulant", circ, "cross Gram matrix is circulant in the constructed order");
    let unitary_dev = (&t.adjoint() * &t).max_abs_diff(&ComplexMatrix::identity(4));
    r.check("unitary", unitary_dev <= 1e-12, format!("||T*T - I||_max = {unitary_dev:.1e}"));
    let period = t.pow(8).max_abs_diff(&ComplexMatrix::identity(4));
    r.check("period", period <= 1e-8, format!("||T^8 - I||_max = {period:.1e}"));
    let orbit_ok = verify_orbit(&t, f.vector(0), 8, f.kind(), f.tol())
        .map(|o| {
            (0..8).all(|n| {
                o.frame
                    .vector(n)
                    .iter()
                    .zip(f.vector(n))
                    .all(|(x, y)| (x - y).norm() <= 1e-10)
            })
        })
        .unwrap_or(false);
    r.check("orbit", orbit_ok, "T^n f0 reproduces every frame vector");
    r.data = json!({"components": comps.components, "A": a, "B": b});
    r
}

fn dyadic_obstruction() -> Report {
    let mut r = Report::new(
        DemoName::DyadicObstruction,
        "orthogonal Fourier bands of unequal size rule out every ordering",
    );
    let spec: BandSpec = "0,1:2;2:2".parse().expect("literal");
    let f: Frame = dyadic_band_frame(&spec, 3).expect("valid bands");
    let comps = orthogonality_components(&f).expect("cyclic frame");
    r.check("components", comps.sizes == vec![4, 2], format!("component sizes {:?}", comps.sizes));
    r.check(
        "obstruction-fires",
        comps.obstruction.verdict == ObstructionVerdict::Fires,
        comps.obstruction.reason.clone(),
    );
    match ordering_search(&f, SearchMode::Exhaustive, 10) {
        Ok(s) => {
            r.check(
                "exhaustive-agrees",
                s.verdict == SearchVerdict::NoOrderingRepresentable && s.tested == 120,
                format!("{} orderings tested, {} representable", s.tested, s.passing_total),
            );
            r.data = serde_json::to_value(&s).expect("plain struct");
        }
        Err(e) => r.check("exhaustive-agrees", false, e.to_string()),
    }
    r
}

fn phase_orbit() -> Report {
    let mut r = Report::new(
        DemoName::PhaseOrbit,
        "translating frame and dual vectors together rotates their inner product by a root of unity",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rows = Vec::new();
    for (d, a, b) in [(6, 1, 2), (8, 2, 2), (8, 1, 4), (6, 3, 1)] {
        let p = GaborParams::new(d, a, b, sample::vector(&mut rng, d));
        let id = format!("d{d}-a{a}-b{b}");
        match phase_orbit_check(&p) {
            Ok(rep) => {
                r.check(
                    format!("{id}-identity"),
                    rep.max_residual <= 1e-8,
                    format!("max residual {:.1e}", rep.max_residual),
                );
                let counts: Vec<usize> = rep.entries.iter().map(|e| e.distinct).collect();
                r.check(
                    format!("{id}-distinct-values"),
                    rep.counts_match,
                    format!("distinct counts {:?}", dedup(&counts)),
                );
                rows.push(json!({"d": d, "a": a, "b": b, "entries": rep.entries}));
            }
            Err(e) => r.check(id, false, e.to_string()),
        }
    }
    r.data = json!(rows);
    r
}

fn dedup(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}
