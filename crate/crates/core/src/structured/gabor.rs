use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{modulation_op, translation_op};
use crate::error::{Error, Result};
use crate::frame::{check_permutation, Frame, IndexKind};
use crate::linalg::{inner, root_of_unity};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GaborOrdering {
    /// Translations outer, modulations inner: `(m, n) -> n * (d / b) + m`.
    #[serde(with = "raster_tag")]
    Raster,
    /// Position `k` holds raster element `perm[k]`.
    Custom(Vec<usize>),
}

mod raster_tag {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("raster")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "raster" {
            Ok(())
        } else {
            Err(D::Error::custom(format!("unknown ordering {s:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaborParams {
    pub d: usize,
    pub a: usize,
    pub b: usize,
    pub window: Vec<Complex64>,
    pub ordering: GaborOrdering,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaborDoc {
    d: usize,
    a: usize,
    b: usize,
    window: Vec<[f64; 2]>,
    #[serde(default = "raster")]
    ordering: GaborOrdering,
}

fn raster() -> GaborOrdering {
    GaborOrdering::Raster
}

impl GaborParams {
    pub fn new(d: usize, a: usize, b: usize, window: Vec<Complex64>) -> Self {
        GaborParams {
            d,
            a,
            b,
            window,
            ordering: GaborOrdering::Raster,
        }
    }

    pub fn with_window(&self, window: Vec<Complex64>) -> Self {
        GaborParams {
            window,
            ..self.clone()
        }
    }

    /// Number of translations `d / a`.
    pub fn translations(&self) -> usize {
        self.d / self.a
    }

    /// Number of modulations `d / b`.
    pub fn modulations(&self) -> usize {
        self.d / self.b
    }

    pub fn len(&self) -> usize {
        self.translations() * self.modulations()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn raster_index(&self, m: usize, n: usize) -> usize {
        n * self.modulations() + m
    }

    pub fn validate(&self) -> Result<()> {
        let GaborParams { d, a, b, .. } = *self;
        if d == 0 {
            return Err(Error::InvalidParams("d must be positive".into()));
        }
        if a == 0 || d % a != 0 {
            return Err(Error::InvalidParams(format!("a = {a} must be a positive divisor of d = {d}")));
        }
        if b == 0 || d % b != 0 {
            return Err(Error::InvalidParams(format!("b = {b} must be a positive divisor of d = {d}")));
        }
        if a * b > d {
            return Err(Error::InvalidParams(format!(
                "a * b = {} exceeds d = {d}; the system has fewer than d vectors",
                a * b
            )));
        }
        if self.window.len() != d {
            return Err(Error::InvalidParams(format!(
                "window has {} entries, expected d = {d}",
                self.window.len()
            )));
        }
        if self.window.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParams("window entries must be finite".into()));
        }
        if let GaborOrdering::Custom(perm) = &self.ordering {
            check_permutation(perm, self.len())?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let doc = GaborDoc {
            d: self.d,
            a: self.a,
            b: self.b,
            window: self.window.iter().map(|z| [z.re, z.im]).collect(),
            ordering: self.ordering.clone(),
        };
        serde_json::to_string(&doc).expect("plain document")
    }

    pub fn from_json(text: &str) -> Result<GaborParams> {
        let doc: GaborDoc = serde_json::from_str(text).map_err(|e| Error::InvalidParams(e.to_string()))?;
        let p = GaborParams {
            d: doc.d,
            a: doc.a,
            b: doc.b,
            window: doc.window.into_iter().map(|[re, im]| Complex64::new(re, im)).collect(),
            ordering: doc.ordering,
        };
        p.validate()?;
        Ok(p)
    }
}

/// Raster-ordered vectors `E_b^m T_a^n g`.
fn raster_vectors(p: &GaborParams) -> Vec<Vec<Complex64>> {
    let t = translation_op(p.d, p.a);
    let e = modulation_op(p.d, p.b);
    let mut out = Vec::with_capacity(p.len());
    let mut translated = p.window.clone();
    for _ in 0..p.translations() {
        let mut v = translated.clone();
        for _ in 0..p.modulations() {
            let next = e.mul_vec(&v);
            out.push(v);
            v = next;
        }
        translated = t.mul_vec(&translated);
    }
    out
}

/// The Gabor system `{E_b^m T_a^n g}` as a cyclic frame. Fails with
/// `NotAFrame` when the vectors do not span.
pub fn gabor_system(p: &GaborParams) -> Result<Frame> {
    p.validate()?;
    if p.window.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(Error::NotAFrame { margin: 0.0 });
    }
    let raster = Frame::new(raster_vectors(p), IndexKind::Cyclic)?;
    raster.spectrum()?;
    match &p.ordering {
        GaborOrdering::Raster => Ok(raster),
        GaborOrdering::Custom(perm) => raster.reordered(perm),
    }
}

/// `S^{-1} g`; the canonical dual of the system is the system of this window.
pub fn gabor_dual_window(p: &GaborParams) -> Result<Vec<Complex64>> {
    let frame = gabor_system(p)?;
    Ok(frame.inverse_frame_operator()?.mul_vec(&p.window))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseOrbitEntry {
    pub m: usize,
    pub n: usize,
    /// `<g, h_{m,n}>`.
    pub value: [f64; 2],
    /// Distinct values among `<g_{0,k}, h_{m,n+k}>`.
    pub distinct: usize,
    /// `d / gcd(d, m a b)`.
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseOrbitReport {
    /// Largest `|<g_{0,k}, h_{m,n+k}> - e^{-2 pi i m k a b / d} <g, h_{m,n}>|`.
    pub max_residual: f64,
    pub counts_match: bool,
    pub entries: Vec<PhaseOrbitEntry>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Translating both the frame vector and the dual vector by `k a` rotates
/// their inner product by a root of unity, so each nonzero `<g, h_{m,n}>`
/// spreads over `d / gcd(d, m a b)` distinct values.
///
/// With the inner product linear in its first argument the rotation is
/// `e^{-2 pi i m k a b / d}`.
pub fn phase_orbit_check(p: &GaborParams) -> Result<PhaseOrbitReport> {
    let raster = GaborParams {
        ordering: GaborOrdering::Raster,
        ..p.clone()
    };
    let frame = gabor_system(&raster)?;
    let dual = frame.canonical_dual()?;
    let nt = p.translations();
    let values: Vec<Complex64> = (0..p.modulations())
        .flat_map(|m| (0..nt).map(move |n| (m, n)))
        .map(|(m, n)| inner(&p.window, dual.vector(p.raster_index(m, n))))
        .collect();
    let scale = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut max_residual = 0.0f64;
    let mut counts_match = true;
    let mut entries = Vec::new();
    for m in 0..p.modulations() {
        for n in 0..nt {
            let c = values[m * nt + n];
            if c.norm() <= 1e-8 * scale {
                continue;
            }
            let mut seen: Vec<Complex64> = Vec::new();
            for k in 0..nt {
                let v = inner(frame.vector(p.raster_index(0, k)), dual.vector(p.raster_index(m, (n + k) % nt)));
                let predicted = root_of_unity(-((m * k * p.a * p.b) as i64), p.d) * c;
                max_residual = max_residual.max((v - predicted).norm());
                if !seen.iter().any(|s| (s - v).norm() <= 1e-8 * c.norm()) {
                    seen.push(v);
                }
            }
            let expected = p.d / gcd(p.d, m * p.a * p.b);
            counts_match &= seen.len() == expected;
            entries.push(PhaseOrbitEntry {
                m,
                n,
                value: [c.re, c.im],
                distinct: seen.len(),
                expected,
            });
        }
    }
    Ok(PhaseOrbitReport {
        max_residual,
        counts_match,
        entries,
    })
}
