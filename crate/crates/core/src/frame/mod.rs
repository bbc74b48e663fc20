//! Finite frames of `C^d`: synthesis and frame operators, bounds, canonical
//! dual and tight frames, Gram matrices and excess.

mod json;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eig, inner, norm, ComplexMatrix, HermitianEig, Tolerance};

pub use json::{matrix_from_json, matrix_to_json, FrameDoc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexKind {
    /// Indices live in `Z_M`; the successor of `M - 1` is `0`.
    Cyclic,
    /// Indices `0..M` are a finite segment of a `Z`-indexed family; `M - 1`
    /// has no successor.
    Windowed,
}

impl IndexKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            IndexKind::Cyclic => "cyclic",
            IndexKind::Windowed => "windowed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexModel {
    pub kind: IndexKind,
    pub size: usize,
}

impl IndexModel {
    pub fn cyclic(size: usize) -> Self {
        IndexModel {
            kind: IndexKind::Cyclic,
            size,
        }
    }

    pub fn windowed(size: usize) -> Self {
        IndexModel {
            kind: IndexKind::Windowed,
            size,
        }
    }

    pub fn successor(&self, n: usize) -> Option<usize> {
        match self.kind {
            IndexKind::Cyclic => Some((n + 1) % self.size),
            IndexKind::Windowed => (n + 1 < self.size).then_some(n + 1),
        }
    }

    pub fn predecessor(&self, n: usize) -> Option<usize> {
        match self.kind {
            IndexKind::Cyclic => Some((n + self.size - 1) % self.size),
            IndexKind::Windowed => n.checked_sub(1),
        }
    }
}

/// An ordered family of vectors in `C^d`. Frames are immutable; reordering
/// produces a new frame that remembers where each element came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
    kind: IndexKind,
    tol: Tolerance,
    explicit_tol: bool,
    provenance: Option<Vec<usize>>,
}

impl Frame {
    pub fn new(vectors: Vec<Vec<Complex64>>, kind: IndexKind) -> Result<Frame> {
        let dim = vectors
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidFrame("vectors: at least one vector is required".into()))?;
        if dim == 0 {
            return Err(Error::InvalidFrame("dim: must be at least 1".into()));
        }
        for (n, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::InvalidFrame(format!(
                    "vectors[{n}]: expected {dim} components, got {}",
                    v.len()
                )));
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidFrame(format!("vectors[{n}]: non-finite component")));
            }
        }
        if vectors.iter().all(|v| v.iter().all(|z| z.norm() == 0.0)) {
            return Err(Error::InvalidFrame("vectors: all vectors are zero".into()));
        }
        Ok(Frame {
            dim,
            vectors,
            kind,
            tol: Tolerance::default(),
            explicit_tol: false,
            provenance: None,
        })
    }

    pub fn cyclic(vectors: Vec<Vec<Complex64>>) -> Result<Frame> {
        Self::new(vectors, IndexKind::Cyclic)
    }

    pub fn from_synthesis(u: &ComplexMatrix, kind: IndexKind) -> Result<Frame> {
        Self::new(u.columns(), kind)
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Result<Frame> {
        tol.validate()?;
        self.tol = tol;
        self.explicit_tol = true;
        Ok(self)
    }

    pub fn with_kind(mut self, kind: IndexKind) -> Frame {
        self.kind = kind;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn vector(&self, n: usize) -> &[Complex64] {
        &self.vectors[n]
    }

    pub fn kind(&self) -> IndexKind {
        self.kind
    }

    pub fn index_model(&self) -> IndexModel {
        IndexModel {
            kind: self.kind,
            size: self.len(),
        }
    }

    pub fn tol(&self) -> &Tolerance {
        &self.tol
    }

    pub(crate) fn has_explicit_tolerance(&self) -> bool {
        self.explicit_tol
    }

    /// Original index of each element, if this frame came from a reordering.
    pub fn provenance(&self) -> Option<&[usize]> {
        self.provenance.as_deref()
    }

    /// New frame with element `n` equal to `self[perm[n]]`.
    pub fn reordered(&self, perm: &[usize]) -> Result<Frame> {
        check_permutation(perm, self.len())?;
        let vectors = perm.iter().map(|&p| self.vectors[p].clone()).collect();
        let provenance = match &self.provenance {
            Some(prev) => perm.iter().map(|&p| prev[p]).collect(),
            None => perm.to_vec(),
        };
        Ok(Frame {
            vectors,
            provenance: Some(provenance),
            ..self.clone()
        })
    }

    /// Same ordering and index model, new vectors.
    fn with_vectors(&self, vectors: Vec<Vec<Complex64>>) -> Frame {
        Frame {
            vectors,
            ..self.clone()
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.vectors.iter().map(|v| norm(v)).fold(0.0, f64::max)
    }

    /// `d x M` matrix whose columns are the frame vectors.
    pub fn synthesis_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&self.vectors).expect("frame vectors are validated")
    }

    /// `S = U U*`.
    pub fn frame_operator(&self) -> ComplexMatrix {
        let u = self.synthesis_matrix();
        &u * &u.adjoint()
    }

    /// Eigendecomposition of `S`, rejecting families that do not span.
    pub fn spectrum(&self) -> Result<HermitianEig> {
        let eig = hermitian_eig(&self.frame_operator(), &self.tol)?;
        let (lo, hi) = (eig.min(), eig.max());
        if hi <= 0.0 || lo <= self.tol.zero_tol * hi {
            let margin = if hi > 0.0 { lo / hi } else { 0.0 };
            return Err(Error::NotAFrame { margin });
        }
        Ok(eig)
    }

    pub fn is_frame(&self) -> bool {
        self.spectrum().is_ok()
    }

    /// Optimal frame bounds `(A, B) = (lambda_min(S), lambda_max(S))`.
    pub fn frame_bounds(&self) -> Result<(f64, f64)> {
        let eig = self.spectrum()?;
        Ok((eig.min(), eig.max()))
    }

    pub fn inverse_frame_operator(&self) -> Result<ComplexMatrix> {
        Ok(self.spectrum()?.apply_fn(|x| 1.0 / x))
    }

    /// `{S^{-1} f_n}`.
    pub fn canonical_dual(&self) -> Result<Frame> {
        let s_inv = self.inverse_frame_operator()?;
        Ok(self.with_vectors(self.vectors.iter().map(|v| s_inv.mul_vec(v)).collect()))
    }

    /// `{S^{-1/2} f_n}`, a Parseval frame.
    pub fn canonical_tight(&self) -> Result<Frame> {
        let root = self.spectrum()?.apply_fn(|x| 1.0 / x.sqrt());
        Ok(self.with_vectors(self.vectors.iter().map(|v| root.mul_vec(v)).collect()))
    }

    /// `G[i][j] = <f_i, f_j>`.
    pub fn gram(&self) -> ComplexMatrix {
        cross_gram(self, self).expect("a frame matches itself")
    }

    /// `G[i][j] = <f_i, h_j>` with `h` the canonical dual.
    pub fn dual_cross_gram(&self) -> Result<ComplexMatrix> {
        cross_gram(self, &self.canonical_dual()?)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.synthesis_matrix(), &self.tol).expect("SVD of a validated matrix")
    }

    /// `dim N(U) = M - rank(U)`.
    pub fn excess_kernel(&self) -> usize {
        self.len() - self.rank()
    }

    /// `sum_n (1 - <f_n, h_n>)`.
    pub fn excess_sum(&self) -> Result<f64> {
        let dual = self.canonical_dual()?;
        let total: Complex64 = self
            .vectors
            .iter()
            .zip(dual.vectors())
            .map(|(f, h)| Complex64::new(1.0, 0.0) - inner(f, h))
            .sum();
        if total.im.abs() > self.tol.zero_tol * self.len() as f64 {
            return Err(Error::NumericalFailure(format!(
                "excess sum has imaginary part {:e}",
                total.im
            )));
        }
        Ok(total.re)
    }

    /// Index pairs `(i, j)`, `i < j`, of numerically equal vectors.
    pub fn duplicate_pairs(&self) -> Vec<(usize, usize)> {
        let eps = self.tol.zero_tol * self.max_norm();
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if norm(&linalg::sub_vec(&self.vectors[i], &self.vectors[j])) <= eps {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_norm_constant(&self) -> bool {
        let norms: Vec<f64> = self.vectors.iter().map(|v| norm(v)).collect();
        let hi = norms.iter().cloned().fold(0.0, f64::max);
        let lo = norms.iter().cloned().fold(f64::INFINITY, f64::min);
        hi - lo <= self.tol.zero_tol * hi
    }

    pub fn diagnostics(&self) -> Result<FrameDiagnostics> {
        let (a, b) = self.frame_bounds()?;
        let excess_kernel = self.excess_kernel();
        Ok(FrameDiagnostics {
            dim: self.dim,
            size: self.len(),
            lower_bound: a,
            upper_bound: b,
            is_tight: b - a <= self.tol.zero_tol * b,
            excess_kernel,
            excess_sum: self.excess_sum()?,
            is_linearly_independent: self.len() <= self.dim && excess_kernel == 0,
            is_norm_constant: self.is_norm_constant(),
            has_duplicates: !self.duplicate_pairs().is_empty(),
        })
    }
}

/// `G[i][j] = <f_i, g_j>`.
pub fn cross_gram(f: &Frame, g: &Frame) -> Result<ComplexMatrix> {
    if f.dim() != g.dim() || f.len() != g.len() {
        return Err(Error::DimensionMismatch(format!(
            "cross Gram of {}x{} and {}x{} families",
            f.dim(),
            f.len(),
            g.dim(),
            g.len()
        )));
    }
    let m = f.len();
    let mut out = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] = inner(f.vector(i), g.vector(j));
        }
    }
    Ok(out)
}

pub(crate) fn check_permutation(perm: &[usize], len: usize) -> Result<()> {
    if perm.len() != len {
        return Err(Error::InvalidParams(format!(
            "permutation has {} entries, expected {len}",
            perm.len()
        )));
    }
    let mut seen = vec![false; len];
    for &p in perm {
        if p >= len || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParams(format!("{perm:?} is not a permutation of 0..{len}")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameDiagnostics {
    pub dim: usize,
    #[serde(rename = "M")]
    pub size: usize,
    #[serde(rename = "A")]
    pub lower_bound: f64,
    #[serde(rename = "B")]
    pub upper_bound: f64,
    pub is_tight: bool,
    pub excess_kernel: usize,
    pub excess_sum: f64,
    pub is_linearly_independent: bool,
    pub is_norm_constant: bool,
    pub has_duplicates: bool,
}
