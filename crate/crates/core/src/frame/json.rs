use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Frame, IndexKind};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Tolerance};

/// On-disk frame document. Field order here is the canonical output order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDoc {
    pub dim: usize,
    pub index_model: IndexModelDoc,
    pub vectors: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<ToleranceDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexModelDoc {
    pub kind: KindDoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindDoc {
    Cyclic,
    Windowed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceDoc {
    pub zero_tol: f64,
}

impl From<IndexKind> for KindDoc {
    fn from(k: IndexKind) -> Self {
        match k {
            IndexKind::Cyclic => KindDoc::Cyclic,
            IndexKind::Windowed => KindDoc::Windowed,
        }
    }
}

impl From<KindDoc> for IndexKind {
    fn from(k: KindDoc) -> Self {
        match k {
            KindDoc::Cyclic => IndexKind::Cyclic,
            KindDoc::Windowed => IndexKind::Windowed,
        }
    }
}

impl FrameDoc {
    pub fn into_frame(self) -> Result<Frame> {
        if self.vectors.is_empty() {
            return Err(Error::InvalidFrame("vectors: must contain at least one vector".into()));
        }
        if let Some((n, v)) = self.vectors.iter().enumerate().find(|(_, v)| v.len() != self.dim) {
            return Err(Error::InvalidFrame(format!(
                "vectors[{n}]: expected dim = {} components, got {}",
                self.dim,
                v.len()
            )));
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let frame = Frame::new(vectors, self.index_model.kind.into())?;
        match self.tolerance {
            Some(t) => frame
                .with_tolerance(Tolerance::new(t.zero_tol).map_err(|e| {
                    Error::InvalidFrame(format!("tolerance.zero_tol: {e}"))
                })?),
            None => Ok(frame),
        }
    }
}

impl Frame {
    pub fn to_doc(&self) -> FrameDoc {
        FrameDoc {
            dim: self.dim(),
            index_model: IndexModelDoc {
                kind: self.kind().into(),
            },
            vectors: self
                .vectors()
                .iter()
                .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            tolerance: self.has_explicit_tolerance().then(|| ToleranceDoc {
                zero_tol: self.tol().zero_tol,
            }),
        }
    }

    /// Compact canonical JSON; doubles use shortest round-trip formatting.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("frame documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Frame> {
        let doc: FrameDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidFrame(e.to_string()))?;
        doc.into_frame()
    }
}

/// Matrix as nested rows of `[re, im]` pairs.
pub fn matrix_to_json(m: &ComplexMatrix) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect();
    serde_json::to_value(rows).expect("finite matrices serialize")
}

pub fn matrix_from_json(value: &serde_json::Value) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_value(value.clone())
        .map_err(|e| Error::InvalidMatrix(format!("expected rows of [re, im] pairs: {e}")))?;
    let rows: Vec<Vec<Complex64>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows)
}
