use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frame::{matrix_to_json, Frame, IndexKind};
use crate::linalg::ComplexMatrix;

use super::{
    build_generator, circulant_cross_gram_test, classify_operator, kernel_shift_invariance, ClassFlags,
    KernelCertificate, OperatorClass, Violation,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Criterion {
    pub pass: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepresentabilityVerdict {
    pub kind: IndexKind,
    pub kernel_shift: Criterion,
    pub circulant_gram: Criterion,
    pub generator_exact: Criterion,
    pub generator: Option<ComplexMatrix>,
    pub class: Option<OperatorClass>,
    pub violation: Option<Violation>,
    pub kernel_certificate: Option<KernelCertificate>,
}

impl RepresentabilityVerdict {
    pub fn representable(&self) -> bool {
        self.generator.is_some()
    }

    /// All three criteria agree.
    pub fn consistent(&self) -> bool {
        self.kernel_shift.pass == self.circulant_gram.pass && self.circulant_gram.pass == self.generator_exact.pass
    }

    pub fn to_json(&self) -> Value {
        let class = self.class.as_ref().map(|c| c.flags);
        let norms = self.class.as_ref().map(|c| {
            json!({
                "T": c.norm_t,
                "Tinv": c.norm_tinv,
                "max_power": c.max_power(),
            })
        });
        json!({
            "model": self.kind.as_str(),
            "criteria": {
                "kernel_shift": self.kernel_shift,
                "circulant_gram": self.circulant_gram,
                "generator_exact": self.generator_exact,
            },
            "generator": self.generator.as_ref().map(matrix_to_json),
            "class": class.map(|f: ClassFlags| serde_json::to_value(f).expect("plain struct")),
            "norms": norms,
            "violation": self.violation,
        })
    }
}

/// Runs the three equivalent representability criteria on the frame in its
/// current order and, when they pass, classifies the generator.
pub fn represent(frame: &Frame) -> Result<RepresentabilityVerdict> {
    let (a, b) = frame.frame_bounds()?;
    let kernel = kernel_shift_invariance(frame);
    let circ = circulant_cross_gram_test(frame)?;
    let (generator, generator_exact) = match build_generator(frame) {
        Ok(g) => {
            let residual = g.residual;
            (
                Some(g.matrix),
                Criterion {
                    pass: true,
                    residual,
                },
            )
        }
        Err(Error::NoExactSolution { residual }) | Err(Error::SingularGenerator { sigma_min: residual }) => (
            None,
            Criterion {
                pass: false,
                residual,
            },
        ),
        Err(e) => return Err(e),
    };
    let class = match &generator {
        Some(t) => match classify_operator(t, a, b, frame.len(), frame.tol()) {
            Ok(c) => Some(c),
            Err(Error::SingularOperator { .. }) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(RepresentabilityVerdict {
        kind: frame.kind(),
        kernel_shift: Criterion {
            pass: kernel.pass,
            residual: kernel.residual,
        },
        circulant_gram: Criterion {
            pass: circ.pass,
            residual: circ.max_violation,
        },
        generator_exact,
        generator,
        class,
        violation: circ.violation,
        kernel_certificate: kernel.certificate,
    })
}
