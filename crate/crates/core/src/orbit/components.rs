use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{Frame, IndexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ObstructionVerdict {
    /// No ordering of the frame is an orbit.
    Fires,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Obstruction {
    pub verdict: ObstructionVerdict,
    pub reason: String,
}

/// Connected components of the graph joining `i` and `j` when
/// `|<f_i, h_j>|` exceeds `zero_tol * max |G|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    /// Sorted by size (descending), then by smallest member.
    pub components: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    pub obstruction: Obstruction,
}

pub fn orthogonality_components(frame: &Frame) -> Result<DecompositionReport> {
    if frame.kind() == IndexKind::Windowed {
        return Err(Error::WindowedModelUnsupported);
    }
    let g = frame.dual_cross_gram()?;
    let m = frame.len();
    let threshold = frame.tol().zero_tol * g.max_abs();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..m {
        for j in i + 1..m {
            if g[(i, j)].norm() > threshold || g[(j, i)].norm() > threshold {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); m];
    for n in 0..m {
        let r = find(&mut parent, n);
        groups[r].push(n);
    }
    let mut components: Vec<Vec<usize>> = groups.into_iter().filter(|c| !c.is_empty()).collect();
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let sizes: Vec<usize> = components.iter().map(Vec::len).collect();
    let obstruction = imprimitivity_obstruction(&sizes, m);
    Ok(DecompositionReport {
        components,
        sizes,
        obstruction,
    })
}

/// An orbit generator permutes the components, so all components must have
/// the same size.
pub fn imprimitivity_obstruction(sizes: &[usize], m: usize) -> Obstruction {
    let first = sizes.first().copied().unwrap_or(0);
    if sizes.iter().any(|&s| s != first) {
        return Obstruction {
            verdict: ObstructionVerdict::Fires,
            reason: format!("component sizes {sizes:?} are not all equal"),
        };
    }
    if sizes.is_empty() || !m.is_multiple_of(sizes.len()) {
        return Obstruction {
            verdict: ObstructionVerdict::Fires,
            reason: format!("{} components do not divide {m} vectors", sizes.len()),
        };
    }
    Obstruction {
        verdict: ObstructionVerdict::Inconclusive,
        reason: format!("{} components of size {first}", sizes.len()),
    }
}
