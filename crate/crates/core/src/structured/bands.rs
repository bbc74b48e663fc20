use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::linalg::{root_of_unity, ComplexMatrix, Tolerance, ZERO};

/// Disjoint sets of DFT frequencies, each with a redundancy factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandSpec {
    pub bands: Vec<(Vec<usize>, usize)>,
}

impl BandSpec {
    pub fn new(bands: Vec<(Vec<usize>, usize)>) -> Self {
        BandSpec { bands }
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        if self.bands.len() < 2 {
            return Err(Error::InvalidParams("at least two bands are required".into()));
        }
        let mut owner = vec![None; d];
        for (i, (freqs, r)) in self.bands.iter().enumerate() {
            if freqs.is_empty() {
                return Err(Error::InvalidParams(format!("band {i} is empty")));
            }
            if *r == 0 {
                return Err(Error::InvalidParams(format!("band {i}: redundancy must be at least 1")));
            }
            for &l in freqs {
                if l >= d {
                    return Err(Error::InvalidParams(format!("band {i}: frequency {l} is not below d = {d}")));
                }
                if let Some(j) = owner[l].replace(i) {
                    return Err(Error::InvalidParams(format!("frequency {l} appears in bands {j} and {i}")));
                }
            }
        }
        let covered = owner.iter().filter(|o| o.is_some()).count();
        if covered < d {
            return Err(Error::BandsNotCovering { covered, dim: d });
        }
        Ok(())
    }
}

/// `"0,1:2;2:2"`: bands separated by `;`, each a comma list of frequencies
/// followed by `:redundancy`.
impl FromStr for BandSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<BandSpec> {
        let bad = |what: &str| Error::InvalidParams(format!("bands: {what} in {s:?}; expected e.g. \"0,1:2;2:2\""));
        let mut bands = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (freqs, r) = part.split_once(':').ok_or_else(|| bad("missing ':redundancy'"))?;
            let freqs = freqs
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("bad frequency"))?;
            let r = r.trim().parse::<usize>().map_err(|_| bad("bad redundancy"))?;
            bands.push((freqs, r));
        }
        Ok(BandSpec { bands })
    }
}

/// Unitary DFT with columns `F_l(x) = w_d^{l x} / sqrt(d)`.
pub fn dft_matrix(d: usize) -> ComplexMatrix {
    let s = 1.0 / (d as f64).sqrt();
    let mut f = ComplexMatrix::zeros(d, d);
    for x in 0..d {
        for l in 0..d {
            f[(x, l)] = root_of_unity((l * x) as i64, d) * s;
        }
    }
    f
}

/// For each band of `k` frequencies and redundancy `r`, the harmonic frame
/// of `r k` vectors on that band, written in the Fourier basis. Bands are
/// emitted in the given order and are mutually orthogonal.
pub fn dyadic_band_frame(spec: &BandSpec, d: usize) -> Result<Frame> {
    if d == 0 {
        return Err(Error::InvalidParams("d must be positive".into()));
    }
    spec.validate(d)?;
    let f = dft_matrix(d);
    let mut vectors = Vec::new();
    for (freqs, r) in &spec.bands {
        let k = freqs.len();
        let m = r * k;
        let s = 1.0 / (k as f64).sqrt();
        for j in 0..m {
            let mut v = vec![ZERO; d];
            for (i, &l) in freqs.iter().enumerate() {
                let c = root_of_unity((j * i) as i64, m) * s;
                for (x, vx) in v.iter_mut().enumerate() {
                    *vx += c * f[(x, l)];
                }
            }
            vectors.push(v);
        }
    }
    Frame::cyclic(vectors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnionOrder {
    /// All columns of basis 0, then basis 1, ...
    Concatenated,
    /// Column `j` of every basis before column `j + 1`.
    Interleaved,
}

/// Columns of `N` unitary matrices: a tight frame with bound `N`. `tol` is
/// the unitarity tolerance.
pub fn union_onb_frame(bases: &[ComplexMatrix], order: UnionOrder, tol: &Tolerance) -> Result<Frame> {
    let first = bases
        .first()
        .ok_or_else(|| Error::InvalidParams("at least one basis is required".into()))?;
    let d = first.rows();
    for (index, u) in bases.iter().enumerate() {
        if !u.is_square() || u.rows() != d {
            return Err(Error::DimensionMismatch(format!(
                "basis {index} is {}x{}, expected {d}x{d}",
                u.rows(),
                u.cols()
            )));
        }
        let deviation = (&u.adjoint() * u).max_abs_diff(&ComplexMatrix::identity(d));
        if deviation > tol.zero_tol {
            return Err(Error::NotUnitary { index, deviation });
        }
    }
    let vectors: Vec<Vec<Complex64>> = match order {
        UnionOrder::Concatenated => bases.iter().flat_map(|u| u.columns()).collect(),
        UnionOrder::Interleaved => (0..d)
            .flat_map(|j| bases.iter().map(move |u| u.column(j)))
            .collect(),
    };
    Frame::cyclic(vectors)
}
