//! Inline parameter syntax for `make`.

use num_complex::Complex64;

use frameorbit::structured::dft_matrix;
use frameorbit::ComplexMatrix;

/// `"1,1,0,0"` or `"1:0.5,0,-1:2"` (real or `re:im` entries).
pub fn parse_vector(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',')
        .map(|entry| {
            let entry = entry.trim();
            let (re, im) = entry.split_once(':').unwrap_or((entry, "0"));
            match (re.trim().parse::<f64>(), im.trim().parse::<f64>()) {
                (Ok(re), Ok(im)) if re.is_finite() && im.is_finite() => Ok(Complex64::new(re, im)),
                _ => Err(format!("window: cannot parse entry {entry:?}; use re or re:im")),
            }
        })
        .collect()
}

/// `"raster"` or a comma-separated permutation.
pub fn parse_ordering(s: &str) -> Result<Option<Vec<usize>>, String> {
    if s.trim() == "raster" {
        return Ok(None);
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("ordering: bad index {x:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

/// Named bases: `identity`, `dft`.
pub fn parse_bases(s: &str, d: usize) -> Result<Vec<ComplexMatrix>, String> {
    s.split(',')
        .map(|name| match name.trim() {
            "identity" => Ok(ComplexMatrix::identity(d)),
            "dft" => Ok(dft_matrix(d)),
            other => Err(format!("bases: unknown basis {other:?}; known: identity, dft")),
        })
        .collect()
}
