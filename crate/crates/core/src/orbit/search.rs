use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{Frame, IndexKind};
use crate::linalg::ComplexMatrix;

/// Largest frame the exhaustive search accepts: `(M - 1)!` orderings.
pub const EXHAUSTIVE_CAP: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchVerdict {
    Some,
    NoOrderingRepresentable,
    NoneFoundInSample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tested: u64,
    /// Passing orderings in lexicographic order, at most `limit` of them.
    pub passing: Vec<Vec<usize>>,
    pub passing_total: u64,
    pub verdict: SearchVerdict,
}

/// Searches orderings of the frame (index 0 fixed, since rotations do not
/// change the answer) whose cross Gram matrix is circulant.
pub fn ordering_search(frame: &Frame, mode: SearchMode, limit: usize) -> Result<SearchResult> {
    ordering_search_with(frame, mode, limit, true)
}

/// As [`ordering_search`], optionally single-threaded. Both paths return
/// identical results.
pub fn ordering_search_with(frame: &Frame, mode: SearchMode, limit: usize, parallel: bool) -> Result<SearchResult> {
    if frame.kind() == IndexKind::Windowed {
        return Err(Error::WindowedModelUnsupported);
    }
    let m = frame.len();
    if let SearchMode::Exhaustive = mode {
        if m > EXHAUSTIVE_CAP {
            return Err(Error::TooLarge {
                size: m,
                cap: EXHAUSTIVE_CAP,
            });
        }
    }
    let g = frame.dual_cross_gram()?;
    let checker = Checker {
        threshold: frame.tol().zero_tol * g.max_abs(),
        g,
        m,
    };
    match mode {
        SearchMode::Exhaustive => {
            let (passing, passing_total, tested) = exhaustive(&checker, limit, parallel);
            Ok(SearchResult {
                mode: "exhaustive",
                samples: None,
                seed: None,
                tested,
                passing,
                passing_total,
                verdict: if passing_total > 0 {
                    SearchVerdict::Some
                } else {
                    SearchVerdict::NoOrderingRepresentable
                },
            })
        }
        SearchMode::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let perms: Vec<Vec<usize>> = (0..samples)
                .map(|_| {
                    let mut p: Vec<usize> = (0..m).collect();
                    p[1..].shuffle(&mut rng);
                    p
                })
                .collect();
            let mut passing: Vec<Vec<usize>> = if parallel {
                perms.into_par_iter().filter(|p| checker.full(p)).collect()
            } else {
                perms.into_iter().filter(|p| checker.full(p)).collect()
            };
            passing.sort();
            passing.dedup();
            let passing_total = passing.len() as u64;
            passing.truncate(limit);
            Ok(SearchResult {
                mode: "random",
                samples: Some(samples),
                seed: Some(seed),
                tested: samples,
                passing,
                passing_total,
                verdict: if passing_total > 0 {
                    SearchVerdict::Some
                } else {
                    SearchVerdict::NoneFoundInSample
                },
            })
        }
    }
}

struct Checker {
    g: ComplexMatrix,
    threshold: f64,
    m: usize,
}

impl Checker {
    fn pair_ok(&self, p: &[usize], i: usize, j: usize) -> bool {
        let (si, sj) = ((i + 1) % self.m, (j + 1) % self.m);
        (self.g[(p[i], p[j])] - self.g[(p[si], p[sj])]).norm() <= self.threshold
    }

    /// Pairs that become checkable once position `k` is filled.
    fn extends(&self, p: &[usize], k: usize) -> bool {
        let last = k - 1;
        (0..=last).all(|x| self.pair_ok(p, last, x) && self.pair_ok(p, x, last))
    }

    /// Pairs whose successor wraps around to position 0.
    fn closes(&self, p: &[usize]) -> bool {
        let last = self.m - 1;
        (0..self.m).all(|x| self.pair_ok(p, last, x) && self.pair_ok(p, x, last))
    }

    fn full(&self, p: &[usize]) -> bool {
        (1..self.m).all(|k| self.extends(p, k)) && self.closes(p)
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

struct Dfs<'a> {
    checker: &'a Checker,
    limit: usize,
    perm: Vec<usize>,
    used: Vec<bool>,
    passing: Vec<Vec<usize>>,
    total: u64,
    tested: u64,
}

impl Dfs<'_> {
    fn run(&mut self) {
        let k = self.perm.len();
        let m = self.checker.m;
        if k == m {
            self.tested += 1;
            if self.checker.closes(&self.perm) {
                self.total += 1;
                if self.passing.len() < self.limit {
                    self.passing.push(self.perm.clone());
                }
            }
            return;
        }
        for next in 0..m {
            if self.used[next] {
                continue;
            }
            self.perm.push(next);
            if self.checker.extends(&self.perm, k) {
                self.used[next] = true;
                self.run();
                self.used[next] = false;
            } else {
                self.tested += factorial(m - k - 1);
            }
            self.perm.pop();
        }
    }
}

fn exhaustive(checker: &Checker, limit: usize, parallel: bool) -> (Vec<Vec<usize>>, u64, u64) {
    let m = checker.m;
    let branch = |first: Option<usize>| {
        let mut dfs = Dfs {
            checker,
            limit,
            perm: vec![0],
            used: vec![false; m],
            passing: Vec::new(),
            total: 0,
            tested: 0,
        };
        dfs.used[0] = true;
        if let Some(p1) = first {
            dfs.perm.push(p1);
            if !checker.extends(&dfs.perm, 1) {
                return (Vec::new(), 0, factorial(m - 2));
            }
            dfs.used[p1] = true;
        }
        dfs.run();
        (dfs.passing, dfs.total, dfs.tested)
    };
    let parts: Vec<(Vec<Vec<usize>>, u64, u64)> = if m < 3 {
        vec![branch(None)]
    } else if parallel {
        (1..m).into_par_iter().map(|p1| branch(Some(p1))).collect()
    } else {
        (1..m).map(|p1| branch(Some(p1))).collect()
    };
    let mut passing = Vec::new();
    let (mut total, mut tested) = (0, 0);
    for (p, t, n) in parts {
        passing.extend(p);
        total += t;
        tested += n;
    }
    passing.truncate(limit);
    (passing, total, tested)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{root_of_unity, ONE, ZERO};
    use num_complex::Complex64;

    fn harmonic2(order: &[i64]) -> Frame {
        let s = 1.0 / 2f64.sqrt();
        let m = order.len();
        Frame::cyclic(
            order
                .iter()
                .map(|&n| vec![Complex64::new(s, 0.0), root_of_unity(n, m) * s])
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn swapped_harmonic_has_two_orderings() {
        let f = harmonic2(&[0, 2, 1, 3]);
        let r = ordering_search(&f, SearchMode::Exhaustive, 10).unwrap();
        assert_eq!(r.tested, 6);
        assert_eq!(r.verdict, SearchVerdict::Some);
        // natural order and its reversal, in positions of the swapped frame
        assert_eq!(r.passing, vec![vec![0, 2, 1, 3], vec![0, 3, 1, 2]]);
    }

    #[test]
    fn basis_every_ordering_passes() {
        let f = Frame::cyclic(crate::linalg::ComplexMatrix::identity(5).columns()).unwrap();
        let r = ordering_search(&f, SearchMode::Exhaustive, 3).unwrap();
        assert_eq!(r.tested, 24);
        assert_eq!(r.passing_total, 24);
        assert_eq!(r.passing.len(), 3);
        assert_eq!(r.passing[0], vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn obstructed_frame_has_none() {
        let r2 = 2f64.sqrt();
        let f = Frame::cyclic(vec![
            vec![Complex64::new(r2, 0.0), ZERO],
            vec![ZERO, ONE],
            vec![ZERO, ONE],
        ])
        .unwrap();
        let r = ordering_search(&f, SearchMode::Exhaustive, 10).unwrap();
        assert_eq!(r.verdict, SearchVerdict::NoOrderingRepresentable);
        assert_eq!(r.tested, 2);
    }

    #[test]
    fn parallel_matches_sequential() {
        let f = harmonic2(&[0, 3, 5, 1, 4, 2, 6]);
        let a = ordering_search_with(&f, SearchMode::Exhaustive, 100, true).unwrap();
        let b = ordering_search_with(&f, SearchMode::Exhaustive, 100, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.tested, 720);
        let mode = SearchMode::Random { samples: 500, seed: 3 };
        let a = ordering_search_with(&f, mode, 100, true).unwrap();
        let b = ordering_search_with(&f, mode, 100, false).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exhaustive_agrees_with_brute_force() {
        let f = harmonic2(&[0, 2, 4, 1, 3, 5]);
        let r = ordering_search(&f, SearchMode::Exhaustive, usize::MAX).unwrap();
        let mut brute = Vec::new();
        let mut rest: Vec<usize> = (1..6).collect();
        permute(&mut rest, 0, &mut |p| {
            let mut perm = vec![0];
            perm.extend_from_slice(p);
            let fr = f.reordered(&perm).unwrap();
            if crate::orbit::circulant_cross_gram_test(&fr).unwrap().pass {
                brute.push(perm);
            }
        });
        brute.sort();
        assert_eq!(r.passing, brute);
        // generators w^k for k coprime to 6 give the two orderings
        assert_eq!(r.passing_total, 2);
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn random_mode_is_reproducible() {
        let f = harmonic2(&[0, 2, 1, 3]);
        let mode = SearchMode::Random { samples: 50, seed: 7 };
        let a = ordering_search(&f, mode, 10).unwrap();
        assert_eq!(a, ordering_search(&f, mode, 10).unwrap());
        assert_eq!(a.tested, 50);
        assert_eq!(a.verdict, SearchVerdict::Some);
    }

    #[test]
    fn caps_and_model_checks() {
        let f = Frame::cyclic(crate::linalg::ComplexMatrix::identity(10).columns()).unwrap();
        assert_eq!(
            ordering_search(&f, SearchMode::Exhaustive, 1),
            Err(Error::TooLarge { size: 10, cap: 9 })
        );
        let w = f.with_kind(IndexKind::Windowed);
        assert_eq!(
            ordering_search(&w, SearchMode::Exhaustive, 1),
            Err(Error::WindowedModelUnsupported)
        );
    }
}
