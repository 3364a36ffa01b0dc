//! Brute-force reference: dense eigensolvers and multiset comparison.

use faer::{Mat, Side};
use serde::Serialize;

use crate::chars::CNum;
use crate::error::{Error, Result};
use crate::graphs::{BipartiteGraph, Graph};
use crate::matrix::CMatrix;
use crate::spectra::Spectrum;

/// Largest dense matrix order the oracle builds without an explicit override.
pub const DEFAULT_ORACLE_LIMIT: usize = 4000;

fn check_size(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::OracleTooLarge { size, limit })
    } else {
        Ok(())
    }
}

/// Adjacency spectrum of a graph through a dense symmetric eigensolver.
pub fn dense_spectrum<G: Graph>(g: &G, bucket_tol: f64) -> Result<Spectrum> {
    dense_spectrum_with_limit(g, bucket_tol, DEFAULT_ORACLE_LIMIT)
}

pub fn dense_spectrum_with_limit<G: Graph>(g: &G, bucket_tol: f64, limit: usize) -> Result<Spectrum> {
    let n = g.vertex_count();
    check_size(n, limit)?;
    let mut a = Mat::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        a[(u as usize, v as usize)] = 1.0;
        a[(v as usize, u as usize)] = 1.0;
    }
    let values = a
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    Ok(Spectrum::from_values(values, bucket_tol))
}

/// Spectrum of a bipartite graph as `+-` the singular values of its biadjacency matrix.
pub fn bipartite_spectrum(g: &BipartiteGraph, bucket_tol: f64) -> Result<Spectrum> {
    bipartite_spectrum_with_limit(g, bucket_tol, DEFAULT_ORACLE_LIMIT)
}

pub fn bipartite_spectrum_with_limit(
    g: &BipartiteGraph,
    bucket_tol: f64,
    limit: usize,
) -> Result<Spectrum> {
    let n = g.part_size();
    check_size(n, limit)?;
    let mut b = Mat::<f64>::zeros(n, n);
    for (p, l) in g.biadjacency() {
        b[(p as usize, l as usize)] = 1.0;
    }
    let sigma = b
        .singular_values()
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    Ok(Spectrum::from_values(
        sigma.iter().flat_map(|&s| [s, -s]),
        bucket_tol,
    ))
}

fn to_faer(m: &CMatrix) -> Mat<faer::c64> {
    Mat::from_fn(m.dim(), m.dim(), |j, k| m[(j, k)])
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    to_faer(m)
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))
}

/// Eigenvalues of a general complex matrix.
pub fn complex_eigenvalues(m: &CMatrix) -> Result<Vec<CNum>> {
    to_faer(m)
        .eigenvalues()
        .map_err(|e| Error::Eigensolver(format!("{e:?}")))
}

/// Largest deviation of a greedy nearest-neighbour matching between two
/// complex multisets of equal size, or `None` if the sizes differ.
pub fn match_complex(expected: &[CNum], found: &[CNum]) -> Option<f64> {
    if expected.len() != found.len() {
        return None;
    }
    let mut used = vec![false; found.len()];
    let mut worst = 0.0f64;
    for e in expected {
        let (idx, d) = found
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, f)| (i, (e - f).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        used[idx] = true;
        worst = worst.max(d);
    }
    Some(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub expected_value: f64,
    pub expected_multiplicity: u64,
    pub found_value: Option<f64>,
    pub found_multiplicity: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub matched: bool,
    pub tolerance: f64,
    pub mismatches: Vec<Mismatch>,
    pub max_abs_deviation: f64,
}

/// Compares two spectra bucket by bucket after rebucketing both at `tol`.
pub fn compare_spectra(expected: &Spectrum, found: &Spectrum, tol: f64) -> CompareReport {
    let a = expected.rebucket(tol);
    let b = found.rebucket(tol);
    let mut mismatches = Vec::new();
    let mut worst = 0.0f64;
    let n = a.entries().len().max(b.entries().len());
    for i in 0..n {
        let ea = a.entries().get(i).copied();
        let eb = b.entries().get(i).copied();
        match (ea, eb) {
            (Some((va, ma)), Some((vb, mb))) => {
                worst = worst.max((va - vb).abs());
                if (va - vb).abs() > tol || ma != mb {
                    mismatches.push(Mismatch {
                        expected_value: va,
                        expected_multiplicity: ma,
                        found_value: Some(vb),
                        found_multiplicity: Some(mb),
                    });
                }
            }
            (Some((va, ma)), None) => mismatches.push(Mismatch {
                expected_value: va,
                expected_multiplicity: ma,
                found_value: None,
                found_multiplicity: None,
            }),
            (None, Some((vb, mb))) => mismatches.push(Mismatch {
                expected_value: f64::NAN,
                expected_multiplicity: 0,
                found_value: Some(vb),
                found_multiplicity: Some(mb),
            }),
            (None, None) => unreachable!(),
        }
    }
    CompareReport {
        matched: mismatches.is_empty(),
        tolerance: tol,
        mismatches,
        max_abs_deviation: worst,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::SimpleGraph;

    #[test]
    fn cycle_spectrum() {
        let c5 = SimpleGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let s = dense_spectrum(&c5, 1e-9).unwrap();
        assert_eq!(s.total_multiplicity(), 5);
        assert_eq!(s.top().map(|t| t.1), Some(1));
        assert!((s.top().unwrap().0 - 2.0).abs() < 1e-12);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((s.entries()[1].0 - (phi - 1.0)).abs() < 1e-12);
        assert_eq!(s.entries()[1].1, 2);
    }

    #[test]
    fn size_guard() {
        let g = SimpleGraph::from_edges(10, [(0, 1)]).unwrap();
        assert!(matches!(
            dense_spectrum_with_limit(&g, 1e-9, 5),
            Err(Error::OracleTooLarge { size: 10, limit: 5 })
        ));
    }

    #[test]
    fn compare_detects_multiplicity() {
        let a = Spectrum::from_weighted([(2.0, 1), (0.0, 3)], 1e-9);
        let b = Spectrum::from_weighted([(2.0, 2), (0.0, 2)], 1e-9);
        let r = compare_spectra(&a, &b, 1e-6);
        assert!(!r.matched);
        assert_eq!(r.mismatches.len(), 2);
        assert!(compare_spectra(&a, &a, 1e-6).matched);
    }

    #[test]
    fn complex_eig_of_rotation() {
        let m = CMatrix::from_fn(2, |j, k| match (j, k) {
            (0, 1) => CNum::new(-1.0, 0.0),
            (1, 0) => CNum::new(1.0, 0.0),
            _ => CNum::new(0.0, 0.0),
        });
        let e = complex_eigenvalues(&m).unwrap();
        let d = match_complex(&[CNum::new(0.0, 1.0), CNum::new(0.0, -1.0)], &e).unwrap();
        assert!(d < 1e-12);
    }
}
