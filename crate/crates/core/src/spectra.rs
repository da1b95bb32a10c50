//! Dense Hermitian eigensolver with deterministic ordering, sector-resolved
//! spectrum reports, and multiset spectrum comparison.

use crate::linalg::CMat;
use crate::sparse::SparseOperator;
use crate::{Error, Result, DEGENERACY_GAP, TOL_OPERATOR};
use serde::Serialize;

/// Eigendecomposition of a Hermitian sparse operator: ascending real
/// eigenvalues and an orthonormal eigenvector matrix with pinned phases.
pub fn eigensolve(op: &SparseOperator) -> Result<(Vec<f64>, CMat)> {
    let defect = op.hermiticity_defect();
    if defect > TOL_OPERATOR {
        return Err(Error::NonHermitian(defect));
    }
    let d = op.to_dense();
    let (vals, vecs) = crate::linalg::eigh(&d);
    // residual guard
    for (k, lam) in vals.iter().enumerate() {
        let v = vecs.column(k);
        let hv = &d * v;
        let mut worst = 0.0f64;
        for i in 0..d.nrows() {
            worst = worst.max((hv[i] - v[i] * crate::linalg::cr(*lam)).norm());
        }
        if worst > 1e-9 {
            return Err(Error::ToleranceViolated {
                identity: format!("eigenpair residual at index {k}"),
                residual: worst,
            });
        }
    }
    Ok((vals, vecs))
}

/// Dense Hermitian block variant.
pub fn eigensolve_dense(block: &CMat) -> Result<Vec<f64>> {
    let defect = crate::linalg::max_diff(block, &block.adjoint());
    if defect > TOL_OPERATOR {
        return Err(Error::NonHermitian(defect));
    }
    Ok(crate::linalg::eigh(block).0)
}

/// Result of a multiset comparison of two sorted spectra.
#[derive(Debug, Clone, Serialize)]
pub struct MatchReport {
    pub len_a: usize,
    pub len_b: usize,
    pub max_gap: f64,
    pub matches: bool,
}

/// Greedy sorted pairing of two eigenvalue lists.
pub fn compare_spectra(a: &[f64], b: &[f64], tol: f64) -> MatchReport {
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.partial_cmp(y).unwrap());
    sb.sort_by(|x, y| x.partial_cmp(y).unwrap());
    if sa.len() != sb.len() {
        return MatchReport {
            len_a: sa.len(),
            len_b: sb.len(),
            max_gap: f64::INFINITY,
            matches: false,
        };
    }
    let max_gap = sa
        .iter()
        .zip(&sb)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    MatchReport {
        len_a: sa.len(),
        len_b: sb.len(),
        max_gap,
        matches: max_gap <= tol,
    }
}

/// Group an ascending eigenvalue list into degenerate multiplets.
pub fn degeneracy_table(vals: &[f64]) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in vals {
        match out.last_mut() {
            Some((rep, count)) if (v - *rep).abs() < DEGENERACY_GAP => *count += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Sector-resolved spectrum report of one model at one boundary.
#[derive(Debug, Serialize)]
pub struct SpectrumReport {
    pub model: String,
    pub boundary: String,
    pub length: usize,
    pub dim: usize,
    pub sectors: Vec<SectorSpectrum>,
    pub trace_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct SectorSpectrum {
    pub sector: String,
    pub slot: String,
    pub dim: usize,
    pub eigenvalues: Vec<f64>,
    pub degeneracies: Vec<(f64, usize)>,
}

/// Full sector-resolved report; checks that the sector spectra reassemble
/// the full spectrum as a multiset.
pub fn spectrum_report(
    model: &crate::hamiltonian::ModelSpec,
    space: &crate::statespace::StateSpace,
    h: &SparseOperator,
    boundary_label: &str,
) -> Result<SpectrumReport> {
    let world = space.world();
    let blocks = crate::tubealg::sector_decompose(space, h)?;
    let (full, _) = eigensolve(h)?;
    let mut all: Vec<f64> = Vec::new();
    let mut sectors = Vec::new();
    for (label, slot, block) in blocks {
        let vals = eigensolve_dense(&block)?;
        all.extend_from_slice(&vals);
        let cat = world.endo(space.config.module);
        sectors.push(SectorSpectrum {
            sector: label.to_string(),
            slot: format!("{}[{}]", cat.simples[slot.0].name, slot.1),
            dim: vals.len(),
            degeneracies: degeneracy_table(&vals),
            eigenvalues: vals,
        });
    }
    let rep = compare_spectra(&full, &all, crate::TOL_SPECTRA);
    if !rep.matches {
        return Err(Error::ToleranceViolated {
            identity: "sector completeness of the spectrum".into(),
            residual: rep.max_gap,
        });
    }
    let trace: f64 = h.trace().re;
    let sum: f64 = full.iter().sum();
    Ok(SpectrumReport {
        model: model.name.to_string(),
        boundary: boundary_label.to_string(),
        length: space.config.length,
        dim: space.dim(),
        sectors,
        trace_residual: (trace - sum).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_unit_spectrum() {
        let op = SparseOperator::identity(5);
        let (vals, _) = eigensolve(&op).unwrap();
        assert!(vals.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn compare_reports_mismatch() {
        let r = compare_spectra(&[0.0, 1.0], &[0.0], 1e-9);
        assert!(!r.matches);
        let r = compare_spectra(&[0.0, 1.0], &[1.0 + 1e-12, -1e-12], 1e-9);
        assert!(r.matches);
        assert!(r.max_gap < 1e-9);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let mut op = SparseOperator::new(2, 2);
        op.push(0, 1, num_complex::Complex64::new(1.0, 0.0));
        assert!(matches!(eigensolve(&op), Err(Error::NonHermitian(_))));
    }
}
