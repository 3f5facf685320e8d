//! Numeric logical successors `φ_{j+1} = F φ_j` in the full sector.
//!
//! Unlike the symbolic walk in `pathspec`, this also handles networks where
//! a successor is spread over several cursor sites.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::hamiltonian::SparseHamiltonian;
use super::sector::{dot, norm, SectorState};
use crate::error::{Error, Result};

/// Stop once `‖F φ_j‖` falls below this.
const END_OF_PATH: f64 = 1e-10;
/// Guard on `p · d` stored amplitudes.
const MAX_STORED: usize = 1 << 26;

/// The vectors `φ_1, …, φ_p`.
#[derive(Debug, Clone)]
pub struct LogicalChain {
    states: Vec<Vec<Complex64>>,
    // ‖F φ_j‖ before normalisation, j = 1..p-1
    forward_norms: Vec<f64>,
}

impl LogicalChain {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `φ_j`, 1-based.
    pub fn state(&self, j: usize) -> &[Complex64] {
        &self.states[j - 1]
    }

    pub fn states(&self) -> &[Vec<Complex64>] {
        &self.states
    }

    /// `‖F φ_j‖` for `j = 1..p-1`; all equal to one on a clean path.
    pub fn forward_norms(&self) -> &[f64] {
        &self.forward_norms
    }

    /// `⟨φ_j|ψ⟩` for `j = 1..=p`.
    pub fn overlaps(&self, psi: &SectorState) -> Result<Vec<Complex64>> {
        let a = psi.amplitudes();
        if self.states.first().is_some_and(|s| s.len() != a.len()) {
            return Err(Error::DimensionMismatch {
                expected: self.states[0].len(),
                found: a.len(),
            });
        }
        Ok(self.states.iter().map(|s| dot(s, a)).collect())
    }

    /// Index `q` of the site carrying most of `φ_j`'s weight.
    pub fn dominant_site(&self, h: &SparseHamiltonian, j: usize) -> usize {
        let b = h.basis();
        let s = &self.states[j - 1];
        (1..=b.sites())
            .map(|q| (q, s[b.site_range(q)].iter().map(|z| z.norm_sqr()).sum::<f64>()))
            .fold((1, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best })
            .0
    }
}

/// Applies `F` from `start` until it annihilates the state.
pub fn logical_chain(h: &SparseHamiltonian, start: &SectorState) -> Result<LogicalChain> {
    if start.basis() != h.basis() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: start.amplitudes().len(),
        });
    }
    let n0 = norm(start.amplitudes());
    if (n0 - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter("start state must be normalised".into()));
    }
    let d = h.dim();
    let mut states = alloc::vec![start.amplitudes().to_vec()];
    let mut forward_norms = Vec::new();
    loop {
        let next = h.forward(states.last().expect("non-empty"))?;
        let nn = norm(&next);
        if nn < END_OF_PATH {
            break;
        }
        if (states.len() + 1) * d > MAX_STORED {
            return Err(Error::InvalidParameter(alloc::format!(
                "logical chain longer than {} states of dimension {d}",
                states.len()
            )));
        }
        forward_norms.push(nn);
        states.push(next.iter().map(|z| z / nn).collect());
    }
    Ok(LogicalChain {
        states,
        forward_norms,
    })
}
