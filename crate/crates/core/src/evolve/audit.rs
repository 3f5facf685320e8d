//! Numerical checks of the conservation laws that confine the dynamics to
//! the logical path.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::hamiltonian::SparseHamiltonian;
use super::logical::{logical_chain, LogicalChain};
use super::sector::{dot, norm, SectorState};
use crate::error::Result;

const PROBES: usize = 4;

/// Residuals reported by [`audit_conservation`]. All vanish (to rounding)
/// on a valid machine.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    /// `max ‖[H, σ_1(ν)] v‖ / ‖v‖` over probe vectors.
    pub output_commutator: f64,
    /// Largest weight `H` leaves on the cursor site a probe started from.
    /// Zero when every term moves the single cursor excitation by one link,
    /// which is what keeps the one-excitation sector closed.
    pub cursor_residual: f64,
    /// `max_j ‖(1 - P) H φ_j‖`, `P` the projector on the logical span.
    pub span_residual: f64,
    /// `max_j` of `|‖F φ_j‖ - 1|`, `‖F^T φ_{j+1} - φ_j‖` and
    /// `|⟨φ_i|φ_j⟩ - δ_ij|`: how far `H` is from a plain hopping chain on
    /// the span.
    pub chain_residual: f64,
    /// Number `p` of logical successors from the start state.
    pub path_len: usize,
}

impl AuditReport {
    pub fn max_residual(&self) -> f64 {
        self.output_commutator
            .max(self.cursor_residual)
            .max(self.span_residual)
            .max(self.chain_residual)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual() < tol
    }
}

fn probe(d: usize, k: usize) -> Vec<Complex64> {
    // deterministic, dense, no special structure
    let v: Vec<Complex64> = (0..d)
        .map(|i| {
            let x = i as f64 + 1.0;
            Complex64::new(
                crate::math::sin(x * 0.754_877_666 * (k + 1) as f64 + k as f64),
                crate::math::cos(x * 0.569_840_291 + 0.3 * k as f64),
            )
        })
        .collect();
    let n = norm(&v);
    v.into_iter().map(|z| z / n).collect()
}

fn flip_output(h: &SparseHamiltonian, v: &[Complex64]) -> Vec<Complex64> {
    let half = h.basis().register_dim() / 2;
    let mut out = v.to_vec();
    for chunk in out.chunks_exact_mut(2 * half) {
        let (lo, hi) = chunk.split_at_mut(half);
        lo.swap_with_slice(hi);
    }
    out
}

fn output_commutator(h: &SparseHamiltonian) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in 0..PROBES {
        let v = probe(h.dim(), k);
        let a = h.apply(&flip_output(h, &v))?;
        let b = flip_output(h, &h.apply(&v)?);
        let diff: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        worst = worst.max(norm(&diff));
    }
    Ok(worst)
}

fn cursor_residual(h: &SparseHamiltonian) -> Result<f64> {
    let basis = h.basis();
    let mut worst = 0.0f64;
    for k in 0..PROBES {
        let full = probe(h.dim(), k);
        for q in 1..=basis.sites() {
            let mut v = alloc::vec![Complex64::new(0.0, 0.0); h.dim()];
            let r = basis.site_range(q);
            v[r.clone()].copy_from_slice(&full[r.clone()]);
            let hv = h.apply(&v)?;
            worst = worst.max(norm(&hv[r]));
        }
    }
    Ok(worst)
}

fn chain_residuals(h: &SparseHamiltonian, chain: &LogicalChain) -> Result<(f64, f64)> {
    let states = chain.states();
    let mut span = 0.0f64;
    let mut structure = 0.0f64;
    for (j, phi) in states.iter().enumerate() {
        let mut r = h.apply(phi)?;
        for other in states {
            let c = dot(other, &r);
            for (ri, oi) in r.iter_mut().zip(other) {
                *ri -= oi * c;
            }
        }
        span = span.max(norm(&r));
        for (i, other) in states.iter().enumerate().skip(j) {
            let g = dot(other, phi);
            let want = if i == j { 1.0 } else { 0.0 };
            structure = structure.max((g - want).norm());
        }
        if j + 1 < states.len() {
            structure = structure.max((chain.forward_norms()[j] - 1.0).abs());
            let back = h.backward(&states[j + 1])?;
            let diff: Vec<Complex64> = back.iter().zip(phi).map(|(a, b)| a - b).collect();
            structure = structure.max(norm(&diff));
        }
    }
    Ok((span, structure))
}

/// Audit from the Grover initial condition.
pub fn audit_conservation(h: &SparseHamiltonian) -> Result<AuditReport> {
    audit_from(h, &SectorState::grover_initial(*h.basis())?)
}

/// Audit with the logical path grown from `start`.
pub fn audit_from(h: &SparseHamiltonian, start: &SectorState) -> Result<AuditReport> {
    let chain = logical_chain(h, start)?;
    let (span_residual, chain_residual) = chain_residuals(h, &chain)?;
    Ok(AuditReport {
        output_commutator: output_commutator(h)?,
        cursor_residual: cursor_residual(h)?,
        span_residual,
        chain_residual,
        path_len: chain.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::hamiltonian::assemble;
    use crate::pathspec::{build_linear_chain, build_subroutine_machine, EdgeLabel};
    use crate::spinops::TargetWord;

    #[test]
    fn linear_chain_is_clean() {
        let a = TargetWord::from_index(2, 3).unwrap();
        let h = assemble(&build_linear_chain(2, 9).unwrap(), &a, 1.0).unwrap();
        let r = audit_conservation(&h).unwrap();
        assert!(r.passes(1e-12), "{r:?}");
        assert_eq!(r.path_len, 9);
    }

    #[test]
    fn subroutine_span_is_invariant() {
        let a = TargetWord::from_index(2, 1).unwrap();
        let h = assemble(&build_subroutine_machine(2, 1).unwrap(), &a, 1.0).unwrap();
        let r = audit_conservation(&h).unwrap();
        assert!(r.passes(1e-12), "{r:?}");
        assert_eq!(r.path_len, 11);
    }

    #[test]
    fn corrupted_label_is_detected() {
        let a = TargetWord::from_index(2, 1).unwrap();
        let g = build_linear_chain(2, 9).unwrap();
        // a projector on a qubit that is not sharp halves the forward image
        let bad = g
            .with_label(1, EdgeLabel::ProjectorPlus { qubit: 1, axis: crate::pathspec::Axis::Z })
            .unwrap();
        let h = assemble(&bad, &a, 1.0).unwrap();
        let r = audit_conservation(&h).unwrap();
        assert!(r.span_residual > 0.1, "{r:?}");
        assert!(!r.passes(1e-12));
        // a shortened path is still a clean path
        let idx = build_subroutine_machine(2, 1)
            .unwrap()
            .edges()
            .iter()
            .position(|e| matches!(e.label, EdgeLabel::CounterX(_)))
            .unwrap();
        let short = build_subroutine_machine(2, 1)
            .unwrap()
            .with_label(idx, EdgeLabel::CounterRaise(1))
            .unwrap();
        let r = audit_conservation(&assemble(&short, &a, 1.0).unwrap()).unwrap();
        assert!(r.passes(1e-12) && r.path_len < 11, "{r:?}");
    }
}
