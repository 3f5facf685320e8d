//! Sector Hamiltonian `H = -λ/2 (F + F^T)` of a compiled cursor graph.
//!
//! `F` is kept at block level: one entry per forward edge, pointing at a
//! matrix-free kernel acting on the `2^ν 2^K` register ⊗ counter block of
//! its source site. Every label is a real matrix in the z basis, so `H` is
//! real symmetric; states stay complex.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::sector::{norm, SectorBasis};
use crate::error::{Error, Result};
use crate::pathspec::{Axis, CursorGraph, EdgeLabel};
use crate::spinops::{estimator_in_place, oracle_in_place, TargetWord};

const UNITARITY_TOL: f64 = 1e-12;

/// Real 2×2 matrix `[m00, m01, m10, m11]` (row = output) on one bit of the
/// block index.
type Pair = [f64; 4];

const H: f64 = 0.5;

/// Kernel of one label on a register ⊗ counter block.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Kernel {
    Identity,
    Oracle { word: usize },
    Estimator,
    OnBit { bit: usize, m: Pair },
}

impl Kernel {
    fn transpose(self) -> Kernel {
        match self {
            Kernel::OnBit { bit, m } => Kernel::OnBit {
                bit,
                m: [m[0], m[2], m[1], m[3]],
            },
            k => k,
        }
    }

    /// Applies the kernel in place to one block.
    fn apply(&self, block: &mut [Complex64], mu: usize) {
        let reg = 1usize << (mu + 1);
        match *self {
            Kernel::Identity => {}
            Kernel::Oracle { word } => {
                for sub in block.chunks_exact_mut(reg) {
                    oracle_in_place(sub, mu, word);
                }
            }
            Kernel::Estimator => {
                for sub in block.chunks_exact_mut(reg) {
                    estimator_in_place(sub, mu);
                }
            }
            Kernel::OnBit { bit, m } => {
                let step = 1usize << bit;
                for base in (0..block.len()).filter(|i| i & step == 0) {
                    let (a0, a1) = (block[base], block[base | step]);
                    block[base] = a0 * m[0] + a1 * m[1];
                    block[base | step] = a0 * m[2] + a1 * m[3];
                }
            }
        }
    }
}

// Matrices in the (bit 0, bit 1) = (+1, -1) basis.
const LOWER_Z: Pair = [0.0, 0.0, 1.0, 0.0];
const RAISE_Z: Pair = [0.0, 1.0, 0.0, 0.0];
const UP_Z: Pair = [1.0, 0.0, 0.0, 0.0];
const DOWN_Z: Pair = [0.0, 0.0, 0.0, 1.0];
// |x-><x+|, |x+><x-|, |x+><x+|, |x-><x-|
const LOWER_X: Pair = [H, H, -H, -H];
const RAISE_X: Pair = [H, -H, H, -H];
const UP_X: Pair = [H, H, H, H];
const DOWN_X: Pair = [H, -H, -H, H];
const FLIP: Pair = [0.0, 1.0, 1.0, 0.0];

fn swap_roles(m: Pair) -> Pair {
    // conjugation by the bit flip: exchanges which z state counts as "up"
    [m[3], m[2], m[1], m[0]]
}

fn kernel_of(label: &EdgeLabel, mu: usize, target: &TargetWord) -> Result<Kernel> {
    let switch = |qubit: usize, axis: Axis, z: Pair, x: Pair| -> Result<Kernel> {
        let m = match axis {
            Axis::Z => z,
            Axis::X => x,
            Axis::TwistedZ => {
                if qubit > mu {
                    return Err(Error::MalformedGraph(format!(
                        "`{label}` twists the output qubit by the target word"
                    )));
                }
                if target.bit(qubit) > 0 {
                    z
                } else {
                    swap_roles(z)
                }
            }
        };
        Ok(Kernel::OnBit { bit: qubit - 1, m })
    };
    let counter_bit = |k: usize| mu + 1 + k - 1;
    Ok(match *label {
        EdgeLabel::Delay => Kernel::Identity,
        EdgeLabel::OracleA => Kernel::Oracle {
            word: target.index(),
        },
        EdgeLabel::EstimatorB => Kernel::Estimator,
        EdgeLabel::NotOutput => Kernel::OnBit { bit: mu, m: FLIP },
        EdgeLabel::SwitchLower { qubit, axis } => switch(qubit, axis, LOWER_Z, LOWER_X)?,
        EdgeLabel::SwitchRaise { qubit, axis } => switch(qubit, axis, RAISE_Z, RAISE_X)?,
        EdgeLabel::ProjectorPlus { qubit, axis } => switch(qubit, axis, UP_Z, UP_X)?,
        EdgeLabel::ProjectorMinus { qubit, axis } => switch(qubit, axis, DOWN_Z, DOWN_X)?,
        // ρ_+ takes ρ_3 = -1 (bit 1) to +1 (bit 0)
        EdgeLabel::CounterRaise(k) => Kernel::OnBit {
            bit: counter_bit(k),
            m: RAISE_Z,
        },
        EdgeLabel::CounterLower(k) => Kernel::OnBit {
            bit: counter_bit(k),
            m: LOWER_Z,
        },
        EdgeLabel::CounterX(k) => Kernel::OnBit {
            bit: counter_bit(k),
            m: FLIP,
        },
    })
}

/// Largest `‖K^T K e - e‖` over the basis vectors `e` of one block.
fn unitarity_residual(kernel: Kernel, basis: &SectorBasis) -> f64 {
    let b = basis.block_dim();
    let mu = basis.mu();
    let mut worst = 0.0f64;
    let mut v = vec![Complex64::new(0.0, 0.0); b];
    for i in 0..b {
        v.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        v[i] = Complex64::new(1.0, 0.0);
        kernel.apply(&mut v, mu);
        kernel.transpose().apply(&mut v, mu);
        v[i] -= Complex64::new(1.0, 0.0);
        worst = worst.max(norm(&v));
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Hop {
    from: usize,
    to: usize,
    kernel: usize,
}

/// `H = -λ/2 (F + F^T)` on the one-excitation sector of a graph.
///
/// Immutable after assembly; safe to share between threads.
#[derive(Debug, Clone)]
pub struct SparseHamiltonian {
    basis: SectorBasis,
    lambda: f64,
    hops: Vec<Hop>,
    kernels: Vec<Kernel>,
    labels: Vec<EdgeLabel>,
    target: TargetWord,
}

/// Builds the sector Hamiltonian of `graph` with the oracle word `target`.
///
/// The target word is needed by `A` and by `a`-twisted switches; graphs
/// without either ignore it.
pub fn assemble(graph: &CursorGraph, target: &TargetWord, lambda: f64) -> Result<SparseHamiltonian> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParameter("coupling rate must be positive".into()));
    }
    if target.mu() != graph.mu() {
        return Err(Error::DimensionMismatch {
            expected: graph.mu(),
            found: target.mu(),
        });
    }
    let basis = SectorBasis::of_graph(graph)?;
    let mut labels: Vec<EdgeLabel> = Vec::new();
    let mut kernels = Vec::new();
    let mut hops = Vec::with_capacity(graph.edges().len());
    for e in graph.edges() {
        let kernel = match labels.iter().position(|l| *l == e.label) {
            Some(k) => k,
            None => {
                let kern = kernel_of(&e.label, graph.mu(), target)?;
                if e.label.is_unitary() {
                    let residual = unitarity_residual(kern, &basis);
                    if residual > UNITARITY_TOL {
                        return Err(Error::NonUnitaryLabel {
                            label: e.label.to_string(),
                            residual,
                        });
                    }
                }
                labels.push(e.label);
                kernels.push(kern);
                kernels.len() - 1
            }
        };
        hops.push(Hop {
            from: e.from,
            to: e.to,
            kernel,
        });
    }
    Ok(SparseHamiltonian {
        basis,
        lambda,
        hops,
        kernels,
        labels,
        target: target.clone(),
    })
}

impl SparseHamiltonian {
    pub fn basis(&self) -> &SectorBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn target(&self) -> &TargetWord {
        &self.target
    }

    /// Distinct labels, in order of first appearance.
    pub fn labels(&self) -> &[EdgeLabel] {
        &self.labels
    }

    fn check_len(&self, v: &[Complex64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(())
    }

    fn accumulate(&self, v: &[Complex64], out: &mut [Complex64], scale: f64, fwd: bool, adj: bool) {
        let mu = self.basis.mu();
        let mut tmp = vec![Complex64::new(0.0, 0.0); self.basis.block_dim()];
        for hop in &self.hops {
            let k = self.kernels[hop.kernel];
            if fwd {
                tmp.copy_from_slice(&v[self.basis.site_range(hop.from)]);
                k.apply(&mut tmp, mu);
                for (o, t) in out[self.basis.site_range(hop.to)].iter_mut().zip(&tmp) {
                    *o += t * scale;
                }
            }
            if adj {
                tmp.copy_from_slice(&v[self.basis.site_range(hop.to)]);
                k.transpose().apply(&mut tmp, mu);
                for (o, t) in out[self.basis.site_range(hop.from)].iter_mut().zip(&tmp) {
                    *o += t * scale;
                }
            }
        }
    }

    /// `H v`.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v)?;
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        self.accumulate(v, &mut out, -0.5 * self.lambda, true, true);
        Ok(out)
    }

    /// `F v`, the forward part with unit couplings.
    pub fn forward(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v)?;
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        self.accumulate(v, &mut out, 1.0, true, false);
        Ok(out)
    }

    /// `F^T v`.
    pub fn backward(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v)?;
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        self.accumulate(v, &mut out, 1.0, false, true);
        Ok(out)
    }

    /// Explicit real matrix of `H`. Memory grows as `d²`.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let d = self.dim();
        let b = self.basis.block_dim();
        let mu = self.basis.mu();
        let scale = -0.5 * self.lambda;
        let mut m = DMatrix::<f64>::zeros(d, d);
        let mut col = vec![Complex64::new(0.0, 0.0); b];
        for hop in &self.hops {
            let k = self.kernels[hop.kernel];
            let (i0, f0) = ((hop.from - 1) * b, (hop.to - 1) * b);
            for c in 0..b {
                col.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
                col[c] = Complex64::new(1.0, 0.0);
                k.apply(&mut col, mu);
                for (r, z) in col.iter().enumerate() {
                    if z.re != 0.0 {
                        m[(f0 + r, i0 + c)] += scale * z.re;
                        m[(i0 + c, f0 + r)] += scale * z.re;
                    }
                }
            }
        }
        m
    }

    /// Non-zero `(row, col, value)` entries of `H`, row-major.
    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        let m = self.to_dense();
        let d = self.dim();
        let mut out = Vec::new();
        for r in 0..d {
            for c in 0..d {
                if m[(r, c)] != 0.0 {
                    out.push((r, c, m[(r, c)]));
                }
            }
        }
        out
    }

    /// Number of block couplings: one per (edge, input basis state with a
    /// non-zero image), counted for `F` and for `F^T`.
    pub fn coupling_count(&self) -> usize {
        let b = self.basis.block_dim();
        let mu = self.basis.mu();
        let mut col = vec![Complex64::new(0.0, 0.0); b];
        let mut count = 0;
        for hop in &self.hops {
            let k = self.kernels[hop.kernel];
            for kern in [k, k.transpose()] {
                for c in 0..b {
                    col.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
                    col[c] = Complex64::new(1.0, 0.0);
                    kern.apply(&mut col, mu);
                    if col.iter().any(|z| z.norm_sqr() > 0.0) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// `max |H_ij - H_ji|` of the explicit matrix.
    pub fn hermiticity_residual(&self) -> f64 {
        let m = self.to_dense();
        let d = self.dim();
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in r + 1..d {
                worst = worst.max((m[(r, c)] - m[(c, r)]).abs());
            }
        }
        worst
    }

    /// `⟨v|H|v⟩`.
    pub fn energy(&self, v: &[Complex64]) -> Result<f64> {
        let hv = self.apply(v)?;
        Ok(super::sector::dot(v, &hv).re)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathspec::{build_cnot_network, build_linear_chain, SwitchVariant};
    use crate::spinops::{apply_estimator, apply_oracle, RegisterVector};

    fn target(mu: usize, idx: usize) -> TargetWord {
        TargetWord::from_index(mu, idx).unwrap()
    }

    #[test]
    fn small_chain_dimension_and_symmetry() {
        let g = build_linear_chain(1, 3).unwrap();
        let h = assemble(&g, &target(1, 1), 1.0).unwrap();
        assert_eq!(h.dim(), 12);
        assert_eq!(h.hermiticity_residual(), 0.0);
    }

    #[test]
    fn coupling_count_of_a_chain() {
        let g = build_linear_chain(2, 9).unwrap();
        let h = assemble(&g, &target(2, 2), 1.0).unwrap();
        assert_eq!(h.coupling_count(), 2 * 8 * 8);
    }

    #[test]
    fn blocks_reproduce_register_operators() {
        // H on a two-site chain couples the sites through A only
        let mu = 3;
        let a = target(mu, 5);
        let g = build_linear_chain(mu, 3).unwrap();
        let h = assemble(&g, &a, 2.0).unwrap();
        let basis = *h.basis();
        let m = h.to_dense();
        let reg = 1 << (mu + 1);
        for c in 0..reg {
            let e = RegisterVector::basis(mu, c).unwrap();
            let ae = apply_oracle(&e, &a).unwrap();
            let be = apply_estimator(&e).unwrap();
            for r in 0..reg {
                let a_rc = m[(basis.index(r, 2, 0).unwrap(), basis.index(c, 1, 0).unwrap())];
                let b_rc = m[(basis.index(r, 3, 0).unwrap(), basis.index(c, 2, 0).unwrap())];
                assert!((a_rc + ae.amplitudes()[r].re).abs() < 1e-15);
                assert!((b_rc + be.amplitudes()[r].re).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn matrix_free_product_matches_dense() {
        let g = build_cnot_network(2, Axis::X, SwitchVariant::RaiseLower).unwrap();
        let h = assemble(&g, &target(2, 0), 0.9).unwrap();
        let m = h.to_dense();
        let d = h.dim();
        let v: Vec<Complex64> = (0..d)
            .map(|i| Complex64::new((0.37 * i as f64).sin(), (1.1 * i as f64).cos()))
            .collect();
        let hv = h.apply(&v).unwrap();
        for r in 0..d {
            let want: Complex64 = (0..d).map(|c| v[c] * m[(r, c)]).sum();
            assert!((hv[r] - want).norm() < 1e-12);
        }
        let fv = h.forward(&v).unwrap();
        let bv = h.backward(&v).unwrap();
        for r in 0..d {
            assert!((hv[r] + (fv[r] + bv[r]) * 0.45).norm() < 1e-12);
        }
    }

    #[test]
    fn x_basis_switch_matrices() {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let plus = [s, s];
        let minus = [s, -s];
        let apply = |m: Pair, v: [f64; 2]| [m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]];
        let close = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).abs() + (a[1] - b[1]).abs() < 1e-15;
        assert!(close(apply(LOWER_X, plus), minus));
        assert!(close(apply(LOWER_X, minus), [0.0, 0.0]));
        assert!(close(apply(RAISE_X, minus), plus));
        assert!(close(apply(UP_X, plus), plus));
        assert!(close(apply(DOWN_X, plus), [0.0, 0.0]));
    }

    #[test]
    fn twisted_switch_follows_the_target() {
        // a_1 = -1: "up" is σ_3(1) = -1
        let a = TargetWord::new(vec![-1, 1]).unwrap();
        let k = kernel_of(&EdgeLabel::SwitchLower { qubit: 1, axis: Axis::TwistedZ }, 2, &a).unwrap();
        let mut v = vec![Complex64::new(0.0, 0.0); 8];
        v[1] = Complex64::new(1.0, 0.0);
        k.apply(&mut v, 2);
        assert_eq!(v[0], Complex64::new(1.0, 0.0));
        assert!(kernel_of(&EdgeLabel::ProjectorPlus { qubit: 3, axis: Axis::TwistedZ }, 2, &a).is_err());
    }

    #[test]
    fn rejects_mismatched_target() {
        let g = build_linear_chain(2, 3).unwrap();
        assert!(assemble(&g, &target(3, 0), 1.0).is_err());
        assert!(assemble(&g, &target(2, 0), 0.0).is_err());
    }
}
