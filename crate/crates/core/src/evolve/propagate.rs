//! `ψ(t) = exp(-iHt) ψ(0)`.
//!
//! Small sectors use a full eigendecomposition of the real symmetric `H`,
//! which is exact to rounding and amortises over many times. Larger sectors
//! use short-recurrence Lanczos steps with an a-posteriori error bound.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::hamiltonian::SparseHamiltonian;
use super::sector::{dot, norm, SectorState};
use crate::error::{Error, Result};
use crate::math;

/// Largest sector dimension propagated by dense diagonalisation.
pub const DENSE_LIMIT: usize = 4096;

const KRYLOV_DIM: usize = 30;
const MAX_SUBSTEPS: usize = 1 << 20;

/// Which propagator an [`Evolver`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dense,
    Krylov,
}

/// Eigenpairs of a dense `H`.
#[derive(Debug, Clone)]
struct Spectrum {
    values: Vec<f64>,
    vectors: DMatrix<f64>,
}

/// Propagator bound to one Hamiltonian.
#[derive(Debug, Clone)]
pub struct Evolver<'h> {
    h: &'h SparseHamiltonian,
    spectrum: Option<Spectrum>,
    tol: f64,
}

impl<'h> Evolver<'h> {
    /// Dense below [`DENSE_LIMIT`], Krylov above, tolerance `1e-10`.
    pub fn new(h: &'h SparseHamiltonian) -> Result<Self> {
        let method = if h.dim() <= DENSE_LIMIT {
            Method::Dense
        } else {
            Method::Krylov
        };
        Evolver::with_method(h, method, 1e-10)
    }

    /// `tol` bounds the 2-norm error of a Krylov evolution; the dense path
    /// ignores it.
    pub fn with_method(h: &'h SparseHamiltonian, method: Method, tol: f64) -> Result<Self> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        let spectrum = match method {
            Method::Dense => {
                let eig = SymmetricEigen::new(h.to_dense());
                Some(Spectrum {
                    values: eig.eigenvalues.iter().copied().collect(),
                    vectors: eig.eigenvectors,
                })
            }
            Method::Krylov => None,
        };
        Ok(Evolver { h, spectrum, tol })
    }

    pub fn method(&self) -> Method {
        if self.spectrum.is_some() {
            Method::Dense
        } else {
            Method::Krylov
        }
    }

    pub fn hamiltonian(&self) -> &SparseHamiltonian {
        self.h
    }

    fn check(&self, psi: &SectorState) -> Result<()> {
        if psi.basis() != self.h.basis() {
            return Err(Error::DimensionMismatch {
                expected: self.h.dim(),
                found: psi.amplitudes().len(),
            });
        }
        Ok(())
    }

    /// `exp(-iHt) ψ`.
    pub fn evolve(&self, psi: &SectorState, t: f64) -> Result<SectorState> {
        self.trajectory(psi)?.at(t)
    }

    /// Precomputes what depends only on `ψ(0)`, for sampling many times.
    pub fn trajectory(&self, psi0: &SectorState) -> Result<Trajectory<'_, 'h>> {
        self.check(psi0)?;
        let coeffs = self.spectrum.as_ref().map(|s| {
            let d = s.values.len();
            let a = psi0.amplitudes();
            (0..d)
                .map(|k| {
                    let col = s.vectors.column(k);
                    col.iter().zip(a).map(|(&v, z)| z * v).sum()
                })
                .collect()
        });
        Ok(Trajectory {
            evolver: self,
            psi0: psi0.clone(),
            coeffs,
        })
    }

    fn krylov(&self, v0: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
        let mut v = v0.to_vec();
        let total = t.abs();
        if total == 0.0 {
            return Ok(v);
        }
        let sign = t.signum();
        let mut done = 0.0;
        let mut dt = total.min(10.0 / (self.h.lambda() + 1e-300));
        let mut substeps = 0;
        while done < total {
            dt = dt.min(total - done);
            let (w, err) = lanczos_step(self.h, &v, sign * dt)?;
            substeps += 1;
            if substeps > MAX_SUBSTEPS {
                return Err(Error::NoConvergence {
                    requested: self.tol,
                    achieved: err,
                });
            }
            if err > self.tol * dt / total {
                dt *= 0.5;
                if dt < 1e-12 * total {
                    return Err(Error::NoConvergence {
                        requested: self.tol,
                        achieved: err,
                    });
                }
                continue;
            }
            v = w;
            done += dt;
            if err < 0.1 * self.tol * dt / total {
                dt *= 1.5;
            }
        }
        Ok(v)
    }
}

/// One Lanczos step `exp(-iH dt) v` and its error estimate.
fn lanczos_step(h: &SparseHamiltonian, v: &[Complex64], dt: f64) -> Result<(Vec<Complex64>, f64)> {
    let beta0 = norm(v);
    if beta0 == 0.0 {
        return Ok((v.to_vec(), 0.0));
    }
    let mut basis: Vec<Vec<Complex64>> = vec![v.iter().map(|z| z / beta0).collect()];
    let mut alpha = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut tail = 0.0;
    for j in 0..KRYLOV_DIM {
        let mut w = h.apply(&basis[j])?;
        let a = dot(&basis[j], &w).re;
        alpha.push(a);
        // full reorthogonalisation; the basis is short
        for b in &basis {
            let c = dot(b, &w);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= bi * c;
            }
        }
        let nb = norm(&w);
        if nb < 1e-13 * (1.0 + a.abs()) {
            tail = 0.0;
            break;
        }
        if j + 1 == KRYLOV_DIM {
            tail = nb;
            break;
        }
        beta.push(nb);
        basis.push(w.iter().map(|z| z / nb).collect());
    }
    let m = alpha.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    // y = Q exp(-iΛ dt) Q^T e_1
    let mut y = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..m {
        let w = math::cis(-eig.eigenvalues[k] * dt) * eig.eigenvectors[(0, k)];
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += w * eig.eigenvectors[(i, k)];
        }
    }
    let err = beta0 * tail * y[m - 1].norm();
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (yk, b) in y.iter().zip(&basis) {
        let c = yk * beta0;
        for (o, bi) in out.iter_mut().zip(b) {
            *o += bi * c;
        }
    }
    Ok((out, err))
}

/// Evolution of one initial state, sampled at arbitrary times.
#[derive(Debug, Clone)]
pub struct Trajectory<'e, 'h> {
    evolver: &'e Evolver<'h>,
    psi0: SectorState,
    // ⟨v_k|ψ(0)⟩ for the dense path
    coeffs: Option<Vec<Complex64>>,
}

impl Trajectory<'_, '_> {
    pub fn at(&self, t: f64) -> Result<SectorState> {
        if !t.is_finite() {
            return Err(Error::InvalidParameter("time must be finite".into()));
        }
        let basis = *self.psi0.basis();
        match (&self.evolver.spectrum, &self.coeffs) {
            (Some(s), Some(c)) => {
                let mut out = vec![Complex64::new(0.0, 0.0); s.values.len()];
                for (k, (ck, ek)) in c.iter().zip(&s.values).enumerate() {
                    let w = ck * math::cis(-ek * t);
                    if w.norm_sqr() == 0.0 {
                        continue;
                    }
                    for (o, &v) in out.iter_mut().zip(s.vectors.column(k).iter()) {
                        *o += w * v;
                    }
                }
                SectorState::new(basis, out)
            }
            _ => SectorState::new(basis, self.evolver.krylov(self.psi0.amplitudes(), t)?),
        }
    }
}

/// `exp(-iHt) ψ(0)` in one call; builds a fresh [`Evolver`].
pub fn evolve_state(h: &SparseHamiltonian, psi0: &SectorState, t: f64) -> Result<SectorState> {
    Evolver::new(h)?.evolve(psi0, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::hamiltonian::assemble;
    use crate::pathspec::{build_linear_chain, build_subroutine_machine};
    use crate::spinops::TargetWord;

    fn chain(mu: usize, s: usize) -> SparseHamiltonian {
        let g = build_linear_chain(mu, s).unwrap();
        assemble(&g, &TargetWord::from_index(mu, 1).unwrap(), crate::DEFAULT_LAMBDA).unwrap()
    }

    #[test]
    fn zero_time_is_the_identity() {
        let h = chain(2, 5);
        let psi = SectorState::grover_initial(*h.basis()).unwrap();
        for m in [Method::Dense, Method::Krylov] {
            let e = Evolver::with_method(&h, m, 1e-10).unwrap();
            let out = e.evolve(&psi, 0.0).unwrap();
            let diff: f64 = out
                .amplitudes()
                .iter()
                .zip(psi.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12, "{m:?}");
        }
    }

    #[test]
    fn dense_and_krylov_agree() {
        let g = build_subroutine_machine(2, 1).unwrap();
        let h = assemble(&g, &TargetWord::from_index(2, 3).unwrap(), 1.1).unwrap();
        let psi = SectorState::grover_initial(*h.basis()).unwrap();
        let dense = Evolver::with_method(&h, Method::Dense, 1e-10).unwrap();
        let kry = Evolver::with_method(&h, Method::Krylov, 1e-11).unwrap();
        for t in [0.5, 3.0, 17.0] {
            let a = dense.evolve(&psi, t).unwrap();
            let b = kry.evolve(&psi, t).unwrap();
            let diff: f64 = a
                .amplitudes()
                .iter()
                .zip(b.amplitudes())
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(diff < 1e-9, "t={t} diff={diff:e}");
        }
    }

    #[test]
    fn norm_and_energy_are_conserved() {
        let h = chain(2, 9);
        let psi = SectorState::grover_initial(*h.basis()).unwrap();
        let e = Evolver::new(&h).unwrap();
        assert_eq!(e.method(), Method::Dense);
        let traj = e.trajectory(&psi).unwrap();
        let e0 = h.energy(psi.amplitudes()).unwrap();
        for t in [1.0, 5.0, 10.0, 100.0] {
            let s = traj.at(t).unwrap();
            assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
            assert!((h.energy(s.amplitudes()).unwrap() - e0).abs() < 1e-10);
        }
    }

    #[test]
    fn backwards_in_time_undoes_forwards() {
        let h = chain(1, 7);
        let psi = SectorState::grover_initial(*h.basis()).unwrap();
        let e = Evolver::with_method(&h, Method::Krylov, 1e-11).unwrap();
        let fwd = e.evolve(&psi, 6.0).unwrap();
        let back = e.evolve(&fwd, -6.0).unwrap();
        let diff: f64 = back
            .amplitudes()
            .iter()
            .zip(psi.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-9);
    }
}
