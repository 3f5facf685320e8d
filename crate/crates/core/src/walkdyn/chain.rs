//! Amplitudes `c(t, j; s)` of a walker started on site 1 of an open chain
//! of `s` sites with hopping `-λ/2`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

fn check_chain(s: usize, lambda: f64) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidParameter("chain length must be >= 1".into()));
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParameter("coupling rate must be positive".into()));
    }
    Ok(())
}

fn theta(n: usize, s: usize) -> f64 {
    n as f64 * core::f64::consts::PI / (s + 1) as f64
}

fn check_site(j: usize, s: usize) -> Result<()> {
    if !(1..=s).contains(&j) {
        return Err(Error::OutOfRange {
            what: "site j",
            value: j as i64,
            lo: 1,
            hi: s as i64,
        });
    }
    Ok(())
}

/// `c(t, j; s)` by the `O(s)` spectral sum.
pub fn chain_amplitude(t: f64, j: usize, s: usize, lambda: f64) -> Result<Complex64> {
    check_chain(s, lambda)?;
    check_site(j, s)?;
    let norm = 2.0 / (s + 1) as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 1..=s {
        let th = theta(n, s);
        let w = norm * math::sin(th) * math::sin(j as f64 * th);
        acc += math::cis(lambda * t * math::cos(th)) * w;
    }
    Ok(acc)
}

/// Precomputed spectral data of one chain, for evaluating every site at
/// many times.
///
/// `sin(jθ_n)` only depends on `jn mod 2(s+1)`, so a single table of
/// `2(s+1)` sines serves every `(j, n)` pair and memory stays linear in `s`.
#[derive(Debug, Clone)]
pub struct ChainPropagator {
    s: usize,
    lambda: f64,
    cosines: Vec<f64>,
    // sin(kπ/(s+1)), k = 0..2(s+1)
    sines: Vec<f64>,
    // (2/(s+1)) sin θ_n, n = 1..=s
    weights: Vec<f64>,
}

impl ChainPropagator {
    pub fn new(s: usize, lambda: f64) -> Result<Self> {
        check_chain(s, lambda)?;
        let period = 2 * (s + 1);
        let sines: Vec<f64> = (0..period).map(|k| math::sin(theta(k, s))).collect();
        let norm = 2.0 / (s + 1) as f64;
        let weights = (1..=s).map(|n| norm * sines[n]).collect();
        let cosines = (1..=s).map(|n| math::cos(theta(n, s))).collect();
        Ok(ChainPropagator {
            s,
            lambda,
            cosines,
            sines,
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.s
    }

    pub fn is_empty(&self) -> bool {
        self.s == 0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    // weight_n · e^{iλt cos θ_n}
    fn phases(&self, t: f64) -> Vec<Complex64> {
        self.cosines
            .iter()
            .zip(&self.weights)
            .map(|(&c, &w)| math::cis(self.lambda * t * c) * w)
            .collect()
    }

    fn site(&self, phases: &[Complex64], j: usize) -> Complex64 {
        let period = self.sines.len();
        let mut k = 0usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for p in phases {
            k += j;
            if k >= period {
                k %= period;
            }
            acc += p * self.sines[k];
        }
        acc
    }

    pub fn amplitude(&self, t: f64, j: usize) -> Result<Complex64> {
        check_site(j, self.s)?;
        Ok(self.site(&self.phases(t), j))
    }

    /// `c(t, j; s)` for `j = 1..=s`.
    pub fn amplitudes(&self, t: f64) -> Vec<Complex64> {
        let phases = self.phases(t);
        (1..=self.s).map(|j| self.site(&phases, j)).collect()
    }

    /// `|c(t, j; s)|²` for `j = 1..=s`.
    pub fn occupations(&self, t: f64) -> Vec<f64> {
        self.amplitudes(t).iter().map(|c| c.norm_sqr()).collect()
    }

    /// `Σ_j w_j |c(t, j; s)|²`.
    pub fn weighted_occupation(&self, t: f64, weights: &[f64]) -> f64 {
        debug_assert_eq!(weights.len(), self.s);
        let phases = self.phases(t);
        weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * self.site(&phases, i + 1).norm_sqr())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, SymmetricEigen};

    #[test]
    fn starts_on_the_first_site() {
        for s in [1, 2, 9, 40] {
            for j in 1..=s {
                let c = chain_amplitude(0.0, j, s, 1.3).unwrap();
                let want = if j == 1 { 1.0 } else { 0.0 };
                assert!((c - Complex64::new(want, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn probabilities_sum_to_one() {
        let p = ChainPropagator::new(9, crate::DEFAULT_LAMBDA).unwrap();
        let total: f64 = p.occupations(5.0).iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        for s in [1, 2, 3, 17, 64, 129] {
            let p = ChainPropagator::new(s, 0.7).unwrap();
            for t in [0.0, 0.3, 4.0, 51.5, 300.0] {
                let total: f64 = p.occupations(t).iter().sum();
                assert!((total - 1.0).abs() < 1e-11, "s={s} t={t}");
            }
        }
    }

    #[test]
    fn batched_matches_direct_sum() {
        let p = ChainPropagator::new(23, 1.1).unwrap();
        let all = p.amplitudes(6.25);
        for j in 1..=23 {
            let direct = chain_amplitude(6.25, j, 23, 1.1).unwrap();
            assert!((all[j - 1] - direct).norm() < 1e-13);
            assert!((p.amplitude(6.25, j).unwrap() - direct).norm() < 1e-13);
        }
    }

    #[test]
    fn agrees_with_dense_eigensolver() {
        // exp(-iHt) e_1 with H tridiagonal, off-diagonal -λ/2
        let (s, lambda, t) = (17usize, 3.0 * core::f64::consts::PI / 8.0, 7.3);
        let mut h = DMatrix::<f64>::zeros(s, s);
        for i in 0..s - 1 {
            h[(i, i + 1)] = -lambda / 2.0;
            h[(i + 1, i)] = -lambda / 2.0;
        }
        let eig = SymmetricEigen::new(h);
        for j in 0..s {
            let mut c = Complex64::new(0.0, 0.0);
            for k in 0..s {
                let v = eig.eigenvectors[(j, k)] * eig.eigenvectors[(0, k)];
                let e = eig.eigenvalues[k];
                c += Complex64::new((e * t).cos(), -(e * t).sin()) * v;
            }
            let got = chain_amplitude(t, j + 1, s, lambda).unwrap();
            assert!((got - c).norm() < 1e-10, "j={}", j + 1);
        }
    }

    #[test]
    fn time_reversal_keeps_moduli() {
        let p = ChainPropagator::new(31, 0.9).unwrap();
        let fwd = p.occupations(12.0);
        let back = p.occupations(-12.0);
        for (a, b) in fwd.iter().zip(&back) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(chain_amplitude(1.0, 0, 5, 1.0).is_err());
        assert!(chain_amplitude(1.0, 6, 5, 1.0).is_err());
        assert!(chain_amplitude(1.0, 1, 0, 1.0).is_err());
        assert!(ChainPropagator::new(5, -1.0).is_err());
    }
}
