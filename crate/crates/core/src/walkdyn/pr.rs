//! Probability `Pr(t)` of reading the target word off the register, exact on
//! a path and in closed Bessel form.

use alloc::vec::Vec;
use core::fmt;

use super::bessel::bessel_j;
use super::chain::{chain_amplitude, ChainPropagator};
use super::packet::x_odd;
use crate::error::{Error, Result};
use crate::math;
use crate::pathspec::{check_counter, path_length};
use crate::spinops::{check_mu, grover_chi};

/// Default spacing of time grids.
pub const DEFAULT_STEP: f64 = 0.25;

/// Uniform grid `t_min, t_min + step, …` up to `t_max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
}

impl TimeGrid {
    pub fn new(t_min: f64, t_max: f64, step: f64) -> Result<Self> {
        let g = TimeGrid { t_min, t_max, step };
        g.validate()?;
        Ok(g)
    }

    /// `[0, t_max]` with the default step.
    pub fn up_to(t_max: f64) -> Result<Self> {
        TimeGrid::new(0.0, t_max, DEFAULT_STEP)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step.is_finite() && self.step > 0.0) {
            return Err(Error::InvalidParameter("time step must be positive".into()));
        }
        if !(self.t_min.is_finite() && self.t_max.is_finite() && self.t_max >= self.t_min) {
            return Err(Error::InvalidParameter("time range must satisfy t_min <= t_max".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        // the small slack keeps t_max itself when the span is a whole number of steps
        math::floor((self.t_max - self.t_min) / self.step + 1e-9) as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Point `i`, computed directly rather than by accumulation.
    pub fn point(&self, i: usize) -> f64 {
        self.t_min + i as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrKind {
    ExactChain,
    ClosedChain,
    ExactSubroutine,
    ClosedSubroutine,
}

impl fmt::Display for PrKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrKind::ExactChain => "exact_chain",
            PrKind::ClosedChain => "closed_chain",
            PrKind::ExactSubroutine => "exact_subroutine",
            PrKind::ClosedSubroutine => "closed_subroutine",
        })
    }
}

/// Sampled `Pr(t)` curve.
#[derive(Debug, Clone, PartialEq)]
pub struct PrSeries {
    pub kind: PrKind,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl PrSeries {
    /// Evaluates `f` at every grid point, in order.
    pub fn tabulate<F>(kind: PrKind, grid: &TimeGrid, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        grid.validate()?;
        let times = grid.points();
        let values = times.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        Ok(PrSeries {
            kind,
            times,
            values,
        })
    }

    /// Largest `|self - other|` over points with `keep(t)`.
    pub fn sup_deviation(&self, other: &PrSeries, keep: impl Fn(f64) -> bool) -> Result<f64> {
        if self.times != other.times {
            return Err(Error::DimensionMismatch {
                expected: self.times.len(),
                found: other.times.len(),
            });
        }
        Ok(self
            .times
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .filter(|(&t, _)| keep(t))
            .map(|(_, (a, b))| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::InvalidParameter("time must be finite and >= 0".into()));
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParameter("coupling rate must be positive".into()));
    }
    Ok(())
}

fn chain_weights(mu: usize, s: usize) -> Vec<f64> {
    let chi = grover_chi(mu);
    (1..=s as u64)
        .map(|x| {
            let v = math::sin(chi * x_odd(x) as f64);
            v * v
        })
        .collect()
}

fn subroutine_weights(mu: usize, k: usize) -> Vec<f64> {
    let chi = grover_chi(mu);
    crate::pathspec::schedule::steps_table(k)
        .into_iter()
        .map(|n| {
            let v = math::sin((2 * n + 1) as f64 * chi);
            v * v
        })
        .collect()
}

/// `Σ_x |c(t, x; s)|² sin²(χ x_odd)` on the linear chain.
pub fn pr_exact_chain(t: f64, mu: usize, s: usize, lambda: f64) -> Result<f64> {
    check_mu(mu)?;
    check_time(t)?;
    let w = chain_weights(mu, s);
    let mut acc = 0.0;
    for (x, wx) in w.iter().enumerate() {
        acc += wx * chain_amplitude(t, x + 1, s, lambda)?.norm_sqr();
    }
    Ok(acc)
}

/// `½ - ½(J₀(2χλt) - J₂(2χλt))`.
pub fn pr_closed_chain(t: f64, mu: usize, lambda: f64) -> Result<f64> {
    check_mu(mu)?;
    check_time(t)?;
    check_lambda(lambda)?;
    let z = 2.0 * grover_chi(mu) * lambda * t;
    Ok(0.5 - 0.5 * (bessel_j(0, z)? - bessel_j(2, z)?))
}

/// `Σ_j α²_{n_j} |c(t, j; p(K))|²` on the subroutine machine's path.
pub fn pr_exact_subroutine(t: f64, mu: usize, k: usize, lambda: f64) -> Result<f64> {
    check_mu(mu)?;
    check_counter(k)?;
    check_time(t)?;
    let p = path_length(k);
    let w = subroutine_weights(mu, k);
    let mut acc = 0.0;
    for (j, wj) in w.iter().enumerate() {
        acc += wj * chain_amplitude(t, j + 1, p, lambda)?.norm_sqr();
    }
    Ok(acc)
}

/// `½ - ½(J₀(χλt/2) - J₂(χλt/2))`.
pub fn pr_closed_subroutine(t: f64, mu: usize, lambda: f64) -> Result<f64> {
    check_time(t)?;
    pr_closed_chain(t / 4.0, mu, lambda)
}

/// Exact `Pr(t)` with the path spectrum precomputed, for repeated
/// evaluation.
#[derive(Debug, Clone)]
pub struct ExactPr {
    prop: ChainPropagator,
    weights: Vec<f64>,
}

impl ExactPr {
    pub fn chain(mu: usize, s: usize, lambda: f64) -> Result<Self> {
        check_mu(mu)?;
        Ok(ExactPr {
            prop: ChainPropagator::new(s, lambda)?,
            weights: chain_weights(mu, s),
        })
    }

    pub fn subroutine(mu: usize, k: usize, lambda: f64) -> Result<Self> {
        check_mu(mu)?;
        check_counter(k)?;
        Ok(ExactPr {
            prop: ChainPropagator::new(path_length(k), lambda)?,
            weights: subroutine_weights(mu, k),
        })
    }

    /// Path length the walker moves on.
    pub fn path_len(&self) -> usize {
        self.prop.len()
    }

    /// Register weight `α²_{n_j}` attached to path index `j` (1-based).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn at(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        Ok(self.prop.weighted_occupation(t, &self.weights))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_LAMBDA;

    #[test]
    fn grid_includes_both_ends() {
        let g = TimeGrid::new(0.0, 10.0, 0.25).unwrap();
        assert_eq!(g.len(), 41);
        assert_eq!(g.points()[40], 10.0);
        let g = TimeGrid::new(1.0, 1.3, 0.1).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(TimeGrid::up_to(0.0).unwrap().len(), 1);
        assert!(TimeGrid::new(0.0, 1.0, 0.0).is_err());
        assert!(TimeGrid::new(2.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn initial_values() {
        for mu in 1..=8 {
            let want = 2f64.powi(-(mu as i32));
            assert!((pr_exact_chain(0.0, mu, 17, 1.0).unwrap() - want).abs() < 1e-14);
            assert!((pr_exact_subroutine(0.0, mu, 2, 1.0).unwrap() - want).abs() < 1e-14);
            assert_eq!(pr_closed_chain(0.0, mu, 1.0).unwrap(), 0.0);
            assert_eq!(pr_closed_subroutine(0.0, mu, 1.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn closed_forms_differ_by_a_time_rescaling() {
        for t in [0.5, 3.0, 17.25, 90.0] {
            let a = pr_closed_subroutine(t, 5, DEFAULT_LAMBDA).unwrap();
            let b = pr_closed_chain(t / 4.0, 5, DEFAULT_LAMBDA).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn precomputed_matches_pointwise() {
        let c = ExactPr::chain(3, 33, 0.8).unwrap();
        let s = ExactPr::subroutine(3, 2, 0.8).unwrap();
        for t in [0.0, 1.5, 12.0, 40.25] {
            assert!((c.at(t).unwrap() - pr_exact_chain(t, 3, 33, 0.8).unwrap()).abs() < 1e-12);
            assert!((s.at(t).unwrap() - pr_exact_subroutine(t, 3, 2, 0.8).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn subroutine_weights_follow_the_staircase() {
        // K = 0 has the path A, B on three sites: weights α_0², α_0², α_1²
        let e = ExactPr::subroutine(2, 0, 1.0).unwrap();
        let chi = grover_chi(2);
        let a0 = chi.sin().powi(2);
        let a1 = (3.0 * chi).sin().powi(2);
        assert_eq!(e.path_len(), 3);
        let w = e.weights();
        assert!((w[0] - a0).abs() < 1e-15 && (w[1] - a0).abs() < 1e-15);
        assert!((w[2] - a1).abs() < 1e-15);
        // same as a three-site chain
        let c = ExactPr::chain(2, 3, 1.0).unwrap();
        for t in [0.3, 2.0, 7.7] {
            assert!((e.at(t).unwrap() - c.at(t).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn probabilities_stay_in_the_unit_interval() {
        let grid = TimeGrid::new(0.0, 200.0, 0.5).unwrap();
        let c = ExactPr::chain(6, 129, DEFAULT_LAMBDA).unwrap();
        let s = ExactPr::subroutine(4, 3, DEFAULT_LAMBDA).unwrap();
        for t in grid.points() {
            for v in [
                c.at(t).unwrap(),
                s.at(t).unwrap(),
                pr_closed_chain(t, 6, DEFAULT_LAMBDA).unwrap(),
                pr_closed_subroutine(t, 6, DEFAULT_LAMBDA).unwrap(),
            ] {
                assert!((-1e-9..=1.0 + 1e-9).contains(&v), "t={t} v={v}");
            }
        }
    }

    #[test]
    fn series_deviation() {
        let grid = TimeGrid::new(0.0, 5.0, 0.5).unwrap();
        let a = PrSeries::tabulate(PrKind::ClosedChain, &grid, |t| {
            pr_closed_chain(t, 2, 1.0)
        })
        .unwrap();
        let b = PrSeries::tabulate(PrKind::ClosedSubroutine, &grid, |t| {
            pr_closed_subroutine(4.0 * t, 2, 1.0)
        })
        .unwrap();
        assert!(a.sup_deviation(&b, |_| true).unwrap() < 1e-15);
        assert_eq!(a.kind.to_string(), "closed_chain");
        assert!(pr_closed_chain(-1.0, 2, 1.0).is_err());
    }
}
