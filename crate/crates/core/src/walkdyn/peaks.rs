//! Location and height of the first `Pr(t)` maximum, and the largest
//! completion probability on a path.

use super::bessel::bessel_j;
use super::chain::ChainPropagator;
use crate::error::{Error, Result};
use crate::math;
use crate::spinops::{check_mu, grover_chi};

const ROOT_TOL: f64 = 1e-12;

/// Which closed form the peak refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeakFlavor {
    Chain,
    Subroutine,
}

impl core::str::FromStr for PeakFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chain" => Ok(PeakFlavor::Chain),
            "subroutine" => Ok(PeakFlavor::Subroutine),
            _ => Err(Error::InvalidParameter(alloc::format!("unknown peak flavor `{s}`"))),
        }
    }
}

impl core::fmt::Display for PeakFlavor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            PeakFlavor::Chain => "chain",
            PeakFlavor::Subroutine => "subroutine",
        })
    }
}

/// Closed-form first maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstPeak {
    /// First zero of `3J₁ - J₃` on `(3, 4)`.
    pub z0: f64,
    pub t0: f64,
    /// `½ - ½(J₀(z₀) - J₂(z₀))`.
    pub pr0: f64,
}

/// A maximum found numerically on a sampled curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledPeak {
    pub t: f64,
    pub value: f64,
}

fn slope_numerator(z: f64) -> Result<f64> {
    Ok(3.0 * bessel_j(1, z)? - bessel_j(3, z)?)
}

/// Root of `3J₁(z) - J₃(z)` in `(3, 4)` by bisection.
pub fn peak_zero() -> Result<f64> {
    let (mut lo, mut hi) = (3.0, 4.0);
    let mut f_lo = slope_numerator(lo)?;
    if f_lo * slope_numerator(hi)? > 0.0 {
        return Err(Error::RootNotBracketed("3J1 - J3 on (3, 4)"));
    }
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        let f_mid = slope_numerator(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Position and height of the first closed-form maximum.
pub fn first_peak(mu: usize, lambda: f64, flavor: PeakFlavor) -> Result<FirstPeak> {
    check_mu(mu)?;
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParameter("coupling rate must be positive".into()));
    }
    let z0 = peak_zero()?;
    let chi = grover_chi(mu);
    let t0 = match flavor {
        PeakFlavor::Chain => z0 / (2.0 * lambda * chi),
        PeakFlavor::Subroutine => 2.0 * z0 / (lambda * chi),
    };
    let pr0 = 0.5 - 0.5 * (bessel_j(0, z0)? - bessel_j(2, z0)?);
    Ok(FirstPeak { z0, t0, pr0 })
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
fn golden_max<F>(f: &F, mut a: f64, mut b: f64) -> Result<SampledPeak>
where
    F: Fn(f64) -> Result<f64>,
{
    let r = 0.5 * (math::sqrt(5.0) - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..200 {
        if b - a <= 1e-10 * (1.0 + b.abs()) {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 {
        SampledPeak { t: x1, value: f1 }
    } else {
        SampledPeak { t: x2, value: f2 }
    })
}

/// Largest value of `f` on `[t_lo, t_hi]`: a scan with spacing `step`, then
/// golden-section refinement around the best sample.
pub fn locate_maximum<F>(f: F, t_lo: f64, t_hi: f64, step: f64) -> Result<SampledPeak>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(step > 0.0 && t_hi > t_lo) {
        return Err(Error::InvalidParameter("scan window must be non-empty".into()));
    }
    let n = math::ceil((t_hi - t_lo) / step) as usize;
    let at = |i: usize| (t_lo + i as f64 * step).min(t_hi);
    let mut best = SampledPeak {
        t: t_lo,
        value: f(t_lo)?,
    };
    let mut best_i = 0;
    for i in 1..=n {
        let v = f(at(i))?;
        if v > best.value {
            best = SampledPeak { t: at(i), value: v };
            best_i = i;
        }
    }
    let a = at(best_i.saturating_sub(1));
    let b = at((best_i + 1).min(n));
    let refined = golden_max(&f, a, b)?;
    Ok(if refined.value > best.value { refined } else { best })
}

/// `max_t |c(t, T; T)|²` over the first arrival of the walker at the far
/// end of a path of `T` sites.
///
/// The window is `0 < λt ≤ 2(T + 2)`, which holds the first front arrival
/// (near `λt ≈ T`) and stops well before the first return.
pub fn completion_peak(path_len: usize, lambda: f64) -> Result<f64> {
    if path_len < 2 {
        return Err(Error::OutOfRange {
            what: "path length T",
            value: path_len as i64,
            lo: 2,
            hi: i64::MAX,
        });
    }
    let prop = ChainPropagator::new(path_len, lambda)?;
    let last = |t: f64| prop.amplitude(t, path_len).map(|c| c.norm_sqr());
    let t_hi = 2.0 * (path_len + 2) as f64 / lambda;
    Ok(locate_maximum(last, 0.0, t_hi, 0.02 / lambda)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walkdyn::pr::pr_closed_chain;
    use crate::DEFAULT_LAMBDA;

    #[test]
    fn zero_of_the_slope() {
        let z0 = peak_zero().unwrap();
        // reference root from arbitrary-precision evaluation
        assert!((z0 - 3.5183243928759227).abs() < 1e-11, "{z0}");
        assert!(slope_numerator(z0).unwrap().abs() < 1e-11);
    }

    #[test]
    fn peak_height_and_position() {
        let p = first_peak(6, DEFAULT_LAMBDA, PeakFlavor::Chain).unwrap();
        assert!((p.pr0 - 0.9194365393).abs() < 1e-9, "{}", p.pr0);
        assert!((p.t0 - 11.9145).abs() < 1e-3, "{}", p.t0);
        let s = first_peak(6, DEFAULT_LAMBDA, PeakFlavor::Subroutine).unwrap();
        assert!((s.t0 - 4.0 * p.t0).abs() < 1e-9);
        assert_eq!(s.pr0, p.pr0);
        // the closed form really peaks there
        let at = |t| pr_closed_chain(t, 6, DEFAULT_LAMBDA);
        let m = locate_maximum(at, 1.0, 20.0, 0.25).unwrap();
        assert!((m.t - p.t0).abs() < 1e-4 && (m.value - p.pr0).abs() < 1e-10);
    }

    #[test]
    fn two_site_completion_is_complete() {
        // c(t, 2; 2) = i sin(λt/2)
        let v = completion_peak(2, DEFAULT_LAMBDA).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn completion_drops_with_length() {
        let vals: alloc::vec::Vec<f64> = [4, 6, 8, 10, 12]
            .iter()
            .map(|&t| completion_peak(t, DEFAULT_LAMBDA).unwrap())
            .collect();
        assert!(vals.iter().all(|&v| v < 1.0));
        assert!(vals.windows(2).all(|w| w[1] <= w[0]), "{vals:?}");
        // reference values from an independent dense computation
        assert!((vals[0] - 0.9728).abs() < 1e-3);
        assert!((vals[4] - 0.7601).abs() < 1e-3);
        assert!(completion_peak(1, 1.0).is_err());
    }

    #[test]
    fn maximum_of_a_parabola() {
        let m = locate_maximum(|t| Ok(1.0 - (t - 0.37) * (t - 0.37)), 0.0, 2.0, 0.1).unwrap();
        assert!((m.t - 0.37).abs() < 1e-7);
        assert!(locate_maximum(Ok, 1.0, 1.0, 0.1).is_err());
    }
}
