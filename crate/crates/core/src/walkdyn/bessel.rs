//! Bessel functions of the first kind, `J_n(x)` for integer `n ≥ 0` and
//! `x ≥ 0`.
//!
//! Small arguments (`x² ≤ 2(n + 1)`, where the series terms fall off at
//! least geometrically) use the power series. Everything else uses Miller's
//! backward recurrence started well above `max(n, x)` and normalised by
//! `J_0 + 2 Σ_k J_{2k} = 1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Largest accepted argument.
pub const MAX_ARGUMENT: f64 = 1.0e4;
/// Largest accepted order.
pub const MAX_ORDER: u32 = 100_000;

const RESCALE_ABOVE: f64 = 1.0e200;
const RESCALE_BY: f64 = 1.0e-200;

fn check(n: u32, x: f64) -> Result<()> {
    if !x.is_finite() || !(0.0..=MAX_ARGUMENT).contains(&x) || n > MAX_ORDER {
        return Err(Error::BesselDomain { order: n, x });
    }
    Ok(())
}

fn series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= half / k as f64;
        if lead == 0.0 {
            return 0.0;
        }
    }
    let q = -half * half;
    let mut term = lead;
    let mut sum = lead;
    let mut k = 0u32;
    loop {
        k += 1;
        term *= q / (k as f64 * (n + k) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            return sum;
        }
    }
}

fn miller_start(n: u32, x: f64) -> u32 {
    let top = (n as f64).max(math::ceil(x));
    let m = top + 50.0 + math::sqrt(160.0 * top);
    2 * (m as u32 / 2 + 1)
}

/// `J_n(x)`.
pub fn bessel_j(n: u32, x: f64) -> Result<f64> {
    check(n, x)?;
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    if x * x <= 2.0 * (n as f64 + 1.0) {
        return Ok(series(n, x));
    }
    let m = miller_start(n, x);
    let two_over_x = 2.0 / x;
    let (mut above, mut cur) = (0.0f64, 1.0f64);
    let mut even_sum = 0.0;
    let mut value = 0.0;
    for j in (1..=m).rev() {
        // cur = J_j, above = J_{j+1} (unnormalised) -> J_{j-1}
        let below = j as f64 * two_over_x * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            above *= RESCALE_BY;
            value *= RESCALE_BY;
            even_sum *= RESCALE_BY;
        }
        if (j - 1) % 2 == 0 {
            even_sum += cur;
        }
        if j - 1 == n {
            value = cur;
        }
    }
    let norm = 2.0 * even_sum - cur;
    Ok(value / norm)
}

/// `J_0(x), …, J_{n_max}(x)` from a single backward sweep.
pub fn bessel_j_orders(n_max: u32, x: f64) -> Result<Vec<f64>> {
    check(n_max, x)?;
    let len = n_max as usize + 1;
    if x == 0.0 {
        let mut out = vec![0.0; len];
        out[0] = 1.0;
        return Ok(out);
    }
    if x * x <= 2.0 {
        return Ok((0..=n_max).map(|n| series(n, x)).collect());
    }
    let m = miller_start(n_max, x);
    let two_over_x = 2.0 / x;
    let mut out = vec![0.0; len];
    let (mut above, mut cur) = (0.0f64, 1.0f64);
    let mut even_sum = 0.0;
    for j in (1..=m).rev() {
        let below = j as f64 * two_over_x * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            above *= RESCALE_BY;
            even_sum *= RESCALE_BY;
            for v in out.iter_mut() {
                *v *= RESCALE_BY;
            }
        }
        if (j - 1) % 2 == 0 {
            even_sum += cur;
        }
        if ((j - 1) as usize) < len {
            out[(j - 1) as usize] = cur;
        }
    }
    let norm = 2.0 * even_sum - cur;
    for v in out.iter_mut() {
        *v /= norm;
    }
    Ok(out)
}
