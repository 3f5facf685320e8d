//! Closed-form bookkeeping of the subroutine machine's logical path: where
//! the oracle acts and how many `BA` passes precede each step.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Logical path length `p(K) = 2^{K+3} - 5` of the subroutine machine.
pub fn path_length(k: usize) -> usize {
    (1usize << (k + 3)) - 5
}

/// Exponent of 2 in the factorisation of `x > 0`.
pub fn two_adic_valuation(x: u64) -> u32 {
    debug_assert!(x > 0);
    x.trailing_zeros()
}

/// Path indices `j_1 < … < j_{2^K}` at which the oracle acts.
pub fn oracle_call_indices(k: usize) -> Vec<usize> {
    let calls = 1usize << k;
    let mut out = Vec::with_capacity(calls);
    let mut carry = 0usize;
    for i in 1..=calls {
        if i > 1 {
            carry += two_adic_valuation((i - 1) as u64) as usize;
        }
        out.push(2 * k + 2 + 5 * (i - 1) + 3 * carry);
    }
    out
}

fn check_step(k: usize, j: usize) -> Result<usize> {
    let p = path_length(k);
    if !(1..=p).contains(&j) {
        return Err(Error::OutOfRange {
            what: "path index j",
            value: j as i64,
            lo: 1,
            hi: p as i64,
        });
    }
    Ok(p)
}

/// Number `n_j` of completed `BA` passes in the register at path step `j`.
pub fn steps_exact(k: usize, j: usize) -> Result<u64> {
    check_step(k, j)?;
    Ok(oracle_call_indices(k).iter().take_while(|&&ji| ji < j).count() as u64)
}

/// Piecewise-linear approximation of `n_j`.
pub fn steps_approx(k: usize, j: usize) -> Result<f64> {
    let p = check_step(k, j)?;
    let calls = (1u64 << k) as f64;
    Ok(if j <= 2 * k + 2 {
        0.0
    } else if j >= p - k {
        calls
    } else {
        let slope = (calls - 1.0) / (p - 3 * k - 3) as f64;
        1.0 + slope * (j - (2 * k + 3)) as f64
    })
}

/// `n_j` for every `j` in `1..=p(K)`, in one pass.
pub(crate) fn steps_table(k: usize) -> Vec<u64> {
    let p = path_length(k);
    let calls = oracle_call_indices(k);
    let mut out = Vec::with_capacity(p);
    let mut n = 0u64;
    let mut next = calls.iter().peekable();
    for j in 1..=p {
        while next.peek().is_some_and(|&&ji| ji < j) {
            next.next();
            n += 1;
        }
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_call_follows_the_counter_preamble() {
        for k in 0..=8 {
            assert_eq!(oracle_call_indices(k)[0], 2 * k + 2);
        }
    }

    #[test]
    fn small_schedules() {
        assert_eq!(oracle_call_indices(0), vec![2]);
        assert_eq!(oracle_call_indices(1), vec![4, 9]);
        assert_eq!(oracle_call_indices(2), vec![6, 11, 19, 24]);
        for k in 0..=10 {
            let last = *oracle_call_indices(k).last().unwrap();
            assert_eq!(last + 1, path_length(k) - k);
        }
    }

    #[test]
    fn floor_sum_form_agrees() {
        for k in 1..=8usize {
            for (idx, &ji) in oracle_call_indices(k).iter().enumerate() {
                let i = idx + 1;
                let floors: usize = (1..k).map(|h| (i - 1) >> (k - h)).sum();
                assert_eq!(ji, 2 * k + 2 + 5 * (i - 1) + 3 * floors, "k={k} i={i}");
            }
        }
    }

    #[test]
    fn boundary_values_of_the_step_count() {
        for k in 0..=6 {
            let p = path_length(k);
            for j in 1..2 * k + 2 {
                assert_eq!(steps_exact(k, j).unwrap(), 0);
            }
            assert_eq!(steps_exact(k, 2 * k + 3).unwrap(), 1);
            for j in p - k..=p {
                assert_eq!(steps_exact(k, j).unwrap(), 1 << k);
            }
            let table = steps_table(k);
            for j in 1..=p {
                assert_eq!(table[j - 1], steps_exact(k, j).unwrap());
            }
        }
        assert!(steps_exact(2, 0).is_err());
        assert!(steps_exact(2, 28).is_err());
        assert!(steps_approx(2, 28).is_err());
    }

    #[test]
    fn schedule_bounds_hold() {
        for k in 0..=6usize {
            for (idx, &ji) in oracle_call_indices(k).iter().enumerate().skip(1) {
                let i = idx + 1;
                let l = (usize::BITS - 1 - (i - 1).leading_zeros()) as i32;
                let m = (i - 1) as f64;
                let base = 5.0 * m + 3.0 * (1.0 - 2f64.powi(-l)) * m;
                let off = (ji - (2 * k + 2)) as f64;
                assert!(base - 3.0 * l as f64 <= off + 1e-12, "k={k} i={i}");
                assert!(off <= base + 1e-12, "k={k} i={i}");
            }
        }
    }

    #[test]
    fn approximation_stays_close() {
        for k in 0..=6 {
            for j in 1..=path_length(k) {
                let d = steps_exact(k, j).unwrap() as f64 - steps_approx(k, j).unwrap();
                assert!(d.abs() <= 2.0, "k={k} j={j} diff={d}");
            }
        }
    }
}
