//! Expectation values on sector states.

use super::sector::SectorState;
use crate::error::{Error, Result};
use crate::spinops::TargetWord;

/// `⟨Q⟩ = Σ_q q · P(cursor on q)`.
pub fn expectation_cursor(psi: &SectorState) -> f64 {
    let b = psi.basis();
    let a = psi.amplitudes();
    let total: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let weighted: f64 = (1..=b.sites())
        .map(|q| q as f64 * a[b.site_range(q)].iter().map(|z| z.norm_sqr()).sum::<f64>())
        .sum();
    weighted / total
}

/// Occupation of every cursor site, `q = 1..=s`.
pub fn cursor_distribution(psi: &SectorState) -> alloc::vec::Vec<f64> {
    let b = psi.basis();
    let a = psi.amplitudes();
    (1..=b.sites())
        .map(|q| a[b.site_range(q)].iter().map(|z| z.norm_sqr()).sum())
        .collect()
}

/// `⟨ρ_3(k)⟩`.
pub fn expectation_counter(psi: &SectorState, k: usize) -> Result<f64> {
    let b = psi.basis();
    if !(1..=b.counter_bits()).contains(&k) {
        return Err(Error::OutOfRange {
            what: "counter spin k",
            value: k as i64,
            lo: 1,
            hi: b.counter_bits() as i64,
        });
    }
    let reg = b.register_dim();
    let mut acc = 0.0;
    for (i, chunk) in psi.amplitudes().chunks_exact(reg).enumerate() {
        let c = i % b.counter_dim();
        let w: f64 = chunk.iter().map(|z| z.norm_sqr()).sum();
        // bit 0 ↔ ρ_3 = +1
        acc += if c >> (k - 1) & 1 == 0 { w } else { -w };
    }
    Ok(acc)
}

fn check_target(psi: &SectorState, a: &TargetWord) -> Result<()> {
    if a.mu() != psi.basis().mu() {
        return Err(Error::DimensionMismatch {
            expected: psi.basis().mu(),
            found: a.mu(),
        });
    }
    Ok(())
}

/// `⟨ψ|P_a|ψ⟩` with `P_a` the projector on input word `a`, any output,
/// cursor or counter value.
pub fn prob_register_target(psi: &SectorState, a: &TargetWord) -> Result<f64> {
    check_target(psi, a)?;
    let b = psi.basis();
    let reg = b.register_dim();
    let (lo, hi) = (a.index(), a.index() + reg / 2);
    Ok(psi
        .amplitudes()
        .chunks_exact(reg)
        .map(|chunk| chunk[lo].norm_sqr() + chunk[hi].norm_sqr())
        .sum())
}

/// Weight of `|a⟩ ⊗ |σ_1(ν) = -1⟩ ⊗ |Q = s⟩ ⊗ |ρ_3 = -1⟩`: the computation
/// has finished and the register holds the target.
pub fn prob_completed_target(psi: &SectorState, a: &TargetWord) -> Result<f64> {
    check_target(psi, a)?;
    let b = psi.basis();
    let reg = psi.register_slice(b.sites(), b.counter_reset())?;
    let half = b.register_dim() / 2;
    let amp = (reg[a.index()] - reg[a.index() + half]) * core::f64::consts::FRAC_1_SQRT_2;
    Ok(amp.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::sector::SectorBasis;

    #[test]
    fn initial_values() {
        let b = SectorBasis::new(3, 2, 6).unwrap();
        let psi = SectorState::grover_initial(b).unwrap();
        assert!((expectation_cursor(&psi) - 1.0).abs() < 1e-15);
        for k in 1..=2 {
            assert!((expectation_counter(&psi, k).unwrap() + 1.0).abs() < 1e-14);
        }
        assert!(expectation_counter(&psi, 3).is_err());
        for idx in 0..8 {
            let a = TargetWord::from_index(3, idx).unwrap();
            assert!((prob_register_target(&psi, &a).unwrap() - 0.125).abs() < 1e-15);
            assert_eq!(prob_completed_target(&psi, &a).unwrap(), 0.0);
        }
    }

    #[test]
    fn completed_probability_on_the_last_site() {
        let b = SectorBasis::new(2, 1, 4).unwrap();
        let reg = crate::spinops::RegisterVector::initial(2).unwrap();
        let psi = SectorState::product(b, &reg, 4, b.counter_reset()).unwrap();
        let a = TargetWord::from_index(2, 2).unwrap();
        assert!((prob_completed_target(&psi, &a).unwrap() - 0.25).abs() < 1e-15);
        assert!((expectation_cursor(&psi) - 4.0).abs() < 1e-15);
        let cd = cursor_distribution(&psi);
        assert_eq!(cd.len(), 4);
        assert!((cd[3] - 1.0).abs() < 1e-15);
    }
}
