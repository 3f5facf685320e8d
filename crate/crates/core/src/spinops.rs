//! Register operators: the oracle `A`, the estimator `B` and the closed-form
//! Grover iterates `(BA)^n |1⟩_1`.
//!
//! States live in the z-basis of the `ν = μ + 1` register qubits. Both
//! operators are applied matrix-free in `O(2^ν)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// Largest supported register width.
pub const MAX_MU: usize = 12;

pub(crate) fn check_mu(mu: usize) -> Result<()> {
    if (1..=MAX_MU).contains(&mu) {
        Ok(())
    } else {
        Err(Error::InvalidWidth(mu))
    }
}

/// The hidden word `a ∈ {-1,+1}^μ` baked into the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TargetWord {
    bits: Vec<i8>,
}

impl TargetWord {
    pub fn new(bits: Vec<i8>) -> Result<Self> {
        check_mu(bits.len())?;
        if let Some((position, &value)) = bits.iter().enumerate().find(|(_, b)| b.abs() != 1) {
            return Err(Error::InvalidWord {
                position: position + 1,
                value: value as i64,
            });
        }
        Ok(TargetWord { bits })
    }

    /// Word whose z-basis index over the input qubits is `index`.
    pub fn from_index(mu: usize, index: usize) -> Result<Self> {
        check_mu(mu)?;
        if index >= 1 << mu {
            return Err(Error::OutOfRange {
                what: "word index",
                value: index as i64,
                lo: 0,
                hi: (1i64 << mu) - 1,
            });
        }
        let bits = (0..mu)
            .map(|i| if index >> i & 1 == 0 { 1 } else { -1 })
            .collect();
        Ok(TargetWord { bits })
    }

    /// The all-`+1` word.
    pub fn ones(mu: usize) -> Result<Self> {
        Self::from_index(mu, 0)
    }

    pub fn mu(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[i8] {
        &self.bits
    }

    /// Entry `a_q` for the 1-based input qubit `q`.
    pub fn bit(&self, q: usize) -> i8 {
        self.bits[q - 1]
    }

    /// Index of the word over the `μ` input bits.
    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == -1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

impl core::fmt::Display for TargetWord {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl core::str::FromStr for TargetWord {
    type Err = Error;

    /// Parses a word written as a string of `+`/`-` (or `0`/`1`, with `0`
    /// standing for `+1`), first qubit first.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '+' | '0' => Ok(1),
                '-' | '1' => Ok(-1),
                _ => Err(Error::InvalidWord {
                    position: i + 1,
                    value: c as i64,
                }),
            })
            .collect::<Result<Vec<i8>>>()?;
        TargetWord::new(bits)
    }
}

/// Complex amplitudes over the `2^ν` z-basis states of the register.
#[derive(Debug, Clone, PartialEq)]
pub struct RegisterVector {
    mu: usize,
    amplitudes: Vec<Complex64>,
}

impl RegisterVector {
    pub fn new(mu: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_mu(mu)?;
        let expected = 1 << (mu + 1);
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: amplitudes.len(),
            });
        }
        Ok(RegisterVector { mu, amplitudes })
    }

    /// The z-basis state with the given register index.
    pub fn basis(mu: usize, index: usize) -> Result<Self> {
        check_mu(mu)?;
        let dim = 1 << (mu + 1);
        if index >= dim {
            return Err(Error::OutOfRange {
                what: "register index",
                value: index as i64,
                lo: 0,
                hi: dim as i64 - 1,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(RegisterVector { mu, amplitudes })
    }

    /// `|σ_1(1..μ) = +1⟩ ⊗ |σ_1(ν) = -1⟩`, the register part of the initial
    /// condition of every Grover machine.
    pub fn initial(mu: usize) -> Result<Self> {
        check_mu(mu)?;
        let half = 1usize << mu;
        let amp = math::exp2(-(mu as f64 + 1.0) / 2.0);
        let mut amplitudes = vec![Complex64::new(amp, 0.0); 2 * half];
        for z in &mut amplitudes[half..] {
            *z = -*z;
        }
        Ok(RegisterVector { mu, amplitudes })
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Amplitudes of the input word `z` once the output qubit, assumed to be
    /// in `|σ_1(ν) = -1⟩`, is projected out.
    pub fn input_amplitudes(&self) -> Vec<Complex64> {
        let half = 1 << self.mu;
        let s = core::f64::consts::FRAC_1_SQRT_2;
        (0..half)
            .map(|z| (self.amplitudes[z] - self.amplitudes[z + half]) * s)
            .collect()
    }

    fn check_width(&self, mu: usize) -> Result<()> {
        if self.mu != mu {
            return Err(Error::DimensionMismatch {
                expected: 1 << (mu + 1),
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// Oracle `A`: flips the output qubit (z-basis) iff the input word is `a`.
pub fn apply_oracle(state: &RegisterVector, a: &TargetWord) -> Result<RegisterVector> {
    state.check_width(a.mu())?;
    let mut out = state.clone();
    oracle_in_place(&mut out.amplitudes, state.mu, a.index());
    Ok(out)
}

pub(crate) fn oracle_in_place(amps: &mut [Complex64], mu: usize, word: usize) {
    amps.swap(word, word | 1 << mu);
}

/// Estimator `B`: flips the output qubit iff the input qubits are all `+1`
/// in the x-basis.
///
/// Written as `I + (X_ν - I) ⊗ P_+`, where `P_+` projects the inputs on the
/// all-`+x` state, so only the two overlaps `⟨+…+|ψ_b⟩` are needed.
pub fn apply_estimator(state: &RegisterVector) -> Result<RegisterVector> {
    let mut out = state.clone();
    estimator_in_place(&mut out.amplitudes, state.mu);
    Ok(out)
}

pub(crate) fn estimator_in_place(amps: &mut [Complex64], mu: usize) {
    let half = 1usize << mu;
    let (low, high) = amps.split_at_mut(half);
    let s0: Complex64 = low.iter().sum();
    let s1: Complex64 = high.iter().sum();
    // 2^{-μ} (s_{1-b} - s_b) added to every word of output branch b
    let scale = math::exp2(-(mu as f64));
    let d0 = (s1 - s0) * scale;
    for z in low.iter_mut() {
        *z += d0;
    }
    for z in high.iter_mut() {
        *z -= d0;
    }
}

/// Output NOT, `σ_1(ν)`.
pub fn apply_output_flip(state: &RegisterVector) -> RegisterVector {
    let half = 1 << state.mu;
    let mut out = state.clone();
    let (low, high) = out.amplitudes.split_at_mut(half);
    low.swap_with_slice(high);
    out
}

/// Closed-form Grover coefficients after `n` iterations on a `μ`-bit register.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverCoeffs {
    /// `arcsin(2^{-μ/2})`
    pub chi: f64,
    /// Amplitude on the target word.
    pub alpha_n: f64,
    /// Amplitude on each of the other `2^μ - 1` words.
    pub beta_n: f64,
    pub n: u64,
    pub mu: usize,
}

pub fn grover_chi(mu: usize) -> f64 {
    math::asin(math::exp2(-(mu as f64) / 2.0))
}

pub fn grover_coefficients(n: u64, mu: usize) -> Result<GroverCoeffs> {
    check_mu(mu)?;
    let chi = grover_chi(mu);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let phase = (2 * n + 1) as f64 * chi;
    let others = ((1u64 << mu) - 1) as f64;
    // μ = 1: a single other word and cos((2n+1)π/4)/1, no division by zero
    Ok(GroverCoeffs {
        chi,
        alpha_n: sign * math::sin(phase),
        beta_n: sign * math::cos(phase) / math::sqrt(others),
        n,
        mu,
    })
}

/// `(BA)^n |1⟩_1`, or `A (BA)^n |1⟩_1` when `extra_oracle` is set, with the
/// output qubit in `|σ_1(ν) = -1⟩`.
pub fn grover_state(n: u64, a: &TargetWord, extra_oracle: bool) -> Result<RegisterVector> {
    let mu = a.mu();
    let c = grover_coefficients(n, mu)?;
    let half = 1usize << mu;
    let target = a.index();
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let alpha = if extra_oracle { -c.alpha_n } else { c.alpha_n };
    let mut amplitudes = Vec::with_capacity(2 * half);
    for output_sign in [1.0, -1.0] {
        amplitudes.extend((0..half).map(|z| {
            let amp = if z == target { alpha } else { c.beta_n };
            Complex64::new(output_sign * s * amp, 0.0)
        }));
    }
    RegisterVector::new(mu, amplitudes)
}
