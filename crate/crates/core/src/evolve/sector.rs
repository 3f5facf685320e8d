//! The one-excitation cursor sector: register ⊗ cursor site ⊗ counter.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pathspec::{check_counter, CursorGraph};
use crate::spinops::{check_mu, RegisterVector};

/// Index map of the sector.
///
/// Flat index `r + 2^ν (c + 2^K (q - 1))` for register word `r`, counter
/// word `c` and cursor site `q`, so that each site owns one contiguous
/// block of `2^ν 2^K` amplitudes and, inside it, each counter word one
/// contiguous register vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SectorBasis {
    mu: usize,
    counter_bits: usize,
    sites: usize,
}

impl SectorBasis {
    pub fn new(mu: usize, counter_bits: usize, sites: usize) -> Result<Self> {
        check_mu(mu)?;
        check_counter(counter_bits)?;
        if sites == 0 {
            return Err(Error::InvalidParameter("a cursor needs at least one site".into()));
        }
        let basis = SectorBasis {
            mu,
            counter_bits,
            sites,
        };
        basis
            .register_dim()
            .checked_mul(basis.counter_dim())
            .and_then(|b| b.checked_mul(sites))
            .ok_or_else(|| Error::InvalidParameter("sector dimension overflows".into()))?;
        Ok(basis)
    }

    pub fn of_graph(graph: &CursorGraph) -> Result<Self> {
        SectorBasis::new(graph.mu(), graph.counter_bits(), graph.sites())
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn counter_bits(&self) -> usize {
        self.counter_bits
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    /// `2^ν`.
    pub fn register_dim(&self) -> usize {
        1 << (self.mu + 1)
    }

    /// `2^K`.
    pub fn counter_dim(&self) -> usize {
        1 << self.counter_bits
    }

    /// Amplitudes per cursor site, `2^ν 2^K`.
    pub fn block_dim(&self) -> usize {
        self.register_dim() * self.counter_dim()
    }

    /// `d = 2^ν · s · 2^K`.
    pub fn dim(&self) -> usize {
        self.block_dim() * self.sites
    }

    /// Flat index of `(register r, site q, counter c)`; `q` is 1-based.
    pub fn index(&self, register: usize, site: usize, counter: usize) -> Result<usize> {
        if register >= self.register_dim() || counter >= self.counter_dim() {
            return Err(Error::OutOfRange {
                what: "register or counter word",
                value: register.max(counter) as i64,
                lo: 0,
                hi: self.register_dim().max(self.counter_dim()) as i64 - 1,
            });
        }
        if !(1..=self.sites).contains(&site) {
            return Err(Error::OutOfRange {
                what: "cursor site",
                value: site as i64,
                lo: 1,
                hi: self.sites as i64,
            });
        }
        Ok(register + self.register_dim() * (counter + self.counter_dim() * (site - 1)))
    }

    /// Inverse of [`index`](Self::index): `(register, site, counter)`.
    pub fn decompose(&self, flat: usize) -> (usize, usize, usize) {
        let r = flat % self.register_dim();
        let rest = flat / self.register_dim();
        (r, rest / self.counter_dim() + 1, rest % self.counter_dim())
    }

    /// Counter word index of a list of `ρ_3` values, spin 1 first.
    pub fn counter_index(&self, values: &[i8]) -> Result<usize> {
        if values.len() != self.counter_bits || values.iter().any(|v| v.abs() != 1) {
            return Err(Error::InvalidParameter(alloc::format!(
                "counter word must hold {} values of +1/-1",
                self.counter_bits
            )));
        }
        Ok(values
            .iter()
            .enumerate()
            .map(|(i, &v)| usize::from(v < 0) << i)
            .sum())
    }

    /// Index of the all-`-1` counter word.
    pub fn counter_reset(&self) -> usize {
        self.counter_dim() - 1
    }

    /// Range of flat indices belonging to cursor site `q`.
    pub fn site_range(&self, site: usize) -> core::ops::Range<usize> {
        let b = self.block_dim();
        (site - 1) * b..site * b
    }
}

/// State in the one-excitation cursor sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorState {
    basis: SectorBasis,
    amplitudes: Vec<Complex64>,
}

impl SectorState {
    pub fn new(basis: SectorBasis, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(SectorState { basis, amplitudes })
    }

    pub fn zero(basis: SectorBasis) -> Self {
        SectorState {
            basis,
            amplitudes: vec![Complex64::new(0.0, 0.0); basis.dim()],
        }
    }

    /// `register ⊗ |Q = site⟩ ⊗ |counter⟩`.
    pub fn product(
        basis: SectorBasis,
        register: &RegisterVector,
        site: usize,
        counter: usize,
    ) -> Result<Self> {
        if register.mu() != basis.mu() {
            return Err(Error::DimensionMismatch {
                expected: basis.register_dim(),
                found: register.dim(),
            });
        }
        let start = basis.index(0, site, counter)?;
        let mut state = SectorState::zero(basis);
        state.amplitudes[start..start + basis.register_dim()]
            .copy_from_slice(register.amplitudes());
        Ok(state)
    }

    /// `|1⟩_1 ⊗ |σ_1(ν) = -1⟩ ⊗ |Q = 1⟩ ⊗ |ρ_3 = -1⟩`.
    pub fn grover_initial(basis: SectorBasis) -> Result<Self> {
        let reg = RegisterVector::initial(basis.mu())?;
        SectorState::product(basis, &reg, 1, basis.counter_reset())
    }

    /// A single basis vector.
    pub fn basis_state(basis: SectorBasis, register: usize, site: usize, counter: usize) -> Result<Self> {
        let i = basis.index(register, site, counter)?;
        let mut state = SectorState::zero(basis);
        state.amplitudes[i] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    pub fn basis(&self) -> &SectorBasis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SectorState) -> Result<Complex64> {
        if self.basis != other.basis {
            return Err(Error::DimensionMismatch {
                expected: self.basis.dim(),
                found: other.basis.dim(),
            });
        }
        Ok(dot(&self.amplitudes, &other.amplitudes))
    }

    /// Register amplitudes with the cursor on `site` and the counter on
    /// `counter`.
    pub fn register_slice(&self, site: usize, counter: usize) -> Result<&[Complex64]> {
        let start = self.basis.index(0, site, counter)?;
        Ok(&self.amplitudes[start..start + self.basis.register_dim()])
    }
}

/// `Σ conj(a_i) b_i`.
pub(crate) fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn norm(a: &[Complex64]) -> f64 {
    crate::math::sqrt(a.iter().map(|z| z.norm_sqr()).sum())
}
