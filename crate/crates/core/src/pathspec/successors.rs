//! Symbolic walk along logical successors.
//!
//! Starting from a basis label `(site 1, register, counter)`, the forward
//! Hamiltonian is applied label by label. On a valid computation graph each
//! application yields exactly one new basis label (up to a sign) until the
//! cursor reaches a site with no applicable forward term.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::graph::{Axis, CursorGraph, EdgeLabel};
use crate::error::{Error, Result};
use crate::spinops::TargetWord;

/// Hard cap on path length, against graphs that cycle through `A`/`B` links.
const MAX_PATH: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

/// Reduced word in `A` and `B` (both involutions) acting on `|1⟩_1`.
///
/// A reduced word alternates letters, so the first letter applied and the
/// length determine it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OpWord {
    first: Option<Letter>,
    len: u32,
}

impl OpWord {
    pub fn identity() -> Self {
        OpWord::default()
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn last(&self) -> Option<Letter> {
        let first = self.first?;
        Some(if self.len % 2 == 1 {
            first
        } else {
            other(first)
        })
    }

    /// Left-multiplies by `letter`.
    pub fn then(self, letter: Letter) -> Self {
        match self.last() {
            None => OpWord {
                first: Some(letter),
                len: 1,
            },
            Some(l) if l == letter => {
                let len = self.len - 1;
                OpWord {
                    first: if len == 0 { None } else { self.first },
                    len,
                }
            }
            Some(_) => OpWord {
                first: self.first,
                len: self.len + 1,
            },
        }
    }

    /// `(ε, n)` with the word equal to `A^ε (BA)^n`, if it has that form.
    pub fn grover_exponents(&self) -> Option<(u8, u64)> {
        match self.first {
            None => Some((0, 0)),
            Some(Letter::A) => Some(((self.len % 2) as u8, (self.len / 2) as u64)),
            Some(Letter::B) => None,
        }
    }
}

fn other(l: Letter) -> Letter {
    match l {
        Letter::A => Letter::B,
        Letter::B => Letter::A,
    }
}

impl fmt::Display for OpWord {
    /// Operator order, leftmost applied last; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(last) = self.last() else {
            return f.write_str("1");
        };
        let mut l = last;
        for _ in 0..self.len {
            f.write_str(match l {
                Letter::A => "A",
                Letter::B => "B",
            })?;
            l = other(l);
        }
        Ok(())
    }
}

/// Basis a register qubit is sharp in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QubitBasis {
    Z,
    X,
}

/// Register part of a basis label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegisterLabel {
    /// `W |1⟩_1 ⊗ |σ_1(ν) = -1⟩` for a word `W` in the oracle and estimator.
    Grover(OpWord),
    /// Product state; entry `q - 1` is `(basis, value)` of qubit `q ∈ 1..=ν`.
    Product(Vec<(QubitBasis, i8)>),
}

impl RegisterLabel {
    /// z-basis product state with the given `±1` values, qubit 1 first.
    pub fn z_word(values: &[i8]) -> Self {
        RegisterLabel::Product(values.iter().map(|&v| (QubitBasis::Z, v)).collect())
    }

    pub fn x_word(values: &[i8]) -> Self {
        RegisterLabel::Product(values.iter().map(|&v| (QubitBasis::X, v)).collect())
    }
}

impl fmt::Display for RegisterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegisterLabel::Grover(w) => write!(f, "{w}|1>"),
            RegisterLabel::Product(qs) => {
                f.write_str("|")?;
                for (i, (b, v)) in qs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    let b = if *b == QubitBasis::Z { "z" } else { "x" };
                    write!(f, "{b}{}", if *v > 0 { "+" } else { "-" })?;
                }
                f.write_str(">")
            }
        }
    }
}

/// Initial basis label; the cursor always starts on site 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StartLabel {
    pub register: RegisterLabel,
    /// `ρ_3(k)` values, `k = 1..=K`.
    pub counter: Vec<i8>,
    /// Needed when an oracle or an `a`-twisted switch acts on a product
    /// register.
    pub target: Option<TargetWord>,
}

impl StartLabel {
    /// `|1⟩_1 ⊗ |Q = 1⟩ ⊗ |ρ_3 = -1⟩`.
    pub fn grover(counter_bits: usize) -> Self {
        StartLabel {
            register: RegisterLabel::Grover(OpWord::identity()),
            counter: vec![-1; counter_bits],
            target: None,
        }
    }
}

/// One logical successor: `sign · register ⊗ |Q = site⟩ ⊗ |ρ_3 = counter⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathEntry {
    pub site: usize,
    pub counter: Vec<i8>,
    pub register: RegisterLabel,
    pub sign: i8,
}

impl PathEntry {
    /// `ε_j` when the register is a Grover iterate.
    pub fn eps(&self) -> Option<u8> {
        self.grover().map(|(e, _)| e)
    }

    /// `n_j` when the register is a Grover iterate.
    pub fn steps(&self) -> Option<u64> {
        self.grover().map(|(_, n)| n)
    }

    fn grover(&self) -> Option<(u8, u64)> {
        match &self.register {
            RegisterLabel::Grover(w) => w.grover_exponents(),
            RegisterLabel::Product(_) => None,
        }
    }
}

/// Ordered logical successors `φ_1, …, φ_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalPath {
    entries: Vec<PathEntry>,
}

impl LogicalPath {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[PathEntry] {
        &self.entries
    }

    /// Entry `φ_j`, 1-based.
    pub fn entry(&self, j: usize) -> Option<&PathEntry> {
        j.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn last(&self) -> &PathEntry {
        self.entries.last().expect("a path has at least its start")
    }

    /// 1-based indices `j` with `ε_j = 1`.
    pub fn oracle_steps(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.eps() == Some(1))
            .map(|(i, _)| i + 1)
            .collect()
    }
}

enum Outcome {
    Zero,
    Next(RegisterLabel, Vec<i8>, i8),
}

fn superposed(label: &EdgeLabel, register: &RegisterLabel) -> String {
    format!("`{label}` maps {register} to a superposition of basis labels")
}

fn needs_target(label: &EdgeLabel) -> String {
    format!("`{label}` acts on a product register and needs the target word")
}

fn up_value(axis: Axis, q: usize, target: Option<&TargetWord>, label: &EdgeLabel) -> core::result::Result<i8, String> {
    match axis {
        Axis::Z | Axis::X => Ok(1),
        Axis::TwistedZ => {
            let a = target.ok_or_else(|| needs_target(label))?;
            if q > a.mu() {
                return Err(format!("`{label}` twists the output qubit"));
            }
            Ok(a.bit(q))
        }
    }
}

fn apply(
    label: &EdgeLabel,
    register: &RegisterLabel,
    counter: &[i8],
    target: Option<&TargetWord>,
) -> core::result::Result<Outcome, String> {
    let same = |sign: i8| Outcome::Next(register.clone(), counter.to_vec(), sign);
    match *label {
        EdgeLabel::Delay => Ok(same(1)),
        EdgeLabel::CounterRaise(k) | EdgeLabel::CounterLower(k) | EdgeLabel::CounterX(k) => {
            let v = counter[k - 1];
            let nv = match label {
                EdgeLabel::CounterRaise(_) if v == -1 => 1,
                EdgeLabel::CounterLower(_) if v == 1 => -1,
                EdgeLabel::CounterX(_) => -v,
                _ => return Ok(Outcome::Zero),
            };
            let mut c = counter.to_vec();
            c[k - 1] = nv;
            Ok(Outcome::Next(register.clone(), c, 1))
        }
        EdgeLabel::OracleA | EdgeLabel::EstimatorB | EdgeLabel::NotOutput => match register {
            RegisterLabel::Grover(w) => Ok(match label {
                EdgeLabel::OracleA => Outcome::Next(RegisterLabel::Grover(w.then(Letter::A)), counter.to_vec(), 1),
                EdgeLabel::EstimatorB => Outcome::Next(RegisterLabel::Grover(w.then(Letter::B)), counter.to_vec(), 1),
                // the output qubit is the σ_1(ν) = -1 eigenstate
                _ => same(-1),
            }),
            RegisterLabel::Product(qs) => {
                let (inputs, output) = qs.split_at(qs.len() - 1);
                let fires = match label {
                    EdgeLabel::OracleA => {
                        let a = target.ok_or_else(|| needs_target(label))?;
                        if inputs.iter().any(|(b, _)| *b != QubitBasis::Z) {
                            return Err(superposed(label, register));
                        }
                        inputs.iter().zip(a.bits()).all(|((_, v), ai)| v == ai)
                    }
                    EdgeLabel::EstimatorB => {
                        if inputs.iter().any(|(b, _)| *b != QubitBasis::X) {
                            return Err(superposed(label, register));
                        }
                        inputs.iter().all(|(_, v)| *v == 1)
                    }
                    _ => true,
                };
                if !fires {
                    return Ok(same(1));
                }
                let (basis, v) = output[0];
                Ok(match basis {
                    QubitBasis::Z => {
                        let mut flipped = qs.clone();
                        flipped[qs.len() - 1].1 = -v;
                        Outcome::Next(RegisterLabel::Product(flipped), counter.to_vec(), 1)
                    }
                    QubitBasis::X => same(v),
                })
            }
        },
        EdgeLabel::SwitchLower { qubit, axis }
        | EdgeLabel::SwitchRaise { qubit, axis }
        | EdgeLabel::ProjectorPlus { qubit, axis }
        | EdgeLabel::ProjectorMinus { qubit, axis } => {
            let RegisterLabel::Product(qs) = register else {
                return Err(superposed(label, register));
            };
            let (basis, v) = qs[qubit - 1];
            let wanted = if axis == Axis::X { QubitBasis::X } else { QubitBasis::Z };
            if basis != wanted {
                return Err(superposed(label, register));
            }
            let up = v == up_value(axis, qubit, target, label)?;
            let (keep, flip) = match label {
                EdgeLabel::SwitchLower { .. } => (up, true),
                EdgeLabel::SwitchRaise { .. } => (!up, true),
                EdgeLabel::ProjectorPlus { .. } => (up, false),
                _ => (!up, false),
            };
            if !keep {
                return Ok(Outcome::Zero);
            }
            let mut next = qs.clone();
            if flip {
                next[qubit - 1].1 = -v;
            }
            Ok(Outcome::Next(RegisterLabel::Product(next), counter.to_vec(), 1))
        }
    }
}

/// Walks the logical successors of `start` until the forward Hamiltonian
/// annihilates the current label.
///
/// Fails when a forward application produces more than one basis label (or
/// a superposition within one link), when a label repeats, or when the path
/// exceeds the internal length cap.
pub fn enumerate_successors(graph: &CursorGraph, start: &StartLabel) -> Result<LogicalPath> {
    if start.counter.len() != graph.counter_bits() || start.counter.iter().any(|v| v.abs() != 1) {
        return Err(Error::InvalidParameter(format!(
            "start counter must hold {} values of +1/-1",
            graph.counter_bits()
        )));
    }
    if let RegisterLabel::Product(qs) = &start.register {
        if qs.len() != graph.mu() + 1 || qs.iter().any(|(_, v)| v.abs() != 1) {
            return Err(Error::InvalidParameter(format!(
                "start register must hold {} qubit values of +1/-1",
                graph.mu() + 1
            )));
        }
    }
    if let Some(a) = &start.target {
        if a.mu() != graph.mu() {
            return Err(Error::DimensionMismatch {
                expected: graph.mu(),
                found: a.mu(),
            });
        }
    }

    let target = start.target.as_ref();
    let mut entries = vec![PathEntry {
        site: 1,
        counter: start.counter.clone(),
        register: start.register.clone(),
        sign: 1,
    }];
    let mut seen = BTreeSet::new();
    seen.insert((1usize, start.counter.clone(), start.register.clone()));

    loop {
        let cur = entries.last().expect("non-empty");
        let step = entries.len();
        let fail = |reason: String| Error::NotAComputation {
            step,
            site: cur.site,
            reason,
        };
        let mut next: Option<PathEntry> = None;
        for e in graph.edges_from(cur.site) {
            match apply(&e.label, &cur.register, &cur.counter, target).map_err(&fail)? {
                Outcome::Zero => {}
                Outcome::Next(register, counter, sign) => {
                    if next.is_some() {
                        return Err(fail(format!(
                            "forward map from site {} reaches more than one basis label",
                            cur.site
                        )));
                    }
                    next = Some(PathEntry {
                        site: e.to,
                        counter,
                        register,
                        sign: sign * cur.sign,
                    });
                }
            }
        }
        let Some(next) = next else { break };
        if !seen.insert((next.site, next.counter.clone(), next.register.clone())) {
            return Err(fail(format!(
                "label at site {} with register {} repeats",
                next.site, next.register
            )));
        }
        if entries.len() >= MAX_PATH {
            return Err(fail("path exceeds the length cap".to_string()));
        }
        entries.push(next);
    }
    Ok(LogicalPath { entries })
}

/// Logical path of the Grover initial condition `|1⟩_1 ⊗ |Q=1⟩ ⊗ |ρ_3=-1⟩`.
pub fn enumerate_grover_path(graph: &CursorGraph) -> Result<LogicalPath> {
    enumerate_successors(graph, &StartLabel::grover(graph.counter_bits()))
}
