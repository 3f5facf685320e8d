//! `compile`, `audit` and `peaks`.

use std::fmt;

use anyhow::{Context, Result};

use cursorq_core::evolve::{
    assemble, audit_from, logical_chain, Evolver, SectorBasis, SectorState,
};
use cursorq_core::pathspec::{
    enumerate_grover_path, enumerate_successors, path_length, CursorGraph, RegisterLabel,
    StartLabel,
};
use cursorq_core::spinops::TargetWord;
use cursorq_core::walkdyn::{
    chain_amplitude, first_peak, locate_maximum, ExactPr, FirstPeak, PeakFlavor, SampledPeak,
};

use crate::config::{MachineKind, ScenarioConfig};
use crate::scenario::{build_graph, check_cap, expected_path_len, start_state};

/// Residual bound of the conservation audit.
pub const AUDIT_TOL: f64 = 1e-12;
/// Bound on `|⟨φ_j|ψ(t)⟩ - c(t, j; p)|`.
pub const DEVIATION_TOL: f64 = 1e-8;
/// Bound on `|‖ψ(t)‖² - 1|`.
pub const NORM_TOL: f64 = 1e-10;
/// Times at which the full evolution is compared with the hopping chain.
pub const AUDIT_TIMES: [f64; 3] = [1.0, 5.0, 10.0];

#[derive(Debug, Clone)]
pub struct CompileReport {
    pub graph: CursorGraph,
    pub path_len: usize,
    /// `None` when the oracle is a local network rather than one link.
    pub oracle_calls: Option<Vec<usize>>,
}

impl fmt::Display for CompileReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sites: {}", self.graph.sites())?;
        writeln!(f, "edges: {}", self.graph.edges().len())?;
        writeln!(f, "logical path length: {}", self.path_len)?;
        match &self.oracle_calls {
            Some(c) => {
                let list: Vec<String> = c.iter().map(|j| j.to_string()).collect();
                writeln!(f, "oracle calls at j: [{}]", list.join(", "))
            }
            None => writeln!(f, "oracle calls at j: n/a (oracle is a local network)"),
        }
    }
}

/// Builds the configured machine and measures its logical path.
pub fn compile(cfg: &ScenarioConfig) -> Result<CompileReport> {
    cfg.validate()?;
    let graph = build_graph(cfg)?;
    let (path_len, oracle_calls) = match cfg.machine {
        MachineKind::Chain | MachineKind::Subroutine => {
            let path = enumerate_grover_path(&graph)?;
            (path.len(), Some(path.oracle_steps()))
        }
        MachineKind::Cnot | MachineKind::Ccnot => {
            let start = StartLabel {
                register: RegisterLabel::z_word(&cfg.input_word()),
                counter: vec![],
                target: None,
            };
            (enumerate_successors(&graph, &start)?.len(), Some(Vec::new()))
        }
        MachineKind::Full => {
            let target = cfg.target_word()?;
            let h = assemble(&graph, &target, cfg.lambda)?;
            let len = if h.dim() <= cfg.cap {
                logical_chain(&h, &SectorState::grover_initial(*h.basis())?)?.len()
            } else {
                expected_path_len(cfg)
            };
            (len, None)
        }
    };
    Ok(CompileReport {
        graph,
        path_len,
        oracle_calls,
    })
}

/// Outcome of an audit; see [`AuditOutcome::passes`].
#[derive(Debug, Clone)]
pub struct AuditOutcome {
    pub dim: usize,
    pub report: cursorq_core::evolve::AuditReport,
    /// `max_{t, j} |⟨φ_j|ψ(t)⟩ - c(t, j; p)|`.
    pub deviation: f64,
    pub norm_drift: f64,
}

impl AuditOutcome {
    pub fn passes(&self) -> bool {
        self.report.passes(AUDIT_TOL)
            && self.deviation < DEVIATION_TOL
            && self.norm_drift < NORM_TOL
    }
}

impl fmt::Display for AuditOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.report;
        writeln!(f, "sector dimension: {}", self.dim)?;
        writeln!(f, "logical path length: {}", r.path_len)?;
        writeln!(f, "output commutator: {:.3e}", r.output_commutator)?;
        writeln!(f, "cursor residual: {:.3e}", r.cursor_residual)?;
        writeln!(f, "span residual: {:.3e}", r.span_residual)?;
        writeln!(f, "chain residual: {:.3e}", r.chain_residual)?;
        writeln!(f, "reduced/full deviation: {:.3e}", self.deviation)?;
        writeln!(f, "norm drift: {:.3e}", self.norm_drift)?;
        writeln!(f, "{}", if self.passes() { "PASS" } else { "FAIL" })
    }
}

/// Audits `graph` from `start`: conservation residuals, then the full
/// evolution against the hopping chain of the same length.
pub fn audit_graph(
    graph: &CursorGraph,
    target: &TargetWord,
    lambda: f64,
    cap: usize,
    start: impl FnOnce(SectorBasis) -> Result<SectorState>,
) -> Result<AuditOutcome> {
    let h = assemble(graph, target, lambda)?;
    check_cap(&h, cap)?;
    let psi0 = start(*h.basis())?;
    let report = audit_from(&h, &psi0)?;
    let chain = logical_chain(&h, &psi0)?;
    let p = chain.len();
    let ev = Evolver::new(&h)?;
    let traj = ev.trajectory(&psi0)?;
    let mut deviation = 0.0f64;
    let mut norm_drift = 0.0f64;
    for t in AUDIT_TIMES {
        let psi = traj.at(t)?;
        norm_drift = norm_drift.max((psi.norm_sqr() - 1.0).abs());
        for (j, c) in chain.overlaps(&psi)?.iter().enumerate() {
            deviation = deviation.max((c - chain_amplitude(t, j + 1, p, lambda)?).norm());
        }
    }
    Ok(AuditOutcome {
        dim: h.dim(),
        report,
        deviation,
        norm_drift,
    })
}

/// Audit of the configured machine from its start state.
pub fn audit(cfg: &ScenarioConfig) -> Result<AuditOutcome> {
    cfg.validate()?;
    let graph = build_graph(cfg)?;
    audit_graph(&graph, &cfg.target_word()?, cfg.lambda, cfg.cap, |b| {
        start_state(cfg, b)
    })
}

/// Audit of a graph file, from the Grover initial condition.
pub fn audit_file(text: &str, cfg: &ScenarioConfig) -> Result<AuditOutcome> {
    let graph: CursorGraph = text.parse().context("parsing the graph file")?;
    let target = match &cfg.target {
        Some(w) => TargetWord::new(w.clone())?,
        None => TargetWord::new(
            (0..graph.mu()).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect(),
        )?,
    };
    audit_graph(&graph, &target, cfg.lambda, cfg.cap, |b| {
        Ok(SectorState::grover_initial(b)?)
    })
}

/// Exact series evaluated by `peaks` above this path length are skipped.
pub const CHEAP_PATH: usize = 4096;

#[derive(Debug, Clone)]
pub struct PeaksReport {
    pub flavor: PeakFlavor,
    pub mu: usize,
    pub lambda: f64,
    pub closed: FirstPeak,
    /// Path length of the exact series and its located first maximum.
    pub exact: Option<(usize, SampledPeak)>,
}

impl fmt::Display for PeaksReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "flavor: {}  mu: {}  lambda: {:.12}", self.flavor, self.mu, self.lambda)?;
        writeln!(f, "z0: {:.12}", self.closed.z0)?;
        writeln!(f, "t0: {:.12}", self.closed.t0)?;
        writeln!(f, "Pr(t0): {:.12}", self.closed.pr0)?;
        match &self.exact {
            Some((p, peak)) => writeln!(
                f,
                "exact (p = {p}): max {:.12} at t = {:.12}",
                peak.value, peak.t
            ),
            None => writeln!(f, "exact: skipped (path longer than {CHEAP_PATH})"),
        }
    }
}

/// Closed-form first peak and, when cheap, the exact one near it.
///
/// `length` is `s` for the chain (default `2^{μ+1} + 1`) and `K` for the
/// subroutine (default `μ`).
pub fn peaks(mu: usize, lambda: f64, flavor: PeakFlavor, length: Option<usize>) -> Result<PeaksReport> {
    let closed = first_peak(mu, lambda, flavor)?;
    let exact = match flavor {
        PeakFlavor::Chain => {
            let s = length.unwrap_or((1usize << (mu + 1)) + 1);
            (s <= CHEAP_PATH).then(|| ExactPr::chain(mu, s, lambda)).transpose()?
        }
        PeakFlavor::Subroutine => {
            let k = length.unwrap_or(mu);
            (k < 10 && path_length(k) <= CHEAP_PATH)
                .then(|| ExactPr::subroutine(mu, k, lambda))
                .transpose()?
        }
    };
    let exact = match exact {
        Some(pr) => {
            let peak = locate_maximum(|t| pr.at(t), 0.5 * closed.t0, 1.5 * closed.t0, 0.05)?;
            Some((pr.path_len(), peak))
        }
        None => None,
    };
    Ok(PeaksReport {
        flavor,
        mu,
        lambda,
        closed,
        exact,
    })
}
