use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::spinops::check_mu;

/// Spin component a switch or projector is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    /// `σ_3`: "up" means `σ_3 = +1`.
    Z,
    /// `σ_1`: "up" means `σ_1 = +1`.
    X,
    /// `a_q σ_3`: "up" means `σ_3(q) = a_q` for the target word `a`.
    TwistedZ,
}

impl Axis {
    fn token(self) -> &'static str {
        match self {
            Axis::Z => "z",
            Axis::X => "x",
            Axis::TwistedZ => "a",
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z" => Ok(Axis::Z),
            "x" => Ok(Axis::X),
            "a" => Ok(Axis::TwistedZ),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }
}

/// How the SWITCH primitive of a local network is realised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwitchVariant {
    /// Controlling qubit is lowered on entry to the upper branch and raised
    /// on exit (and the other way round on the lower branch).
    RaiseLower,
    /// Controlling qubit is only projected, never flipped.
    Projector,
}

impl FromStr for SwitchVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raiselower" | "raise-lower" | "sigma" => Ok(SwitchVariant::RaiseLower),
            "projector" => Ok(SwitchVariant::Projector),
            other => Err(Error::InvalidParameter(format!("unknown switch variant `{other}`"))),
        }
    }
}

impl fmt::Display for SwitchVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SwitchVariant::RaiseLower => "raiselower",
            SwitchVariant::Projector => "projector",
        })
    }
}

/// Operator on register ⊗ counter carried by a forward cursor link.
///
/// Register qubits `qubit` are 1-based in `1..=ν`; counter spins `k` are
/// 1-based in `1..=K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    OracleA,
    EstimatorB,
    /// `σ_1(ν)`
    NotOutput,
    /// Maps the "up" eigenstate of `axis` to the "down" one.
    SwitchLower { qubit: usize, axis: Axis },
    /// Maps the "down" eigenstate of `axis` to the "up" one.
    SwitchRaise { qubit: usize, axis: Axis },
    /// Projector on the "up" eigenstate of `axis`.
    ProjectorPlus { qubit: usize, axis: Axis },
    /// Projector on the "down" eigenstate of `axis`.
    ProjectorMinus { qubit: usize, axis: Axis },
    /// Identity: a pure hop of the cursor.
    Delay,
    /// `ρ_+(k)`
    CounterRaise(usize),
    /// `ρ_-(k)`
    CounterLower(usize),
    /// `ρ_x(k)`
    CounterX(usize),
}

impl EdgeLabel {
    pub fn register_qubit(&self) -> Option<usize> {
        match *self {
            EdgeLabel::SwitchLower { qubit, .. }
            | EdgeLabel::SwitchRaise { qubit, .. }
            | EdgeLabel::ProjectorPlus { qubit, .. }
            | EdgeLabel::ProjectorMinus { qubit, .. } => Some(qubit),
            _ => None,
        }
    }

    pub fn counter_spin(&self) -> Option<usize> {
        match *self {
            EdgeLabel::CounterRaise(k) | EdgeLabel::CounterLower(k) | EdgeLabel::CounterX(k) => {
                Some(k)
            }
            _ => None,
        }
    }

    /// Labels whose operator is unitary on its own.
    pub fn is_unitary(&self) -> bool {
        matches!(
            self,
            EdgeLabel::OracleA
                | EdgeLabel::EstimatorB
                | EdgeLabel::NotOutput
                | EdgeLabel::Delay
                | EdgeLabel::CounterX(_)
        )
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EdgeLabel::OracleA => f.write_str("A"),
            EdgeLabel::EstimatorB => f.write_str("B"),
            EdgeLabel::NotOutput => f.write_str("NOT"),
            EdgeLabel::Delay => f.write_str("DELAY"),
            EdgeLabel::SwitchLower { qubit, axis } => write!(f, "LOWER[{qubit},{}]", axis.token()),
            EdgeLabel::SwitchRaise { qubit, axis } => write!(f, "RAISE[{qubit},{}]", axis.token()),
            EdgeLabel::ProjectorPlus { qubit, axis } => write!(f, "PPLUS[{qubit},{}]", axis.token()),
            EdgeLabel::ProjectorMinus { qubit, axis } => {
                write!(f, "PMINUS[{qubit},{}]", axis.token())
            }
            EdgeLabel::CounterRaise(k) => write!(f, "RHOPLUS[{k}]"),
            EdgeLabel::CounterLower(k) => write!(f, "RHOMINUS[{k}]"),
            EdgeLabel::CounterX(k) => write!(f, "RHOX[{k}]"),
        }
    }
}

impl FromStr for EdgeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownLabel(s.to_string());
        let (name, params) = match s.find('[') {
            Some(open) => {
                let inner = s[open + 1..].strip_suffix(']').ok_or_else(unknown)?;
                (&s[..open], Some(inner))
            }
            None => (s, None),
        };
        let index = |p: &str| p.trim().parse::<usize>().map_err(|_| unknown());
        let qubit_axis = |p: Option<&str>| -> Result<(usize, Axis)> {
            let (q, ax) = p.and_then(|p| p.split_once(',')).ok_or_else(unknown)?;
            Ok((index(q)?, ax.trim().parse().map_err(|_| unknown())?))
        };
        let spin = |p: Option<&str>| -> Result<usize> { index(p.ok_or_else(unknown)?) };
        let label = match (name, params) {
            ("A", None) => EdgeLabel::OracleA,
            ("B", None) => EdgeLabel::EstimatorB,
            ("NOT", None) => EdgeLabel::NotOutput,
            ("DELAY", None) => EdgeLabel::Delay,
            ("LOWER", p) => {
                let (qubit, axis) = qubit_axis(p)?;
                EdgeLabel::SwitchLower { qubit, axis }
            }
            ("RAISE", p) => {
                let (qubit, axis) = qubit_axis(p)?;
                EdgeLabel::SwitchRaise { qubit, axis }
            }
            ("PPLUS", p) => {
                let (qubit, axis) = qubit_axis(p)?;
                EdgeLabel::ProjectorPlus { qubit, axis }
            }
            ("PMINUS", p) => {
                let (qubit, axis) = qubit_axis(p)?;
                EdgeLabel::ProjectorMinus { qubit, axis }
            }
            ("RHOPLUS", p) => EdgeLabel::CounterRaise(spin(p)?),
            ("RHOMINUS", p) => EdgeLabel::CounterLower(spin(p)?),
            ("RHOX", p) => EdgeLabel::CounterX(spin(p)?),
            _ => return Err(unknown()),
        };
        Ok(label)
    }
}

/// One forward Hamiltonian term: the cursor hops `from → to` while `label`
/// acts on register ⊗ counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
}

/// Directed, labelled cursor graph of a machine.
///
/// Sites are 1-based. Edges keep their construction order, which is also
/// the order of the text export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CursorGraph {
    sites: usize,
    mu: usize,
    counter_bits: usize,
    edges: Vec<Edge>,
}

impl CursorGraph {
    pub fn new(sites: usize, mu: usize, counter_bits: usize, edges: Vec<Edge>) -> Result<Self> {
        check_mu(mu)?;
        if sites == 0 {
            return Err(Error::MalformedGraph("a cursor needs at least one site".to_string()));
        }
        let mut seen = BTreeSet::new();
        for (n, e) in edges.iter().enumerate() {
            let line = n + 1;
            if !(1..=sites).contains(&e.from) || !(1..=sites).contains(&e.to) {
                return Err(Error::MalformedGraph(format!(
                    "edge {line} ({} -> {}) leaves the site range 1..={sites}",
                    e.from, e.to
                )));
            }
            if e.from == e.to {
                return Err(Error::MalformedGraph(format!("edge {line} is a self loop")));
            }
            if let Some(q) = e.label.register_qubit() {
                if !(1..=mu + 1).contains(&q) {
                    return Err(Error::MalformedGraph(format!(
                        "edge {line}: register qubit {q} outside 1..={}",
                        mu + 1
                    )));
                }
            }
            if let Some(k) = e.label.counter_spin() {
                if !(1..=counter_bits).contains(&k) {
                    return Err(Error::MalformedGraph(format!(
                        "edge {line}: counter spin {k} outside 1..={counter_bits}"
                    )));
                }
            }
            if !seen.insert((e.from, e.to, e.label)) {
                return Err(Error::MalformedGraph(format!("edge {line} is a repeated term")));
            }
        }
        Ok(CursorGraph {
            sites,
            mu,
            counter_bits,
            edges,
        })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    /// Number `K` of subroutine counter spins.
    pub fn counter_bits(&self) -> usize {
        self.counter_bits
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edges_from(&self, site: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.from == site)
    }

    /// Same graph with one edge label replaced; used for negative controls.
    pub fn with_label(&self, edge: usize, label: EdgeLabel) -> Result<Self> {
        let mut edges = self.edges.clone();
        let slot = edges.get_mut(edge).ok_or_else(|| {
            Error::MalformedGraph(format!("no edge with index {edge}"))
        })?;
        slot.label = label;
        CursorGraph::new(self.sites, self.mu, self.counter_bits, edges)
    }
}

/// Text export: a header `sites=<s> mu=<μ> K=<K>`, then one `from to LABEL`
/// line per edge in construction order.
impl fmt::Display for CursorGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sites={} mu={} K={}", self.sites, self.mu, self.counter_bits)?;
        for e in &self.edges {
            writeln!(f, "{} {} {}", e.from, e.to, e.label)?;
        }
        Ok(())
    }
}

impl FromStr for CursorGraph {
    type Err = Error;

    /// Parses the text export. Blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (n, header) = lines
            .next()
            .ok_or_else(|| Error::MalformedGraph("empty graph file".to_string()))?;
        let mut fields = [None; 3];
        for tok in header.split_whitespace() {
            let (key, value) = tok.split_once('=').ok_or_else(|| {
                Error::MalformedGraph(format!("line {n}: expected key=value, found `{tok}`"))
            })?;
            let slot = match key {
                "sites" => 0,
                "mu" => 1,
                "K" => 2,
                _ => return Err(Error::MalformedGraph(format!("line {n}: unknown key `{key}`"))),
            };
            let v = value.parse::<usize>().map_err(|_| {
                Error::MalformedGraph(format!("line {n}: `{value}` is not a count"))
            })?;
            fields[slot] = Some(v);
        }
        let [Some(sites), Some(mu), Some(k)] = fields else {
            return Err(Error::MalformedGraph(format!(
                "line {n}: header needs sites=, mu= and K="
            )));
        };
        let mut edges = Vec::new();
        for (n, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [from, to, label] = parts[..] else {
                return Err(Error::MalformedGraph(format!(
                    "line {n}: expected `from to LABEL`"
                )));
            };
            let site = |x: &str| {
                x.parse::<usize>()
                    .map_err(|_| Error::MalformedGraph(format!("line {n}: bad site `{x}`")))
            };
            edges.push(Edge {
                from: site(from)?,
                to: site(to)?,
                label: label.parse()?,
            });
        }
        crate::pathspec::machines::check_counter(k)?;
        CursorGraph::new(sites, mu, k, edges)
    }
}
