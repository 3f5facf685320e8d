//! Scenario configuration: `key = value` files overridden by flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use cursorq_core::pathspec::{SwitchVariant, MAX_COUNTER_BITS};
use cursorq_core::spinops::TargetWord;
use cursorq_core::walkdyn::{TimeGrid, DEFAULT_STEP};
use cursorq_core::DEFAULT_LAMBDA;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}:{line}: expected `key = value`")]
    Syntax { path: String, line: usize },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("bad value `{value}` for `{key}`: {reason}")]
    BadValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MachineKind {
    Chain,
    Subroutine,
    Cnot,
    Ccnot,
    Full,
}

impl FromStr for MachineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "chain" => MachineKind::Chain,
            "subroutine" => MachineKind::Subroutine,
            "cnot" => MachineKind::Cnot,
            "ccnot" => MachineKind::Ccnot,
            "full" => MachineKind::Full,
            _ => return Err("expected chain, subroutine, cnot, ccnot or full".into()),
        })
    }
}

impl fmt::Display for MachineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MachineKind::Chain => "chain",
            MachineKind::Subroutine => "subroutine",
            MachineKind::Cnot => "cnot",
            MachineKind::Ccnot => "ccnot",
            MachineKind::Full => "full",
        })
    }
}

/// Observable columns of `simulate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    /// `⟨Q⟩`
    Cursor,
    /// `Σ_j j |⟨φ_j|ψ⟩|²`
    PathIndex,
    /// `⟨ρ_3(k)⟩`
    Counter(usize),
    /// `⟨P_a⟩`
    Register,
    /// Completed computation with the target on the register.
    Completed,
    /// Cursor on the last site.
    FinalSite,
    Norm,
    Energy,
    /// Reduced-walk `Pr(t)`; chain and subroutine only.
    PrExact,
    /// Bessel closed form of `Pr(t)`; chain and subroutine only.
    PrClosed,
}

impl Output {
    pub fn column(&self) -> String {
        match self {
            Output::Cursor => "cursor".into(),
            Output::PathIndex => "path_index".into(),
            Output::Counter(k) => format!("counter{k}"),
            Output::Register => "register".into(),
            Output::Completed => "completed".into(),
            Output::FinalSite => "final_site".into(),
            Output::Norm => "norm".into(),
            Output::Energy => "energy".into(),
            Output::PrExact => "pr_exact".into(),
            Output::PrClosed => "pr_closed".into(),
        }
    }

    pub fn is_probability(&self) -> bool {
        matches!(
            self,
            Output::Register | Output::Completed | Output::FinalSite | Output::PrExact | Output::PrClosed
        )
    }

    /// Needs the full sector evolution.
    pub fn needs_sector(&self) -> bool {
        !matches!(self, Output::PrExact | Output::PrClosed)
    }
}

impl FromStr for Output {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "cursor" => Output::Cursor,
            "path_index" => Output::PathIndex,
            "register" => Output::Register,
            "completed" => Output::Completed,
            "final_site" => Output::FinalSite,
            "norm" => Output::Norm,
            "energy" => Output::Energy,
            "pr_exact" => Output::PrExact,
            "pr_closed" => Output::PrClosed,
            _ => match s.strip_prefix("counter").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => Output::Counter(k),
                _ => return Err(format!("unknown output `{s}`")),
            },
        })
    }
}

/// Parses `±1` words written as `+-+` or `1,-1,1`.
pub fn parse_word(s: &str) -> Result<Vec<i8>, String> {
    let s = s.trim();
    let out: Option<Vec<i8>> = if s.contains(',') {
        s.split(',')
            .map(|t| match t.trim() {
                "1" | "+1" | "+" => Some(1),
                "-1" | "-" => Some(-1),
                _ => None,
            })
            .collect()
    } else {
        s.chars()
            .map(|c| match c {
                '+' => Some(1),
                '-' => Some(-1),
                _ => None,
            })
            .collect()
    };
    match out {
        Some(w) if !w.is_empty() => Ok(w),
        _ => Err("expected a word of + and - signs".into()),
    }
}

pub fn format_word(w: &[i8]) -> String {
    w.iter().map(|&v| if v > 0 { '+' } else { '-' }).collect()
}

/// Accepts plain numbers and multiples of π such as `3pi/8` or `pi`.
pub fn parse_lambda(s: &str) -> Result<f64, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (num, den) = match compact.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (compact.as_str(), None),
    };
    let num = match num.strip_suffix("pi") {
        Some(c) => {
            let c = c.strip_suffix('*').unwrap_or(c);
            let coef = if c.is_empty() {
                1.0
            } else {
                c.parse::<f64>().map_err(|e| e.to_string())?
            };
            coef * std::f64::consts::PI
        }
        None => num.parse::<f64>().map_err(|e| e.to_string())?,
    };
    let den = match den {
        Some(d) => d.parse::<f64>().map_err(|e| e.to_string())?,
        None => 1.0,
    };
    let v = num / den;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err("coupling must be positive and finite".into())
    }
}

/// Everything a `simulate`, `compile` or `audit` run depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub machine: MachineKind,
    pub mu: usize,
    pub counter_bits: usize,
    pub sites: usize,
    pub lambda: f64,
    pub variant: SwitchVariant,
    /// Hidden word `a`; defaults to `+-+-…`.
    pub target: Option<Vec<i8>>,
    /// z-basis input word `q_1 … q_ν` of a c^μNOT run; defaults to all `+`.
    pub input: Option<Vec<i8>>,
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
    pub outputs: Vec<Output>,
    /// Largest sector dimension evolved or audited.
    pub cap: usize,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            machine: MachineKind::Chain,
            mu: 2,
            counter_bits: 1,
            sites: 9,
            lambda: DEFAULT_LAMBDA,
            variant: SwitchVariant::RaiseLower,
            target: None,
            input: None,
            t_min: 0.0,
            t_max: 20.0,
            step: DEFAULT_STEP,
            outputs: Vec::new(),
            cap: 4096,
        }
    }
}

fn bad(key: &str, value: &str, reason: impl fmt::Display) -> ConfigError {
    ConfigError::BadValue {
        key: key.into(),
        value: value.into(),
        reason: reason.to_string(),
    }
}

impl ScenarioConfig {
    /// Defaults, then the file (if any), then `overrides` in order.
    pub fn load(file: Option<&Path>, overrides: &[(String, String)]) -> Result<Self, ConfigError> {
        let mut cfg = ScenarioConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                path: path.display().to_string(),
                source,
            })?;
            for (key, value) in parse_pairs(&text, &path.display().to_string())? {
                cfg.set(&key, &value)?;
            }
        }
        for (key, value) in overrides {
            cfg.set(key, value)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let v = value.trim();
        let count = || v.parse::<usize>().map_err(|e| bad(key, v, e));
        let real = || v.parse::<f64>().map_err(|e| bad(key, v, e));
        match key {
            "machine" => self.machine = v.parse().map_err(|e| bad(key, v, e))?,
            "mu" => self.mu = count()?,
            "K" | "k" => self.counter_bits = count()?,
            "s" => self.sites = count()?,
            "lambda" => self.lambda = parse_lambda(v).map_err(|e| bad(key, v, e))?,
            "variant" => self.variant = v.parse().map_err(|e| bad(key, v, e))?,
            "target" => self.target = Some(parse_word(v).map_err(|e| bad(key, v, e))?),
            "input" => self.input = Some(parse_word(v).map_err(|e| bad(key, v, e))?),
            "t_min" => self.t_min = real()?,
            "t_max" => self.t_max = real()?,
            "step" => self.step = real()?,
            "outputs" => {
                self.outputs = v
                    .split(',')
                    .map(|o| o.trim().parse::<Output>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| bad(key, v, e))?
            }
            "cap" => self.cap = count()?,
            _ => return Err(ConfigError::UnknownKey(key.into())),
        }
        Ok(())
    }

    /// Register width of the configured machine.
    pub fn register_mu(&self) -> usize {
        match self.machine {
            MachineKind::Ccnot => 2,
            _ => self.mu,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |m: String| Err(ConfigError::Invalid(m));
        if self.machine == MachineKind::Ccnot && self.mu != 2 {
            return invalid(format!("ccnot is the mu = 2 network, got mu = {}", self.mu));
        }
        let mu = self.register_mu();
        if !(1..=cursorq_core::spinops::MAX_MU).contains(&mu) {
            return invalid(format!("mu = {mu} outside 1..={}", cursorq_core::spinops::MAX_MU));
        }
        if matches!(self.machine, MachineKind::Subroutine | MachineKind::Full)
            && self.counter_bits > MAX_COUNTER_BITS
        {
            return invalid(format!("K = {} above {MAX_COUNTER_BITS}", self.counter_bits));
        }
        if self.machine == MachineKind::Chain && self.sites == 0 {
            return invalid("a chain needs s >= 1".into());
        }
        if let Some(a) = &self.target {
            if a.len() != mu {
                return invalid(format!("target has {} bits, mu = {mu}", a.len()));
            }
        }
        if let Some(w) = &self.input {
            if !matches!(self.machine, MachineKind::Cnot | MachineKind::Ccnot) {
                return invalid("`input` applies to cnot and ccnot machines only".into());
            }
            if w.len() != mu + 1 {
                return invalid(format!("input has {} bits, a c^mu NOT needs {}", w.len(), mu + 1));
            }
        }
        self.grid()?;
        for o in &self.outputs {
            match o {
                Output::PrExact | Output::PrClosed
                    if !matches!(self.machine, MachineKind::Chain | MachineKind::Subroutine) =>
                {
                    return invalid(format!("`{}` needs a chain or subroutine machine", o.column()))
                }
                Output::Counter(k) if *k > self.counter_bits_of_machine() => {
                    return invalid(format!("no counter spin {k} on this machine"))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn counter_bits_of_machine(&self) -> usize {
        match self.machine {
            MachineKind::Subroutine | MachineKind::Full => self.counter_bits,
            _ => 0,
        }
    }

    pub fn grid(&self) -> Result<TimeGrid, ConfigError> {
        TimeGrid::new(self.t_min, self.t_max, self.step)
            .map_err(|e| ConfigError::Invalid(format!("time grid: {e}")))
    }

    pub fn target_word(&self) -> Result<TargetWord, ConfigError> {
        let mu = self.register_mu();
        let bits = self
            .target
            .clone()
            .unwrap_or_else(|| (0..mu).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect());
        TargetWord::new(bits).map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn input_word(&self) -> Vec<i8> {
        self.input
            .clone()
            .unwrap_or_else(|| vec![1; self.register_mu() + 1])
    }

    /// Default observables when none are requested.
    pub fn effective_outputs(&self) -> Vec<Output> {
        if !self.outputs.is_empty() {
            return self.outputs.clone();
        }
        match self.machine {
            MachineKind::Chain | MachineKind::Subroutine => {
                vec![Output::Cursor, Output::Register, Output::PrExact]
            }
            MachineKind::Cnot | MachineKind::Ccnot => vec![Output::Cursor, Output::FinalSite],
            MachineKind::Full => {
                let mut v = vec![Output::Cursor, Output::Register, Output::Completed];
                v.extend((1..=self.counter_bits).map(Output::Counter));
                v
            }
        }
    }
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_pairs(text: &str, origin: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            path: origin.into(),
            line: n + 1,
        })?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_forms() {
        let l = parse_lambda("3pi/8").unwrap();
        assert!((l - DEFAULT_LAMBDA).abs() < 1e-15);
        assert!((parse_lambda("3 * pi / 8").unwrap() - l).abs() < 1e-15);
        assert_eq!(parse_lambda("pi").unwrap(), std::f64::consts::PI);
        assert_eq!(parse_lambda("1.5").unwrap(), 1.5);
        assert!(parse_lambda("-1").is_err());
        assert!(parse_lambda("pi/0").is_err());
        assert!(parse_lambda("x").is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("+-+").unwrap(), vec![1, -1, 1]);
        assert_eq!(parse_word("1, -1").unwrap(), vec![1, -1]);
        assert!(parse_word("+0").is_err());
        assert!(parse_word("").is_err());
        assert_eq!(format_word(&[1, -1, -1]), "+--");
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scenario.cfg");
        std::fs::write(&path, "# full machine\nmachine = full\nmu = 3\nK = 1\nt_max = 5 # short\n")
            .unwrap();
        let cfg =
            ScenarioConfig::load(Some(&path), &[("t_max".into(), "7".into())]).unwrap();
        assert_eq!(cfg.machine, MachineKind::Full);
        assert_eq!((cfg.mu, cfg.counter_bits), (3, 1));
        assert_eq!(cfg.t_max, 7.0);
        assert_eq!(cfg.target_word().unwrap().bits(), &[1, -1, 1]);
    }

    #[test]
    fn rejected_scenarios() {
        let load = |pairs: &[(&str, &str)]| {
            let p: Vec<(String, String)> =
                pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
            ScenarioConfig::load(None, &p)
        };
        assert!(matches!(load(&[("colour", "red")]), Err(ConfigError::UnknownKey(_))));
        assert!(load(&[("machine", "ccnot"), ("mu", "3")]).is_err());
        assert!(load(&[("mu", "2"), ("target", "+")]).is_err());
        assert!(load(&[("input", "+++")]).is_err());
        assert!(load(&[("machine", "cnot"), ("input", "++")]).is_err());
        assert!(load(&[("step", "0")]).is_err());
        assert!(load(&[("machine", "full"), ("outputs", "pr_exact")]).is_err());
        assert!(load(&[("machine", "chain"), ("outputs", "counter1")]).is_err());
        assert!(load(&[("outputs", "cursor,bogus")]).is_err());
        assert!(load(&[("mu", "0")]).is_err());
        assert!(load(&[("machine", "cnot"), ("input", "+-+")]).is_ok());
    }

    #[test]
    fn syntax_errors_name_the_line() {
        let err = parse_pairs("mu = 2\noops\n", "f.cfg").unwrap_err();
        assert_eq!(err.to_string(), "f.cfg:2: expected `key = value`");
    }
}
