//! Time series behind the figures, as CSV tables.

use std::path::{Path, PathBuf};

use anyhow::{bail, Result};

use cursorq_core::pathspec::{cnot_path_length, full_machine_path_length, SwitchVariant};
use cursorq_core::walkdyn::{chain_amplitude, completion_peak};

use crate::config::{MachineKind, Output, ScenarioConfig};
use crate::csv::{Column, Table};
use crate::scenario::simulate;

/// Figure ids with a curve to reproduce.
pub const FIGURE_IDS: [u32; 9] = [1, 3, 7, 11, 13, 14, 15, 16, 17];

/// Optional overrides of a figure's parameters.
#[derive(Debug, Clone, Default)]
pub struct FigureOptions {
    pub lambda: Option<f64>,
    pub t_max: Option<f64>,
    pub step: Option<f64>,
    /// Hidden word of the full-machine figures.
    pub target: Option<Vec<i8>>,
}

fn base(opts: &FigureOptions, machine: MachineKind, t_max: f64) -> ScenarioConfig {
    let mut cfg = ScenarioConfig {
        machine,
        t_max: opts.t_max.unwrap_or(t_max),
        ..ScenarioConfig::default()
    };
    if let Some(l) = opts.lambda {
        cfg.lambda = l;
    }
    if let Some(s) = opts.step {
        cfg.step = s;
    }
    cfg
}

fn full_machine(opts: &FigureOptions, variant: SwitchVariant, outputs: Vec<Output>) -> ScenarioConfig {
    let mut cfg = base(opts, MachineKind::Full, 100.0);
    cfg.mu = 3;
    cfg.counter_bits = 1;
    cfg.variant = variant;
    cfg.target = opts.target.clone();
    cfg.outputs = outputs;
    cfg
}

fn renamed(mut table: Table, names: &[&str]) -> Result<Table> {
    let cols: Vec<Column> = table
        .columns()
        .iter()
        .zip(names)
        .map(|(c, n)| Column {
            name: n.to_string(),
            probability: c.probability,
        })
        .collect();
    let rows = std::mem::take(&mut table).into_rows();
    let mut out = Table::new(cols);
    for r in rows {
        out.push(r)?;
    }
    Ok(out)
}

/// Table of figure `id`.
pub fn figure_table(id: u32, opts: &FigureOptions) -> Result<Table> {
    match id {
        1 => {
            let mut cfg = base(opts, MachineKind::Chain, 200.0);
            cfg.mu = 6;
            cfg.outputs = vec![Output::PrClosed];
            simulate(&cfg)
        }
        3 => {
            let mut cfg = base(opts, MachineKind::Chain, 200.0);
            cfg.mu = 6;
            cfg.sites = 129;
            cfg.outputs = vec![Output::PrExact, Output::PrClosed];
            simulate(&cfg)
        }
        7 => {
            let mut cfg = base(opts, MachineKind::Subroutine, 700.0);
            cfg.mu = 6;
            cfg.counter_bits = 6;
            cfg.outputs = vec![Output::PrExact, Output::PrClosed];
            simulate(&cfg)
        }
        11 => {
            let mut cfg = base(opts, MachineKind::Ccnot, 30.0);
            cfg.outputs = vec![Output::FinalSite];
            let sim = simulate(&cfg)?;
            let t_len = cnot_path_length(2);
            let mut table = Table::new(vec![
                Column::value("t"),
                Column::probability("completion"),
                Column::probability("chain"),
            ]);
            for r in sim.rows() {
                let c = chain_amplitude(r[0], t_len, t_len, cfg.lambda)?.norm_sqr();
                table.push(vec![r[0], r[1], c])?;
            }
            Ok(table)
        }
        13 => {
            let cfg = full_machine(opts, SwitchVariant::RaiseLower, vec![Output::Counter(1)]);
            renamed(simulate(&cfg)?, &["t", "rho3_1"])
        }
        14 => {
            let cfg = full_machine(
                opts,
                SwitchVariant::RaiseLower,
                vec![Output::Cursor, Output::PathIndex],
            );
            simulate(&cfg)
        }
        15 => {
            let cfg = full_machine(opts, SwitchVariant::RaiseLower, vec![Output::Completed]);
            let bound = completion_peak(full_machine_path_length(3, 1), cfg.lambda)?;
            let sim = simulate(&cfg)?;
            let mut table = Table::new(vec![
                Column::value("t"),
                Column::probability("completed"),
                Column::probability("bound"),
            ]);
            for r in sim.rows() {
                table.push(vec![r[0], r[1], bound])?;
            }
            Ok(table)
        }
        16 => simulate(&full_machine(
            opts,
            SwitchVariant::RaiseLower,
            vec![Output::Register, Output::Completed],
        )),
        17 => simulate(&full_machine(
            opts,
            SwitchVariant::Projector,
            vec![Output::Register, Output::Completed],
        )),
        other => bail!(
            "no curve for figure {other}; supported: {}",
            FIGURE_IDS.map(|i| i.to_string()).join(", ")
        ),
    }
}

/// Writes `fig<id>.csv` into `dir` and returns its path.
pub fn write_figure(id: u32, opts: &FigureOptions, dir: &Path) -> Result<PathBuf> {
    let table = figure_table(id, opts)?;
    let path = dir.join(format!("fig{id}.csv"));
    table.write(&path)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn short() -> FigureOptions {
        FigureOptions {
            t_max: Some(2.0),
            step: Some(0.5),
            ..FigureOptions::default()
        }
    }

    #[test]
    fn headers() {
        let names = |id| -> Vec<String> {
            figure_table(id, &short())
                .unwrap()
                .columns()
                .iter()
                .map(|c| c.name.clone())
                .collect()
        };
        assert_eq!(names(1), ["t", "pr_closed"]);
        assert_eq!(names(3), ["t", "pr_exact", "pr_closed"]);
        assert_eq!(names(7), ["t", "pr_exact", "pr_closed"]);
        assert_eq!(names(11), ["t", "completion", "chain"]);
    }

    #[test]
    fn ccnot_matches_six_site_walk() {
        let t = figure_table(11, &FigureOptions::default()).unwrap();
        for r in t.rows() {
            assert!((r[1] - r[2]).abs() < 1e-10, "{r:?}");
        }
    }

    #[test]
    fn unknown_figure() {
        for id in [0, 2, 5, 12, 18] {
            assert!(figure_table(id, &short()).is_err());
        }
    }
}
