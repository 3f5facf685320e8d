//! Machines, start states and observable series for a [`ScenarioConfig`].

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use cursorq_core::evolve::{
    assemble, expectation_counter, expectation_cursor, logical_chain, prob_completed_target,
    prob_register_target, Evolver, LogicalChain, SectorBasis, SectorState, SparseHamiltonian,
};
use cursorq_core::pathspec::{
    build_cnot_network, build_full_machine, build_linear_chain, build_subroutine_machine,
    cnot_path_length, full_machine_path_length, path_length, Axis, CursorGraph,
};
use cursorq_core::spinops::{RegisterVector, TargetWord};
use cursorq_core::walkdyn::{pr_closed_chain, pr_closed_subroutine, ExactPr, TimeGrid};

use crate::config::{MachineKind, Output, ScenarioConfig};
use crate::csv::{Column, Table};

pub fn build_graph(cfg: &ScenarioConfig) -> Result<CursorGraph> {
    let mu = cfg.register_mu();
    let g = match cfg.machine {
        MachineKind::Chain => build_linear_chain(mu, cfg.sites)?,
        MachineKind::Subroutine => build_subroutine_machine(mu, cfg.counter_bits)?,
        MachineKind::Cnot | MachineKind::Ccnot => build_cnot_network(mu, Axis::Z, cfg.variant)?,
        MachineKind::Full => build_full_machine(mu, cfg.counter_bits, cfg.variant)?,
    };
    Ok(g)
}

/// Logical path length the machine is built to have.
pub fn expected_path_len(cfg: &ScenarioConfig) -> usize {
    let mu = cfg.register_mu();
    match cfg.machine {
        MachineKind::Chain => cfg.sites,
        MachineKind::Subroutine => path_length(cfg.counter_bits),
        MachineKind::Cnot | MachineKind::Ccnot => cnot_path_length(mu),
        MachineKind::Full => full_machine_path_length(mu, cfg.counter_bits),
    }
}

fn word_index(w: &[i8]) -> usize {
    w.iter()
        .enumerate()
        .map(|(i, &v)| if v < 0 { 1usize << i } else { 0 })
        .sum()
}

/// Grover initial condition, or the configured z-basis input word on a
/// c^μNOT network.
pub fn start_state(cfg: &ScenarioConfig, basis: SectorBasis) -> Result<SectorState> {
    Ok(match cfg.machine {
        MachineKind::Cnot | MachineKind::Ccnot => {
            let reg = RegisterVector::basis(cfg.register_mu(), word_index(&cfg.input_word()))?;
            SectorState::product(basis, &reg, 1, 0)?
        }
        _ => SectorState::grover_initial(basis)?,
    })
}

pub fn check_cap(h: &SparseHamiltonian, cap: usize) -> Result<()> {
    if h.dim() > cap {
        bail!(
            "sector dimension {} exceeds the cap {cap} (raise it with cap=<n>)",
            h.dim()
        );
    }
    Ok(())
}

/// Evaluates `f` at every grid point on the rayon pool; rows come back in
/// grid order.
pub fn sample<F>(grid: &TimeGrid, f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64) -> Result<Vec<f64>> + Sync,
{
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let t = grid.point(i);
            let mut row = vec![t];
            row.extend(f(t)?);
            Ok(row)
        })
        .collect()
}

pub fn table_from(columns: Vec<Column>, rows: Vec<Vec<f64>>) -> Result<Table> {
    let mut table = Table::new(columns);
    for r in rows {
        table.push(r)?;
    }
    Ok(table)
}

/// `Σ_j j |⟨φ_j|ψ⟩|²`.
pub fn path_index(chain: &LogicalChain, psi: &SectorState) -> Result<f64> {
    Ok(chain
        .overlaps(psi)?
        .iter()
        .enumerate()
        .map(|(j, c)| (j + 1) as f64 * c.norm_sqr())
        .sum())
}

/// Weight of the cursor on the last site.
pub fn final_site_weight(psi: &SectorState) -> f64 {
    let b = psi.basis();
    psi.amplitudes()[b.site_range(b.sites())]
        .iter()
        .map(|z| z.norm_sqr())
        .sum()
}

struct SectorRun<'e, 'h> {
    h: &'h SparseHamiltonian,
    target: TargetWord,
    traj: cursorq_core::evolve::Trajectory<'e, 'h>,
    chain: Option<LogicalChain>,
}

fn sector_value(run: &SectorRun<'_, '_>, psi: &SectorState, o: Output) -> Result<f64> {
    Ok(match o {
        Output::Cursor => expectation_cursor(psi),
        Output::PathIndex => path_index(run.chain.as_ref().expect("chain built"), psi)?,
        Output::Counter(k) => expectation_counter(psi, k)?,
        Output::Register => prob_register_target(psi, &run.target)?,
        Output::Completed => prob_completed_target(psi, &run.target)?,
        Output::FinalSite => final_site_weight(psi),
        Output::Norm => psi.norm_sqr(),
        Output::Energy => run.h.energy(psi.amplitudes())?,
        Output::PrExact | Output::PrClosed => unreachable!("reduced outputs"),
    })
}

/// Observable time series of a scenario, one column per output.
pub fn simulate(cfg: &ScenarioConfig) -> Result<Table> {
    cfg.validate()?;
    let outputs = cfg.effective_outputs();
    let grid = cfg.grid()?;
    let mu = cfg.register_mu();
    let exact = if outputs.contains(&Output::PrExact) {
        Some(match cfg.machine {
            MachineKind::Chain => ExactPr::chain(mu, cfg.sites, cfg.lambda)?,
            _ => ExactPr::subroutine(mu, cfg.counter_bits, cfg.lambda)?,
        })
    } else {
        None
    };
    let reduced = |o: Output, t: f64| -> Result<f64> {
        Ok(match (o, cfg.machine) {
            (Output::PrExact, _) => exact.as_ref().expect("built above").at(t)?,
            (Output::PrClosed, MachineKind::Chain) => pr_closed_chain(t, mu, cfg.lambda)?,
            (Output::PrClosed, _) => pr_closed_subroutine(t, mu, cfg.lambda)?,
            _ => unreachable!("sector outputs"),
        })
    };

    let mut columns = vec![Column::value("t")];
    for o in &outputs {
        columns.push(if o.is_probability() {
            Column::probability(o.column())
        } else {
            Column::value(o.column())
        });
    }

    let rows = if outputs.iter().any(Output::needs_sector) {
        let graph = build_graph(cfg)?;
        let target = cfg.target_word()?;
        let h = assemble(&graph, &target, cfg.lambda)?;
        check_cap(&h, cfg.cap)?;
        let psi0 = start_state(cfg, *h.basis())?;
        let chain = if outputs.contains(&Output::PathIndex) {
            Some(logical_chain(&h, &psi0).context("building the logical path")?)
        } else {
            None
        };
        let ev = Evolver::new(&h)?;
        let run = SectorRun {
            h: &h,
            target,
            traj: ev.trajectory(&psi0)?,
            chain,
        };
        sample(&grid, |t| {
            let psi = run.traj.at(t)?;
            outputs
                .iter()
                .map(|&o| {
                    if o.needs_sector() {
                        sector_value(&run, &psi, o)
                    } else {
                        reduced(o, t)
                    }
                })
                .collect()
        })?
    } else {
        sample(&grid, |t| outputs.iter().map(|&o| reduced(o, t)).collect())?
    };
    table_from(columns, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(pairs: &[(&str, &str)]) -> ScenarioConfig {
        let p: Vec<(String, String)> =
            pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        ScenarioConfig::load(None, &p).unwrap()
    }

    #[test]
    fn chain_register_column_matches_reduced_formula() {
        let c = cfg(&[("outputs", "register,pr_exact,norm"), ("t_max", "10")]);
        let t = simulate(&c).unwrap();
        for row in t.rows() {
            assert!((row[1] - row[2]).abs() < 1e-10, "{row:?}");
            assert!((row[3] - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn reduced_outputs_skip_the_sector() {
        // μ = 6, s = 129 has d = 16512; only reduced columns are asked for
        let c = cfg(&[
            ("mu", "6"),
            ("s", "129"),
            ("outputs", "pr_exact,pr_closed"),
            ("t_max", "2"),
            ("cap", "10"),
        ]);
        assert_eq!(simulate(&c).unwrap().rows().len(), 9);
        let c = cfg(&[("mu", "6"), ("s", "129"), ("outputs", "cursor"), ("cap", "10")]);
        assert!(simulate(&c).is_err());
    }

    #[test]
    fn cnot_completion_and_path_index() {
        let c = cfg(&[
            ("machine", "ccnot"),
            ("input", "++-"),
            ("outputs", "final_site,path_index,cursor"),
            ("t_max", "3"),
        ]);
        assert_eq!(expected_path_len(&c), 6);
        let t = simulate(&c).unwrap();
        let r0 = &t.rows()[0];
        assert!(r0[1] < 1e-12 && (r0[2] - 1.0).abs() < 1e-12 && (r0[3] - 1.0).abs() < 1e-12);
        assert!(t.rows().iter().all(|r| r[1] <= 1.0 && r[2] >= 1.0 - 1e-12));
    }

    #[test]
    fn full_machine_defaults() {
        let c = cfg(&[("machine", "full"), ("mu", "2"), ("K", "0"), ("t_max", "1")]);
        let t = simulate(&c).unwrap();
        let names: Vec<&str> = t.columns().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["t", "cursor", "register", "completed"]);
        assert_eq!(build_graph(&c).unwrap().sites(), 23);
        assert_eq!(expected_path_len(&c), 11);
    }
}
