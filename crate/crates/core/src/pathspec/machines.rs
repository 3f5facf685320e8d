//! Compilers from the Grover machine families to cursor graphs.
//!
//! Sites are numbered in place while the recursive definitions are
//! expanded left to right: a sub-network occupies a contiguous block of
//! sites whose first site is its entry and whose last site is its exit,
//! and the sites after it are shifted accordingly.

use alloc::format;
use alloc::vec::Vec;

use super::graph::{Axis, CursorGraph, Edge, EdgeLabel, SwitchVariant};
use crate::error::{Error, Result};
use crate::spinops::check_mu;

/// Largest supported number of subroutine counter spins.
pub const MAX_COUNTER_BITS: usize = 16;

pub(crate) fn check_counter(k: usize) -> Result<()> {
    if k > MAX_COUNTER_BITS {
        return Err(Error::OutOfRange {
            what: "counter width K",
            value: k as i64,
            lo: 0,
            hi: MAX_COUNTER_BITS as i64,
        });
    }
    Ok(())
}

/// Sites of a c^μNOT network, `(μ + 1)(μ + 2)`.
pub fn cnot_sites(mu: usize) -> usize {
    (mu + 1) * (mu + 2)
}

/// Length (number of states) of every computational path through a c^μNOT
/// network, `2(μ + 1)`.
pub fn cnot_path_length(mu: usize) -> usize {
    2 * (mu + 1)
}

/// Sites of the subroutine machine, `4K + 3`.
pub fn subroutine_sites(k: usize) -> usize {
    4 * k + 3
}

/// Sites of the full local machine: two c^μNOT networks sharing one site,
/// plus four handle sites per counter spin.
pub fn full_machine_sites(mu: usize, k: usize) -> usize {
    2 * cnot_sites(mu) - 1 + 4 * k
}

/// Logical path length of the full local machine started from the Grover
/// initial condition: each of the `2^K` oracle and estimator passes of the
/// subroutine path is stretched from one hop to `T_μ - 1` hops.
pub fn full_machine_path_length(mu: usize, k: usize) -> usize {
    super::schedule::path_length(k) + (1usize << k) * 2 * (cnot_path_length(mu) - 2)
}

#[derive(Clone, Copy)]
enum Block {
    /// `A` and `B` as single many-body links.
    Primitive,
    /// `A` and `B` as local c^μNOT networks.
    Local(SwitchVariant),
}

#[derive(Default)]
struct Builder {
    edges: Vec<Edge>,
}

impl Builder {
    fn push(&mut self, from: usize, to: usize, label: EdgeLabel) {
        self.edges.push(Edge { from, to, label });
    }

    /// Emits c^{level}NOT on `entry ..= entry + s_level - 1` controlled by
    /// qubits `1..=level` and returns its exit site. Level 0 is the bare
    /// output NOT.
    fn cnot(&mut self, entry: usize, level: usize, axis: Axis, variant: SwitchVariant) -> usize {
        if level == 0 {
            self.push(entry, entry + 1, EdgeLabel::NotOutput);
            return entry + 1;
        }
        let inner_sites = cnot_sites(level - 1);
        let delay = cnot_path_length(level - 1);
        let exit = entry + cnot_sites(level) - 1;
        let q = level;
        let (upper_in, upper_out, lower_in, lower_out) = match variant {
            SwitchVariant::RaiseLower => (
                EdgeLabel::SwitchLower { qubit: q, axis },
                EdgeLabel::SwitchRaise { qubit: q, axis },
                EdgeLabel::SwitchRaise { qubit: q, axis },
                EdgeLabel::SwitchLower { qubit: q, axis },
            ),
            SwitchVariant::Projector => (
                EdgeLabel::ProjectorPlus { qubit: q, axis },
                EdgeLabel::ProjectorPlus { qubit: q, axis },
                EdgeLabel::ProjectorMinus { qubit: q, axis },
                EdgeLabel::ProjectorMinus { qubit: q, axis },
            ),
        };

        self.push(entry, entry + 1, upper_in);
        let inner_exit = self.cnot(entry + 1, level - 1, axis, variant);
        debug_assert_eq!(inner_exit, entry + inner_sites);
        self.push(inner_exit, exit, upper_out);
        self.push(entry, inner_exit + 1, lower_in);
        for k in 1..delay {
            self.push(inner_exit + k, inner_exit + k + 1, EdgeLabel::Delay);
        }
        self.push(inner_exit + delay, exit, lower_out);
        exit
    }

    /// One application of `BA` starting at `entry`; returns the exit site.
    fn grover_block(&mut self, entry: usize, mu: usize, block: Block) -> usize {
        match block {
            Block::Primitive => {
                self.push(entry, entry + 1, EdgeLabel::OracleA);
                self.push(entry + 1, entry + 2, EdgeLabel::EstimatorB);
                entry + 2
            }
            Block::Local(variant) => {
                let mid = self.cnot(entry, mu, Axis::TwistedZ, variant);
                self.cnot(mid, mu, Axis::X, variant)
            }
        }
    }

    /// `h_level(i, ·)`: applies `BA` `2^level` times using counter spins
    /// `1..=level`; returns the last site.
    fn subroutine(&mut self, i: usize, level: usize, mu: usize, block: Block) -> usize {
        if level == 0 {
            return self.grover_block(i, mu, block);
        }
        self.push(i, i + 1, EdgeLabel::CounterRaise(level));
        self.push(i + 1, i + 2, EdgeLabel::CounterX(level));
        let end = self.subroutine(i + 2, level - 1, mu, block);
        self.push(end, end + 2, EdgeLabel::CounterLower(level));
        self.push(end, end + 1, EdgeLabel::CounterRaise(level));
        // loop-back handle
        self.push(end + 1, i + 1, EdgeLabel::CounterLower(level));
        end + 2
    }
}

/// Linear chain of `s` sites; odd links carry `A`, even links `B`.
pub fn build_linear_chain(mu: usize, s: usize) -> Result<CursorGraph> {
    check_mu(mu)?;
    if s == 0 {
        return Err(Error::InvalidParameter(format!("chain length s = {s} must be >= 1")));
    }
    let edges = (1..s)
        .map(|j| Edge {
            from: j,
            to: j + 1,
            label: if j % 2 == 1 {
                EdgeLabel::OracleA
            } else {
                EdgeLabel::EstimatorB
            },
        })
        .collect();
    CursorGraph::new(s, mu, 0, edges)
}

/// Subroutine machine applying `BA` `2^K` times with `K` counter spins on
/// `4K + 3` cursor sites.
pub fn build_subroutine_machine(mu: usize, k: usize) -> Result<CursorGraph> {
    check_mu(mu)?;
    check_counter(k)?;
    let mut b = Builder::default();
    let last = b.subroutine(1, k, mu, Block::Primitive);
    debug_assert_eq!(last, subroutine_sites(k));
    CursorGraph::new(last, mu, k, b.edges)
}

/// Local c^μNOT network on `(μ + 1)(μ + 2)` sites flipping the output qubit
/// iff every control `1..=μ` is "up" along `axis`.
pub fn build_cnot_network(mu: usize, axis: Axis, variant: SwitchVariant) -> Result<CursorGraph> {
    check_mu(mu)?;
    let mut b = Builder::default();
    let last = b.cnot(1, mu, axis, variant);
    debug_assert_eq!(last, cnot_sites(mu));
    CursorGraph::new(last, mu, 0, b.edges)
}

/// Subroutine skeleton with its `A` link replaced by an `a`-twisted
/// c^μNOT network and its `B` link by an x-basis one.
pub fn build_full_machine(mu: usize, k: usize, variant: SwitchVariant) -> Result<CursorGraph> {
    check_mu(mu)?;
    check_counter(k)?;
    let mut b = Builder::default();
    let last = b.subroutine(1, k, mu, Block::Local(variant));
    debug_assert_eq!(last, full_machine_sites(mu, k));
    CursorGraph::new(last, mu, k, b.edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use EdgeLabel::*;

    fn triples(g: &CursorGraph) -> Vec<(usize, usize, EdgeLabel)> {
        g.edges().iter().map(|e| (e.from, e.to, e.label)).collect()
    }

    #[test]
    fn chain_alternates_oracle_and_estimator() {
        let g = build_linear_chain(2, 3).unwrap();
        assert_eq!(triples(&g), vec![(1, 2, OracleA), (2, 3, EstimatorB)]);
        assert!(build_linear_chain(2, 1).unwrap().edges().is_empty());
        assert_eq!(build_linear_chain(6, 129).unwrap().edges().len(), 128);
        assert!(build_linear_chain(2, 0).is_err());
    }

    #[test]
    fn subroutine_base_and_first_step() {
        let g0 = build_subroutine_machine(2, 0).unwrap();
        assert_eq!(g0.sites(), 3);
        assert_eq!(triples(&g0), vec![(1, 2, OracleA), (2, 3, EstimatorB)]);

        // h_1(1, 7) expanded by hand
        let g1 = build_subroutine_machine(2, 1).unwrap();
        assert_eq!(g1.sites(), 7);
        assert_eq!(
            triples(&g1),
            vec![
                (1, 2, CounterRaise(1)),
                (2, 3, CounterX(1)),
                (3, 4, OracleA),
                (4, 5, EstimatorB),
                (5, 7, CounterLower(1)),
                (5, 6, CounterRaise(1)),
                (6, 2, CounterLower(1)),
            ]
        );
        for k in 0..=6 {
            assert_eq!(build_subroutine_machine(1, k).unwrap().sites(), 4 * k + 3);
        }
    }

    #[test]
    fn single_control_network_matches_streamlined_term_list() {
        let g = build_cnot_network(1, Axis::Z, SwitchVariant::RaiseLower).unwrap();
        assert_eq!(g.sites(), 6);
        let z = Axis::Z;
        assert_eq!(
            triples(&g),
            vec![
                (1, 2, SwitchLower { qubit: 1, axis: z }),
                (2, 3, NotOutput),
                (3, 6, SwitchRaise { qubit: 1, axis: z }),
                (1, 4, SwitchRaise { qubit: 1, axis: z }),
                (4, 5, Delay),
                (5, 6, SwitchLower { qubit: 1, axis: z }),
            ]
        );
    }

    #[test]
    fn toffoli_network_layout() {
        let g = build_cnot_network(2, Axis::Z, SwitchVariant::RaiseLower).unwrap();
        assert_eq!(g.sites(), 12);
        let t = triples(&g);
        // controls flipped on links (1,2), (2,3); NOT on (3,4)
        assert_eq!(t[0], (1, 2, SwitchLower { qubit: 2, axis: Axis::Z }));
        assert_eq!(t[1], (2, 3, SwitchLower { qubit: 1, axis: Axis::Z }));
        assert_eq!(t[2], (3, 4, NotOutput));
        let delays: Vec<_> = t.iter().filter(|e| e.2 == Delay).map(|e| (e.0, e.1)).collect();
        assert_eq!(delays, vec![(5, 6), (8, 9), (9, 10), (10, 11)]);
    }

    #[test]
    fn network_sizes_follow_recurrence() {
        for mu in 1..=5 {
            let g = build_cnot_network(mu, Axis::X, SwitchVariant::Projector).unwrap();
            assert_eq!(g.sites(), (mu + 1) * (mu + 2));
            assert_eq!(g.sites(), 2 + cnot_sites(mu - 1) + cnot_path_length(mu - 1));
        }
    }

    #[test]
    fn projector_variant_never_flips_controls() {
        let g = build_cnot_network(3, Axis::TwistedZ, SwitchVariant::Projector).unwrap();
        assert!(g
            .edges()
            .iter()
            .all(|e| !matches!(e.label, SwitchLower { .. } | SwitchRaise { .. })));
    }

    #[test]
    fn full_machine_layout() {
        let g = build_full_machine(3, 1, SwitchVariant::RaiseLower).unwrap();
        assert_eq!(g.sites(), 43);
        let t = triples(&g);
        let nots: Vec<_> = t.iter().filter(|e| e.2 == NotOutput).map(|e| (e.0, e.1)).collect();
        assert_eq!(nots, vec![(6, 7), (25, 26)]);
        assert!(t.contains(&(1, 2, CounterRaise(1))));
        assert!(t.contains(&(41, 42, CounterRaise(1))));
        assert!(t.contains(&(41, 43, CounterLower(1))));
        assert!(t.contains(&(42, 2, CounterLower(1))));

        assert_eq!(build_full_machine(3, 0, SwitchVariant::RaiseLower).unwrap().sites(), 39);
        for (mu, k) in [(1, 0), (2, 2), (4, 3)] {
            assert_eq!(
                build_full_machine(mu, k, SwitchVariant::Projector).unwrap().sites(),
                full_machine_sites(mu, k)
            );
        }
    }

    #[test]
    fn primitive_block_reproduces_the_short_chain() {
        let mut b = Builder::default();
        let last = b.subroutine(1, 0, 2, Block::Primitive);
        let g = CursorGraph::new(last, 2, 0, b.edges).unwrap();
        assert_eq!(g, build_linear_chain(2, 3).unwrap());
    }
}
