//! Slot-synchronous symbol forwarding over a tree of half-duplex relays.
//!
//! In slot `t` every node transmits its pending symbol. The source sends the
//! next symbol of its stream, or silence once the stream is exhausted. A relay
//! that is OFF hears its parent and forwards that symbol in slot `t+1`. A relay
//! that is ON hears nothing: its reception is erased and it goes silent in
//! slot `t+1`. The simulator never looks at the erased symbol.

mod topology;

use std::fmt;

use crate::encoder::{build_encoder, decode, encode};
use crate::error::Result;
use crate::shift::capacity;
use crate::symbol::{Alphabet, Bits, Symbol, Word};

pub use topology::{parse_tree, TreeTopology};

/// What a relay got from its parent in one slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reception {
    Heard(Symbol),
    Erased,
}

impl Reception {
    /// The symbol as the relay will forward it; an erasure forwards silence.
    pub fn as_forwarded(self) -> Symbol {
        match self {
            Reception::Heard(s) => s,
            Reception::Erased => Symbol::Silence,
        }
    }
}

/// A relay was ON while its parent sent data, so a data symbol was lost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation {
    pub slot: usize,
    pub node: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimTrace {
    ids: Vec<u64>,
    /// `transmitted[t][v]`
    transmitted: Vec<Vec<Symbol>>,
    /// `received[t][v]`; `None` for the root
    received: Vec<Vec<Option<Reception>>>,
    violations: Vec<Violation>,
}

impl SimTrace {
    pub fn slots(&self) -> usize {
        self.transmitted.len()
    }

    pub fn transmitted(&self, slot: usize, node: usize) -> Symbol {
        self.transmitted[slot][node]
    }

    pub fn received(&self, slot: usize, node: usize) -> Option<Reception> {
        self.received[slot][node]
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Everything `node` transmitted, slot by slot.
    pub fn transmit_stream(&self, node: usize) -> Word {
        Word::new(self.transmitted.iter().map(|row| row[node]).collect())
    }

    /// What `node` knows of the source stream, aligned to the slots in which
    /// it forwards it: silence in slot 0, then each reception one slot later
    /// with erasures read as silence. For the root this is its own stream.
    pub fn reconstructed(&self, node: usize) -> Word {
        if self.received.first().is_some_and(|row| row[node].is_none()) || self.slots() == 0 {
            return self.transmit_stream(node);
        }
        let mut out = Vec::with_capacity(self.slots());
        out.push(Symbol::Silence);
        out.extend(
            self.received[..self.slots() - 1]
                .iter()
                .map(|row| row[node].expect("relays always record a reception").as_forwarded()),
        );
        Word::new(out)
    }
}

impl fmt::Display for SimTrace {
    /// One line per slot: `t | id:sym id:sym …`, with `*` after the symbol
    /// of a node whose reception in that slot was erased.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, row) in self.transmitted.iter().enumerate() {
            write!(f, "{t} |")?;
            for (v, sym) in row.iter().enumerate() {
                let mark = if self.received[t][v] == Some(Reception::Erased) { "*" } else { "" };
                write!(f, " {}:{sym}{mark}", self.ids[v])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Runs `|source_stream| + extra_slots` slots of symbol forwarding.
pub fn simulate(topo: &TreeTopology, source_stream: &Word, extra_slots: usize) -> SimTrace {
    let nodes = topo.len();
    let slots = source_stream.len() + extra_slots;
    let admissible = source_stream.is_admissible();
    let mut pending = vec![Symbol::Silence; nodes];
    let mut transmitted = Vec::with_capacity(slots);
    let mut received = Vec::with_capacity(slots);
    let mut violations = Vec::new();

    for t in 0..slots {
        pending[0] = source_stream.symbols().get(t).copied().unwrap_or(Symbol::Silence);
        let tx = pending.clone();
        let mut rx = vec![None; nodes];
        for v in 1..nodes {
            let parent_tx = tx[topo.parent(v).expect("non-root has a parent")];
            if tx[v].is_data() {
                if parent_tx.is_data() {
                    // erasure-inference soundness: only inadmissible sources lose data
                    assert!(!admissible, "admissible source lost a symbol at slot {t}");
                    violations.push(Violation { slot: t, node: v });
                }
                rx[v] = Some(Reception::Erased);
                pending[v] = Symbol::Silence;
            } else {
                rx[v] = Some(Reception::Heard(parent_tx));
                pending[v] = parent_tx;
            }
        }
        transmitted.push(tx);
        received.push(rx);
    }
    SimTrace { ids: topo.ids().to_vec(), transmitted, received, violations }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeDelivery {
    pub id: u64,
    pub depth: usize,
    pub passed: bool,
    /// First slot where the reconstruction differs from the delayed source.
    pub first_mismatch: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeliveryReport {
    pub nodes: Vec<NodeDelivery>,
    pub violations: usize,
}

impl DeliveryReport {
    pub fn all_passed(&self) -> bool {
        self.nodes.iter().all(|n| n.passed)
    }

    pub fn failures(&self) -> usize {
        self.nodes.iter().filter(|n| !n.passed).count()
    }
}

impl fmt::Display for DeliveryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "violations: {}", self.violations)?;
        for n in &self.nodes {
            match n.first_mismatch {
                None => writeln!(f, "node {} depth {}: pass", n.id, n.depth)?,
                Some(t) => writeln!(f, "node {} depth {}: FAIL at slot {t}", n.id, n.depth)?,
            }
        }
        Ok(())
    }
}

/// Checks every node's reconstruction against the source delayed by the
/// node's depth, truncated to the simulated horizon.
pub fn verify_delivery(trace: &SimTrace, topo: &TreeTopology, source_stream: &Word) -> DeliveryReport {
    let horizon = trace.slots();
    let nodes = (0..topo.len())
        .map(|v| {
            let d = topo.depth(v);
            let got = trace.reconstructed(v);
            let expected = (0..horizon).map(|t| {
                t.checked_sub(d)
                    .and_then(|i| source_stream.symbols().get(i).copied())
                    .unwrap_or(Symbol::Silence)
            });
            let first_mismatch = got.symbols().iter().zip(expected).position(|(a, b)| *a != b);
            NodeDelivery { id: topo.id(v), depth: d, passed: first_mismatch.is_none(), first_mismatch }
        })
        .collect();
    DeliveryReport { nodes, violations: trace.violations().len() }
}

/// Rate of deterministic store-and-forward, `0.5·log2(q+1)`.
pub fn baseline_rate(q: u32) -> Result<f64> {
    let a = Alphabet::new(q)?;
    Ok(0.5 * (a.size() as f64).log2())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecovery {
    pub id: u64,
    pub depth: usize,
    pub recovered: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EndToEndReport {
    pub q: u32,
    pub p: u32,
    pub n: u32,
    pub rate: f64,
    pub capacity: f64,
    pub baseline: f64,
    pub message_bits: usize,
    pub stream_len: usize,
    pub slots: usize,
    pub violations: usize,
    pub nodes: Vec<NodeRecovery>,
}

impl EndToEndReport {
    pub fn all_recovered(&self) -> bool {
        self.nodes.iter().all(|n| n.recovered)
    }
}

impl fmt::Display for EndToEndReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q={} rate={}/{} = {:.6} b/sym", self.q, self.p, self.n, self.rate)?;
        writeln!(f, "capacity {:.6} b/sym, baseline {:.6} b/sym", self.capacity, self.baseline)?;
        writeln!(
            f,
            "{} bits -> {} symbols over {} slots, {} violations",
            self.message_bits, self.stream_len, self.slots, self.violations
        )?;
        for n in &self.nodes {
            let status = if n.recovered { "recovered" } else { "FAILED" };
            writeln!(f, "node {} depth {}: {status}", n.id, n.depth)?;
        }
        Ok(())
    }
}

/// Encodes `message`, broadcasts it through `topo`, and decodes it at every
/// node.
pub fn end_to_end(q: u32, p: u32, n: u32, topo: &TreeTopology, message: &Bits) -> Result<EndToEndReport> {
    let enc = build_encoder(q, p, n)?;
    let (stream, header) = encode(&enc, message);
    let trace = simulate(topo, &stream, topo.max_depth());
    let nodes = (0..topo.len())
        .map(|v| {
            let d = topo.depth(v);
            let seen = trace.reconstructed(v);
            let recovered = seen
                .symbols()
                .get(d..d + stream.len())
                .map(|s| Word::new(s.to_vec()))
                .and_then(|w| decode(&enc, &w, &header).ok())
                .is_some_and(|bits| bits == *message);
            NodeRecovery { id: topo.id(v), depth: d, recovered }
        })
        .collect();
    Ok(EndToEndReport {
        q,
        p,
        n,
        rate: enc.rate(),
        capacity: capacity(q)?,
        baseline: baseline_rate(q)?,
        message_bits: message.len(),
        stream_len: stream.len(),
        slots: trace.slots(),
        violations: trace.violations().len(),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn depth_two_pipeline() {
        let topo = TreeTopology::chain(2);
        let trace = simulate(&topo, &w("0 N 0 N N"), 2);
        assert_eq!(trace.slots(), 7);
        assert_eq!(trace.transmit_stream(2), w("N N 0 N 0 N N"));
        assert!(trace.violations().is_empty());
        assert_eq!(trace.reconstructed(2), trace.transmit_stream(2));
    }

    #[test]
    fn silent_source() {
        let topo = parse_tree("0 -\n1 0\n2 0\n3 1\n").unwrap();
        let trace = simulate(&topo, &Word::silence(6), 3);
        for t in 0..trace.slots() {
            for v in 0..topo.len() {
                assert_eq!(trace.transmitted(t, v), Symbol::Silence);
            }
        }
        assert!(trace.violations().is_empty());
    }

    #[test]
    fn consecutive_data_is_caught() {
        let topo = TreeTopology::chain(2);
        let src = w("0 0 N");
        let trace = simulate(&topo, &src, 2);
        assert!(trace.violations().contains(&Violation { slot: 1, node: 1 }));
        assert_eq!(trace.received(1, 1), Some(Reception::Erased));
        let report = verify_delivery(&trace, &topo, &src);
        assert!(report.violations >= 1);
        assert!(!report.all_passed());
        assert!(report.nodes[0].passed);
    }

    #[test]
    fn silent_parent_while_on_is_not_a_violation() {
        let topo = TreeTopology::chain(1);
        let trace = simulate(&topo, &w("0 N N"), 1);
        // relay is ON at slot 1 while the source is silent
        assert_eq!(trace.received(1, 1), Some(Reception::Erased));
        assert!(trace.violations().is_empty());
    }

    #[test]
    fn empty_stream_delivers_trivially() {
        let topo = TreeTopology::chain(3);
        let trace = simulate(&topo, &Word::empty(), 0);
        let report = verify_delivery(&trace, &topo, &Word::empty());
        assert!(report.all_passed());
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn trace_export() {
        let topo = TreeTopology::chain(1);
        let trace = simulate(&topo, &w("0 N"), 1);
        assert_eq!(trace.to_string(), "0 | 0:0 1:N\n1 | 0:N 1:0*\n2 | 0:N 1:N\n");
    }

    #[test]
    fn baseline_rates() {
        assert_eq!(baseline_rate(1).unwrap(), 0.5);
        assert_eq!(baseline_rate(3).unwrap(), 1.0);
        assert!((baseline_rate(6).unwrap() - 1.403_677_461).abs() < 1e-9);
        assert!(baseline_rate(0).is_err());
    }

    #[test]
    fn end_to_end_empty_message() {
        let topo = TreeTopology::chain(3);
        let report = end_to_end(1, 2, 3, &topo, &Bits::default()).unwrap();
        assert!(report.all_recovered());
        assert_eq!(report.stream_len, 0);
    }

    #[test]
    fn end_to_end_rejects_infeasible_rate() {
        let topo = TreeTopology::chain(1);
        assert!(end_to_end(1, 1, 1, &topo, &Bits::default()).is_err());
    }
}
