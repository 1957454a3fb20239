//! x-consistent out-splitting.
//!
//! Each round takes the heaviest state that admits a split, moves a subset of
//! its outgoing label groups to a new state, and copies every edge that
//! entered the old state onto the new one. Edges sharing a label always move
//! together, so the two halves of a split have disjoint outgoing label sets.
//! Duplicate labels out of a state therefore point at states whose own
//! outgoing labels are disjoint, and one block of lookahead resolves them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::shift::{ConstraintGraph, Edge};
use crate::symbol::Word;

use super::eigen::ApproxEigenvector;

/// Output of [`split_states`].
#[derive(Debug, Clone)]
pub struct SplitOutcome {
    pub graph: ConstraintGraph,
    pub rounds: usize,
}

struct LabelGroup {
    label: Word,
    weight: u64,
}

/// Splits states until every weight is 1.
pub fn split_states(g: &ConstraintGraph, x: &ApproxEigenvector) -> Result<SplitOutcome> {
    if !x.is_certificate_for(&g.adjacency()) {
        return Err(Error::SplittingFailed(format!(
            "{:?} is not a 2^{} approximate eigenvector",
            x.weights, x.p
        )));
    }
    let (mut origins, mut edges, mut weights) = drop_weightless(g, &x.weights);
    let block = 1u64 << x.p;
    let mut rounds = 0;

    loop {
        let mut candidates: Vec<usize> = (0..weights.len()).filter(|&s| weights[s] > 1).collect();
        if candidates.is_empty() {
            break;
        }
        candidates.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));

        let split = candidates.iter().find_map(|&u| {
            let groups = label_groups(&edges, &weights, u);
            choose_split(&groups, weights[u], block).map(|(moved, y)| (u, moved, y))
        });
        let Some((u, moved, y)) = split else {
            return Err(Error::SplittingFailed(format!(
                "no label-respecting partition exists for weights {weights:?}"
            )));
        };

        let v = weights.len();
        weights[u] -= y;
        weights.push(y);
        origins.push(origins[u]);
        let mut next = Vec::with_capacity(edges.len() * 2);
        for e in edges {
            let from = if e.from == u && moved.contains(&e.label) { v } else { e.from };
            if e.to == u {
                next.push(Edge { from, to: u, label: e.label.clone() });
                next.push(Edge { from, to: v, label: e.label });
            } else {
                next.push(Edge { from, ..e });
            }
        }
        edges = next;
        rounds += 1;
    }

    let graph = ConstraintGraph::from_parts(g.q(), origins, edges);
    for s in 0..graph.num_states() {
        let degree = graph.out_degree(s);
        if (degree as u64) < block {
            return Err(Error::SplittingFailed(format!(
                "state {s} ended with out-degree {degree} < {block}"
            )));
        }
    }
    Ok(SplitOutcome { graph, rounds })
}

type Parts = (Vec<crate::shift::BaseState>, Vec<Edge>, Vec<u64>);

/// Removes zero-weight states and their edges, renumbering the rest.
fn drop_weightless(g: &ConstraintGraph, weights: &[u64]) -> Parts {
    let mut remap = vec![None; weights.len()];
    let mut origins = Vec::new();
    let mut kept = Vec::new();
    for (s, &w) in weights.iter().enumerate() {
        if w > 0 {
            remap[s] = Some(origins.len());
            origins.push(g.origin(s));
            kept.push(w);
        }
    }
    let edges = g
        .edges()
        .iter()
        .filter_map(|e| {
            Some(Edge { from: remap[e.from]?, to: remap[e.to]?, label: e.label.clone() })
        })
        .collect();
    (origins, edges, kept)
}

/// Outgoing label groups of `u`, heaviest first, ties by label.
fn label_groups(edges: &[Edge], weights: &[u64], u: usize) -> Vec<LabelGroup> {
    let mut by_label: BTreeMap<&Word, u64> = BTreeMap::new();
    for e in edges.iter().filter(|e| e.from == u) {
        *by_label.entry(&e.label).or_default() += weights[e.to];
    }
    let mut groups: Vec<LabelGroup> = by_label
        .into_iter()
        .map(|(label, weight)| LabelGroup { label: label.clone(), weight })
        .collect();
    groups.sort_by(|a, b| b.weight.cmp(&a.weight).then_with(|| a.label.cmp(&b.label)));
    groups
}

/// Picks groups to move to a new state of weight `y`, leaving weight
/// `w - y` behind. Both sides need at least `block` edge weight per unit.
/// Smallest `y` first, then the smallest qualifying subset sum.
fn choose_split(groups: &[LabelGroup], w: u64, block: u64) -> Option<(Vec<Word>, u64)> {
    let total: u64 = groups.iter().map(|g| g.weight).sum();
    for y in 1..w {
        let lo = block * y;
        let Some(hi) = total.checked_sub(block * (w - y)) else { continue };
        if lo > hi {
            continue;
        }
        if let Some(chosen) = subset_with_sum_in(groups, lo, hi) {
            let moved = chosen.into_iter().map(|i| groups[i].label.clone()).collect();
            return Some((moved, y));
        }
    }
    None
}

/// 0/1 knapsack over group weights; returns indices of a subset whose sum is
/// the least reachable value in `[lo, hi]`.
fn subset_with_sum_in(groups: &[LabelGroup], lo: u64, hi: u64) -> Option<Vec<usize>> {
    let hi = hi as usize;
    // reach[s] = (group index, previous sum) of the first way to reach s
    let mut reach: Vec<Option<(usize, usize)>> = vec![None; hi + 1];
    let mut reached = vec![false; hi + 1];
    reached[0] = true;
    for (i, g) in groups.iter().enumerate() {
        let w = g.weight as usize;
        if w == 0 || w > hi {
            continue;
        }
        for s in (w..=hi).rev() {
            if !reached[s] && reached[s - w] {
                reached[s] = true;
                reach[s] = Some((i, s - w));
            }
        }
    }
    let target = (lo as usize..=hi).find(|&s| reached[s])?;
    let mut chosen = Vec::new();
    let mut s = target;
    while s > 0 {
        let (i, prev) = reach[s].expect("reached sums have a parent");
        chosen.push(i);
        s = prev;
    }
    chosen.reverse();
    Some(chosen)
}
