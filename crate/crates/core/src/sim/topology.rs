//! Rooted broadcast trees and the topology file format.
//!
//! One node per line, `<node_id> <parent_id>`, with `-` as the root's parent.
//! Lines starting with `#` are comments. The root must have id 0.

use std::collections::{BTreeMap, VecDeque};

use crate::error::TopologyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeTopology {
    /// node ids in ascending order; index 0 is the root
    ids: Vec<u64>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    children: Vec<Vec<usize>>,
}

impl TreeTopology {
    /// Validates `(id, parent)` pairs and computes depths.
    pub fn from_parents(entries: &[(u64, Option<u64>)]) -> Result<Self, TopologyError> {
        if entries.is_empty() {
            return Err(TopologyError::Empty);
        }
        let mut parent_of: BTreeMap<u64, Option<u64>> = BTreeMap::new();
        for &(id, parent) in entries {
            if parent_of.insert(id, parent).is_some() {
                return Err(TopologyError::MultipleParents { node: id });
            }
        }
        let mut roots = parent_of.iter().filter(|(_, p)| p.is_none()).map(|(&id, _)| id);
        let root = roots.next();
        if let (Some(first), Some(second)) = (root, roots.next()) {
            return Err(TopologyError::MultipleRoots { first, second });
        }
        for (&id, parent) in &parent_of {
            if let Some(p) = parent {
                if !parent_of.contains_key(p) {
                    return Err(TopologyError::UnknownParent { node: id, parent: *p });
                }
            }
        }
        if let Some(node) = find_cycle(&parent_of) {
            return Err(TopologyError::Cycle { node });
        }
        // Acyclic with every parent known implies a root exists.
        let root = root.ok_or(TopologyError::Empty)?;
        if root != 0 {
            return Err(TopologyError::RootNotZero { found: root });
        }

        let ids: Vec<u64> = parent_of.keys().copied().collect();
        let index: BTreeMap<u64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let parent: Vec<Option<usize>> = parent_of.values().map(|p| p.map(|p| index[&p])).collect();
        let mut children = vec![Vec::new(); ids.len()];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(v);
            }
        }
        let mut depth = vec![0; ids.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &c in &children[v] {
                depth[c] = depth[v] + 1;
                queue.push_back(c);
            }
        }
        Ok(TreeTopology { ids, parent, depth, children })
    }

    /// A path `0 → 1 → … → depth`.
    pub fn chain(depth: usize) -> Self {
        let entries: Vec<(u64, Option<u64>)> = (0..=depth as u64)
            .map(|v| (v, v.checked_sub(1)))
            .collect();
        Self::from_parents(&entries).expect("a chain is a valid tree")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Maximum depth `D`.
    pub fn max_depth(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }
}

fn find_cycle(parent_of: &BTreeMap<u64, Option<u64>>) -> Option<u64> {
    // 0 = unvisited, 1 = on current walk, 2 = known to reach the root
    let mut mark: BTreeMap<u64, u8> = BTreeMap::new();
    for &start in parent_of.keys() {
        let mut walk = Vec::new();
        let mut at = Some(start);
        while let Some(v) = at {
            match mark.get(&v).copied().unwrap_or(0) {
                2 => break,
                1 => return Some(v),
                _ => {
                    mark.insert(v, 1);
                    walk.push(v);
                    at = parent_of[&v];
                }
            }
        }
        for v in walk {
            mark.insert(v, 2);
        }
    }
    None
}

/// Parses a topology file.
pub fn parse_tree(text: &str) -> Result<TreeTopology, TopologyError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || TopologyError::Malformed { line: i + 1, text: raw.to_string() };
        let mut tok = line.split_whitespace();
        let (Some(id), Some(parent), None) = (tok.next(), tok.next(), tok.next()) else {
            return Err(malformed());
        };
        let id: u64 = id.parse().map_err(|_| malformed())?;
        let parent = match parent {
            "-" => None,
            p => Some(p.parse().map_err(|_| malformed())?),
        };
        entries.push((id, parent));
    }
    TreeTopology::from_parents(&entries)
}

impl std::fmt::Display for TreeTopology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for v in 0..self.len() {
            match self.parent[v] {
                Some(p) => writeln!(f, "{} {}", self.ids[v], self.ids[p])?,
                None => writeln!(f, "{} -", self.ids[v])?,
            }
        }
        Ok(())
    }
}
