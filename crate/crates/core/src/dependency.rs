//! Dependency DAGs over circuit operations and their depth/width metrics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::Circuit;

/// Which pairs of operations must keep their relative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DependencyRule {
    /// Every operation waits for the previous one.
    Serial,
    /// Operations sharing a qubit keep their order.
    Trivial,
    /// Anticommuting operations keep their order.
    General,
}

impl DependencyRule {
    pub const ALL: [DependencyRule; 3] = [
        DependencyRule::Serial,
        DependencyRule::Trivial,
        DependencyRule::General,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DependencyRule::Serial => "serial",
            DependencyRule::Trivial => "trivial",
            DependencyRule::General => "general",
        }
    }
}

impl fmt::Display for DependencyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DependencyRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DependencyRule::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Validation(format!("unknown dependency rule {s:?}")))
    }
}

/// DAG whose nodes are operation positions `0..m` in a circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyGraph {
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
}

impl DependencyGraph {
    pub fn empty(num_nodes: usize) -> Self {
        DependencyGraph {
            preds: vec![Vec::new(); num_nodes],
            succs: vec![Vec::new(); num_nodes],
        }
    }

    /// Graph with explicit arcs; no acyclicity check is made here.
    pub fn from_arcs(num_nodes: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(num_nodes);
        for &(i, j) in arcs {
            if i >= num_nodes || j >= num_nodes {
                return Err(Error::Validation(format!("arc ({i}, {j}) out of range")));
            }
            g.add_arc(i, j);
        }
        Ok(g)
    }

    fn add_arc(&mut self, i: usize, j: usize) {
        self.preds[j].push(i);
        self.succs[i].push(j);
    }

    pub fn num_nodes(&self) -> usize {
        self.preds.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.preds.iter().map(Vec::len).sum()
    }

    pub fn predecessors(&self, j: usize) -> &[usize] {
        &self.preds[j]
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succs[i]
    }

    /// All arcs, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> = self
            .succs
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
            .collect();
        arcs.sort_unstable();
        arcs
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.num_nodes())
            .filter(|&j| self.preds[j].is_empty())
            .collect()
    }
}

/// Marks every not-yet-marked ancestor of `start`, skipping nodes below
/// `floor` (they can no longer matter to the caller).
fn mark_ancestors(
    g: &DependencyGraph,
    start: usize,
    floor: usize,
    mark: &mut [u32],
    stamp: u32,
    stack: &mut Vec<usize>,
) {
    stack.push(start);
    while let Some(u) = stack.pop() {
        for &p in &g.preds[u] {
            if p >= floor && mark[p] != stamp {
                mark[p] = stamp;
                stack.push(p);
            }
        }
    }
}

/// Builds the transitively reduced dependency graph of `c` under `rule`.
///
/// For each operation the earlier operations it conflicts with are visited
/// latest first. A conflicting operation that is not already an ancestor
/// gets an arc, and its ancestors are then marked so that no redundant arc
/// is added.
pub fn build_dependency(c: &Circuit, rule: DependencyRule) -> DependencyGraph {
    let ops = c.ops();
    let m = ops.len();
    let mut g = DependencyGraph::empty(m);
    if rule == DependencyRule::Serial {
        for j in 1..m {
            g.add_arc(j - 1, j);
        }
        return g;
    }
    let mut mark = vec![0u32; m];
    let mut stack = Vec::new();
    let mut last_on_qubit: Vec<Option<usize>> = vec![None; c.num_qubits()];
    let mut candidates = Vec::new();
    for j in 0..m {
        let stamp = j as u32 + 1;
        match rule {
            DependencyRule::General => {
                for i in (0..j).rev() {
                    if mark[i] == stamp || ops[i].pauli.commutes_unchecked(&ops[j].pauli) {
                        continue;
                    }
                    g.add_arc(i, j);
                    mark_ancestors(&g, i, 0, &mut mark, stamp, &mut stack);
                }
            }
            DependencyRule::Trivial => {
                // any earlier op on a shared qubit is an ancestor of (or is)
                // the last op on that qubit
                let support = ops[j].pauli.support();
                candidates.clear();
                candidates.extend(support.iter().filter_map(|&q| last_on_qubit[q]));
                candidates.sort_unstable_by(|a, b| b.cmp(a));
                candidates.dedup();
                let floor = candidates.last().copied().unwrap_or(0);
                for &i in &candidates {
                    if mark[i] == stamp {
                        continue;
                    }
                    g.add_arc(i, j);
                    mark_ancestors(&g, i, floor, &mut mark, stamp, &mut stack);
                }
                for q in support {
                    last_on_qubit[q] = Some(j);
                }
            }
            DependencyRule::Serial => unreachable!(),
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphMetrics {
    /// Depth of each node, 1 for roots.
    pub depths: Vec<usize>,
    pub max_depth: usize,
    /// `widths[d - 1]` nodes sit at depth `d`.
    pub widths: Vec<usize>,
    /// Nodes per level, `|nodes| / max_depth`.
    pub average_width: f64,
}

/// Longest-path depths from the roots. Fails on a cycle.
pub fn graph_metrics(g: &DependencyGraph) -> Result<GraphMetrics> {
    let n = g.num_nodes();
    let mut indeg: Vec<usize> = (0..n).map(|j| g.preds[j].len()).collect();
    let mut depths = vec![1usize; n];
    let mut queue: Vec<usize> = (0..n).filter(|&j| indeg[j] == 0).collect();
    let mut seen = 0;
    while let Some(u) = queue.pop() {
        seen += 1;
        for &v in &g.succs[u] {
            depths[v] = depths[v].max(depths[u] + 1);
            indeg[v] -= 1;
            if indeg[v] == 0 {
                queue.push(v);
            }
        }
    }
    if seen != n {
        return Err(Error::Invariant("dependency graph contains a cycle".into()));
    }
    let max_depth = depths.iter().copied().max().unwrap_or(0);
    let mut widths = vec![0; max_depth];
    for &d in &depths {
        widths[d - 1] += 1;
    }
    let average_width = if max_depth == 0 {
        0.0
    } else {
        n as f64 / max_depth as f64
    };
    Ok(GraphMetrics {
        depths,
        max_depth,
        widths,
        average_width,
    })
}
