//! Exhaustive baselines for packing and scheduling on small layouts.
//!
//! A tree for one operation is determined, up to the choice of edges, by
//! its set `S` of bus vertices and its resource vertex `r`: it exists iff
//! `S` is connected and every terminal (and `r`) has a neighbour in `S`
//! (or, with `S` empty, the leaves form a single vertex or a single edge).
//! Shrinking `S` never hurts a packing, so only sets from which no single
//! vertex can be dropped are kept as options. Connected bus sets are
//! enumerated once per layout as bit masks.

use std::collections::HashMap;

use crate::dependency::{build_dependency, DependencyRule};
use crate::error::{Error, Result};
use crate::layout::{LayoutGraph, VertexKind};
use crate::pauli::{Circuit, Rotation};
use crate::router::{required_resource, RoutedTree};

pub const MAX_EXACT_OPS: usize = 10;
pub const MAX_EXACT_BUS: usize = 64;
pub const MAX_CONNECTED_SETS: usize = 4_000_000;

/// A minimum-bus forest for a set of operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactForest {
    pub trees: Vec<RoutedTree>,
    pub bus_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct TreeOption {
    bus: u64,
    resource: Option<usize>,
}

/// Exact search context for one layout and qubit mapping.
pub struct ExactSolver<'g> {
    g: &'g LayoutGraph,
    mapping: Vec<usize>,
    bus: Vec<usize>,
    /// Bus-neighbour mask of every vertex.
    bus_adj: Vec<u64>,
    connected: Vec<u64>,
    options: HashMap<(Vec<usize>, Option<VertexKind>), Vec<TreeOption>>,
    allow_shared_data: bool,
}

impl<'g> ExactSolver<'g> {
    pub fn new(g: &'g LayoutGraph, mapping: &[usize], allow_shared_data: bool) -> Result<Self> {
        let bus = g.vertices_of(VertexKind::Bus);
        if bus.len() > MAX_EXACT_BUS {
            return Err(Error::Capacity(format!(
                "exact search supports at most {MAX_EXACT_BUS} bus vertices, layout has {}",
                bus.len()
            )));
        }
        let mut index = vec![usize::MAX; g.num_vertices()];
        for (k, &b) in bus.iter().enumerate() {
            index[b] = k;
        }
        let bus_adj: Vec<u64> = (0..g.num_vertices())
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&u| g.is_bus(u))
                    .fold(0u64, |m, &u| m | (1 << index[u]))
            })
            .collect();
        let connected = connected_sets(&bus, &bus_adj)?;
        Ok(ExactSolver {
            g,
            mapping: mapping.to_vec(),
            bus,
            bus_adj,
            connected,
            options: HashMap::new(),
            allow_shared_data,
        })
    }

    fn terminals(&self, r: &Rotation) -> Vec<usize> {
        let mut t: Vec<usize> = r.pauli.support().into_iter().map(|q| self.mapping[q]).collect();
        t.sort_unstable();
        t
    }

    fn leaves_feasible(&self, s: u64, leaves: &[usize]) -> bool {
        if s == 0 {
            return match leaves {
                [_] => true,
                [a, b] => self.g.has_edge(*a, *b),
                _ => false,
            };
        }
        leaves.iter().all(|&l| self.bus_adj[l] & s != 0)
    }

    fn bus_connected(&self, s: u64) -> bool {
        if s == 0 {
            return true;
        }
        let start = s & s.wrapping_neg();
        let mut reach = start;
        loop {
            let mut next = reach;
            let mut rest = reach;
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= self.bus_adj[self.bus[k]] & s;
            }
            if next == reach {
                return reach == s;
            }
            reach = next;
        }
    }

    /// Minimal `(S, r)` options for an operation on `terminals`.
    fn options_for(&mut self, terminals: Vec<usize>, kind: Option<VertexKind>) -> &[TreeOption] {
        let key = (terminals, kind);
        if !self.options.contains_key(&key) {
            let (terminals, kind) = &key;
            let resources: Vec<Option<usize>> = match kind {
                Some(k) => self.g.vertices_of(*k).into_iter().map(Some).collect(),
                None => vec![None],
            };
            let mut opts = Vec::new();
            for r in resources {
                let mut leaves = terminals.clone();
                leaves.extend(r);
                if self.leaves_feasible(0, &leaves) {
                    opts.push(TreeOption { bus: 0, resource: r });
                    continue;
                }
                for &s in &self.connected {
                    if !self.leaves_feasible(s, &leaves) {
                        continue;
                    }
                    let mut rest = s;
                    let minimal = loop {
                        if rest == 0 {
                            break true;
                        }
                        let bit = rest & rest.wrapping_neg();
                        rest &= rest - 1;
                        let smaller = s & !bit;
                        if self.leaves_feasible(smaller, &leaves) && self.bus_connected(smaller) {
                            break false;
                        }
                    };
                    if minimal {
                        opts.push(TreeOption { bus: s, resource: r });
                    }
                }
            }
            opts.sort_by_key(|o| (o.bus.count_ones(), o.bus, o.resource));
            self.options.insert(key.clone(), opts);
        }
        &self.options[&key]
    }

    /// Searches disjoint options for `ops`; with `minimize` the bus total is
    /// minimized, otherwise the first feasible assignment is returned.
    fn search(&mut self, ops: &[&Rotation], minimize: bool) -> Option<(usize, Vec<TreeOption>)> {
        let terms: Vec<Vec<usize>> = ops.iter().map(|r| self.terminals(r)).collect();
        if !self.allow_shared_data {
            let mut seen = vec![false; self.g.num_vertices()];
            for t in terms.iter().flatten() {
                if std::mem::replace(&mut seen[*t], true) {
                    return None;
                }
            }
        }
        let lists: Vec<Vec<TreeOption>> = ops
            .iter()
            .zip(&terms)
            .map(|(r, t)| self.options_for(t.clone(), required_resource(r.angle)).to_vec())
            .collect();
        let mut order: Vec<usize> = (0..ops.len()).collect();
        order.sort_by_key(|&k| lists[k].len());
        let floor: Vec<usize> = {
            // sum of the cheapest option over the remaining ops
            let mut f = vec![0; order.len() + 1];
            for pos in (0..order.len()).rev() {
                let cheapest = lists[order[pos]].first().map_or(0, |o| o.bus.count_ones() as usize);
                f[pos] = f[pos + 1] + cheapest;
            }
            f
        };
        let mut best: Option<(usize, Vec<TreeOption>)> = None;
        let mut chosen = vec![TreeOption { bus: 0, resource: None }; ops.len()];
        let mut used_res = Vec::new();
        search_rec(
            &lists, &order, &floor, 0, 0, 0, &mut used_res, &mut chosen, &mut best, minimize,
        );
        best
    }

    /// Whether `ops` fit in one time step.
    pub fn pack_feasible(&mut self, ops: &[&Rotation]) -> bool {
        self.search(ops, false).is_some()
    }

    /// Minimum-bus forest for `ops`, or `None` if they cannot share a step.
    pub fn min_bus(&mut self, ops: &[&Rotation]) -> Option<ExactForest> {
        let (bus_count, chosen) = self.search(ops, true)?;
        let trees = ops
            .iter()
            .zip(&chosen)
            .map(|(r, o)| self.build_tree(self.terminals(r), *o))
            .collect();
        Some(ExactForest { trees, bus_count })
    }

    /// Realizes an option as an explicit tree: a BFS tree inside `S` from
    /// its smallest vertex, with each leaf hung on its smallest neighbour.
    fn build_tree(&self, terminals: Vec<usize>, o: TreeOption) -> RoutedTree {
        let mut leaves = terminals.clone();
        leaves.extend(o.resource);
        let mut vertices = leaves.clone();
        let mut edges = Vec::new();
        if o.bus == 0 {
            if let [a, b] = leaves[..] {
                edges.push((a.min(b), a.max(b)));
            }
        } else {
            let members: Vec<usize> = (0..self.bus.len())
                .filter(|&k| o.bus >> k & 1 == 1)
                .map(|k| self.bus[k])
                .collect();
            let mut inside = vec![false; self.g.num_vertices()];
            for &v in &members {
                inside[v] = true;
            }
            let mut seen = vec![false; self.g.num_vertices()];
            let mut queue = std::collections::VecDeque::from([members[0]]);
            seen[members[0]] = true;
            while let Some(u) = queue.pop_front() {
                vertices.push(u);
                for &v in self.g.neighbors(u) {
                    if inside[v] && !seen[v] {
                        seen[v] = true;
                        edges.push((u.min(v), u.max(v)));
                        queue.push_back(v);
                    }
                }
            }
            for &l in &leaves {
                let hub = *self
                    .g
                    .neighbors(l)
                    .iter()
                    .find(|&&u| inside[u])
                    .expect("feasible option has an adjacent bus vertex");
                edges.push((l.min(hub), l.max(hub)));
            }
        }
        vertices.sort_unstable();
        vertices.dedup();
        edges.sort_unstable();
        let (storage_vertex, ancillary_vertex) = match o.resource.map(|r| (r, self.g.kind(r))) {
            Some((r, VertexKind::MagicStorage)) => (Some(r), None),
            Some((r, VertexKind::Ancillary)) => (None, Some(r)),
            _ => (None, None),
        };
        RoutedTree {
            vertices,
            edges,
            terminals,
            storage_vertex,
            ancillary_vertex,
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn search_rec(
    lists: &[Vec<TreeOption>],
    order: &[usize],
    floor: &[usize],
    pos: usize,
    used_bus: u64,
    cost: usize,
    used_res: &mut Vec<usize>,
    chosen: &mut [TreeOption],
    best: &mut Option<(usize, Vec<TreeOption>)>,
    minimize: bool,
) -> bool {
    if let Some((b, _)) = best {
        if !minimize || cost + floor[pos] >= *b {
            return !minimize;
        }
    }
    if pos == order.len() {
        *best = Some((cost, chosen.to_vec()));
        return !minimize;
    }
    let k = order[pos];
    for o in &lists[k] {
        if o.bus & used_bus != 0 || o.resource.is_some_and(|r| used_res.contains(&r)) {
            continue;
        }
        let c = cost + o.bus.count_ones() as usize;
        if minimize && best.as_ref().is_some_and(|(b, _)| c + floor[pos + 1] >= *b) {
            // options are sorted by size, so later ones are no cheaper
            break;
        }
        chosen[k] = *o;
        used_res.extend(o.resource);
        let done = search_rec(
            lists,
            order,
            floor,
            pos + 1,
            used_bus | o.bus,
            c,
            used_res,
            chosen,
            best,
            minimize,
        );
        if o.resource.is_some() {
            used_res.pop();
        }
        if done {
            return true;
        }
    }
    false
}

/// Every connected subset of the bus, as masks over `bus` indices.
fn connected_sets(bus: &[usize], bus_adj: &[u64]) -> Result<Vec<u64>> {
    let nb = bus.len();
    let adj: Vec<u64> = bus.iter().map(|&b| bus_adj[b]).collect();
    let mut out = Vec::new();
    // Each set is generated once, from its smallest member `v`: grow by
    // neighbours larger than `v`, excluding vertices already rejected.
    fn grow(
        adj: &[u64],
        set: u64,
        frontier: u64,
        excluded: u64,
        out: &mut Vec<u64>,
    ) -> Result<()> {
        out.push(set);
        if out.len() > MAX_CONNECTED_SETS {
            return Err(Error::Capacity(format!(
                "more than {MAX_CONNECTED_SETS} connected bus sets"
            )));
        }
        let mut cand = frontier;
        let mut excl = excluded;
        while cand != 0 {
            let bit = cand & cand.wrapping_neg();
            cand &= cand - 1;
            let k = bit.trailing_zeros() as usize;
            let new_set = set | bit;
            let new_excl = excl | bit;
            let new_frontier = (cand | (adj[k] & !new_excl & !new_set)) & !set;
            grow(adj, new_set, new_frontier, new_excl, out)?;
            excl |= bit;
        }
        Ok(())
    }
    for v in 0..nb {
        let lower = (1u64 << v) - 1;
        let excluded = lower | (1 << v);
        grow(&adj, 1 << v, adj[v] & !excluded, excluded, &mut out)?;
    }
    Ok(out)
}

/// Minimum-bus forest for at most three operations, or `None` if they
/// cannot be routed together.
pub fn exact_min_bus(
    candidates: &[&Rotation],
    g: &LayoutGraph,
    mapping: &[usize],
    allow_shared_data: bool,
) -> Result<Option<ExactForest>> {
    if candidates.len() > 3 {
        return Err(Error::Capacity(format!(
            "exact packing supports at most 3 operations, got {}",
            candidates.len()
        )));
    }
    Ok(ExactSolver::new(g, mapping, allow_shared_data)?.min_bus(candidates))
}

/// Fewest time steps over every precedence-respecting partition of the
/// circuit into feasible packs.
///
/// Breadth-first search over sets of already scheduled operations; from
/// each state any feasible subset of the currently available operations
/// can form the next step.
pub fn exact_min_steps(
    c: &Circuit,
    g: &LayoutGraph,
    mapping: &[usize],
    rule: DependencyRule,
    allow_shared_data: bool,
) -> Result<usize> {
    let m = c.len();
    if m > MAX_EXACT_OPS {
        return Err(Error::Capacity(format!(
            "exact scheduling supports at most {MAX_EXACT_OPS} operations, got {m}"
        )));
    }
    if m == 0 {
        return Ok(0);
    }
    let dep = build_dependency(c, rule);
    let pred_mask: Vec<u32> = (0..m)
        .map(|j| dep.predecessors(j).iter().fold(0u32, |a, &i| a | (1 << i)))
        .collect();
    let mut solver = ExactSolver::new(g, mapping, allow_shared_data)?;
    let mut feasible: HashMap<u32, bool> = HashMap::new();
    let full = (1u32 << m) - 1;
    let mut dist = vec![u32::MAX; 1 << m];
    dist[0] = 0;
    let mut frontier = vec![0u32];
    let mut steps = 0;
    while !frontier.is_empty() {
        steps += 1;
        let mut next = Vec::new();
        for &state in &frontier {
            let avail = (0..m)
                .filter(|&j| state >> j & 1 == 0 && pred_mask[j] & !state == 0)
                .fold(0u32, |a, j| a | (1 << j));
            let mut sub = avail;
            while sub != 0 {
                let ok = *feasible.entry(sub).or_insert_with(|| {
                    let ops: Vec<&Rotation> =
                        (0..m).filter(|&j| sub >> j & 1 == 1).map(|j| &c.ops()[j]).collect();
                    solver.pack_feasible(&ops)
                });
                let to = state | sub;
                if ok && dist[to as usize] == u32::MAX {
                    dist[to as usize] = steps;
                    if to == full {
                        return Ok(steps as usize);
                    }
                    next.push(to);
                }
                sub = (sub - 1) & avail;
            }
        }
        frontier = next;
    }
    Err(Error::Scheduling {
        source_index: c.ops()[0].source_index,
        message: "no feasible schedule exists on this layout".into(),
    })
}

/// Checks a pack against the routing constraints: each tree is a tree of
/// graph edges; terminals and the resource are single-edge leaves; only bus
/// vertices are internal; each π/8 rotation holds exactly one storage leaf
/// and each π/4 rotation one ancillary leaf; bus vertices and resources are
/// never shared and data vertices only when allowed.
pub fn replay_pack(
    g: &LayoutGraph,
    pack: &[(&Rotation, &RoutedTree)],
    mapping: &[usize],
    allow_shared_data: bool,
) -> Result<()> {
    let fail = |r: &Rotation, msg: String| {
        Err(Error::Validation(format!("operation {}: {msg}", r.source_index)))
    };
    let mut owner: Vec<Option<usize>> = vec![None; g.num_vertices()];
    for (k, &(rot, tree)) in pack.iter().enumerate() {
        let mut terminals: Vec<usize> = rot.pauli.support().into_iter().map(|q| mapping[q]).collect();
        terminals.sort_unstable();
        if tree.terminals != terminals {
            return fail(rot, format!("terminals {:?}, expected {terminals:?}", tree.terminals));
        }
        let mut verts = tree.vertices.clone();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() != tree.vertices.len() || verts.iter().any(|&v| v >= g.num_vertices()) {
            return fail(rot, "invalid vertex list".into());
        }
        let mut degree: HashMap<usize, usize> = verts.iter().map(|&v| (v, 0)).collect();
        for &(u, v) in &tree.edges {
            if !g.has_edge(u, v) || !degree.contains_key(&u) || !degree.contains_key(&v) {
                return fail(rot, format!("edge ({u}, {v}) is not a layout edge inside the tree"));
            }
            *degree.get_mut(&u).unwrap() += 1;
            *degree.get_mut(&v).unwrap() += 1;
        }
        if tree.edges.len() + 1 != verts.len() || !tree_connected(&verts, &tree.edges) {
            return fail(rot, "not a tree".into());
        }
        let resource = tree.storage_vertex.or(tree.ancillary_vertex);
        let expected_kind = required_resource(rot.angle);
        let resources: Vec<usize> = verts
            .iter()
            .copied()
            .filter(|&v| matches!(g.kind(v), VertexKind::MagicStorage | VertexKind::Ancillary))
            .collect();
        match expected_kind {
            None if !resources.is_empty() || resource.is_some() => {
                return fail(rot, "holds a resource it does not need".into());
            }
            Some(kind) => {
                let ok = resources.len() == 1
                    && Some(resources[0]) == resource
                    && g.kind(resources[0]) == kind
                    && (tree.storage_vertex.is_some() == (kind == VertexKind::MagicStorage))
                    && !(tree.storage_vertex.is_some() && tree.ancillary_vertex.is_some());
                if !ok {
                    return fail(rot, format!("needs exactly one {kind:?} leaf"));
                }
            }
            None => {}
        }
        for &v in &verts {
            let is_leaf_role = terminals.binary_search(&v).is_ok() || Some(v) == resource;
            if is_leaf_role {
                if verts.len() > 1 && degree[&v] != 1 {
                    return fail(rot, format!("leaf {v} has degree {}", degree[&v]));
                }
            } else if !g.is_bus(v) {
                return fail(rot, format!("vertex {v} is neither bus nor one of its leaves"));
            }
            if let Some(other) = owner[v] {
                let shared_terminal = g.kind(v) == VertexKind::Data && allow_shared_data;
                if !shared_terminal {
                    return fail(rot, format!("vertex {v} already used by pack entry {other}"));
                }
            }
            owner[v] = Some(k);
        }
    }
    Ok(())
}

fn tree_connected(verts: &[usize], edges: &[(usize, usize)]) -> bool {
    let pos = |v: usize| verts.binary_search(&v).unwrap();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = verts.len();
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, pos(u)), find(&mut parent, pos(v)));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    comps == 1
}
