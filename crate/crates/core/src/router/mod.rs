//! Routing of multi-qubit operations as trees through the bus.
//!
//! An operation's tree joins its data terminals (and, for rotations that
//! consume a resource, one storage or ancillary vertex) through bus
//! vertices. Terminals and resources are leaves; every internal vertex is a
//! bus tile. Within one time step trees may share terminals at most, never
//! bus tiles.

mod cache;
mod search;

use serde::Serialize;

use crate::layout::{LayoutGraph, VertexKind};
use crate::pauli::{Rotation, RotationAngle};

pub use cache::{RouteCache, CACHE_ENV_VAR, DEFAULT_CACHE_CAPACITY};
use search::Scratch;

/// A routed operation: a tree in the layout graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoutedTree {
    /// Sorted vertex ids, terminals and resource included.
    pub vertices: Vec<usize>,
    /// Sorted edges, each as `(smaller id, larger id)`.
    pub edges: Vec<(usize, usize)>,
    /// Sorted data vertices of the operation.
    pub terminals: Vec<usize>,
    pub storage_vertex: Option<usize>,
    pub ancillary_vertex: Option<usize>,
}

impl RoutedTree {
    /// A single-terminal tree with no edges.
    pub fn bare(terminal: usize) -> Self {
        RoutedTree {
            vertices: vec![terminal],
            edges: Vec::new(),
            terminals: vec![terminal],
            storage_vertex: None,
            ancillary_vertex: None,
        }
    }

    pub fn bus_vertices<'a>(&'a self, g: &'a LayoutGraph) -> impl Iterator<Item = usize> + 'a {
        self.vertices.iter().copied().filter(|&v| g.is_bus(v))
    }

    pub fn bus_count(&self, g: &LayoutGraph) -> usize {
        self.bus_vertices(g).count()
    }

    fn from_parts(
        mut vertices: Vec<usize>,
        mut edges: Vec<(usize, usize)>,
        mut terminals: Vec<usize>,
    ) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        terminals.sort_unstable();
        RoutedTree {
            vertices,
            edges,
            terminals,
            storage_vertex: None,
            ancillary_vertex: None,
        }
    }

    fn add_path(&mut self, path: &[usize]) {
        for w in path.windows(2) {
            self.edges.push((w[0].min(w[1]), w[0].max(w[1])));
        }
        self.vertices.extend_from_slice(path);
        self.vertices.sort_unstable();
        self.vertices.dedup();
        self.edges.sort_unstable();
    }
}

/// Bus vertices claimed by trees already packed in the current step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occupancy {
    blocked: Vec<bool>,
}

impl Occupancy {
    pub fn new(g: &LayoutGraph) -> Self {
        Occupancy {
            blocked: vec![false; g.num_vertices()],
        }
    }

    pub fn is_blocked(&self, v: usize) -> bool {
        self.blocked[v]
    }

    pub fn block(&mut self, v: usize) {
        self.blocked[v] = true;
    }

    pub fn clear(&mut self) {
        self.blocked.fill(false);
    }

    pub fn blocked_count(&self) -> usize {
        self.blocked.iter().filter(|&&b| b).count()
    }
}

/// Storage and ancillary vertices still unused in the current step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResourcePool {
    pub storage: Vec<usize>,
    pub ancillary: Vec<usize>,
}

impl ResourcePool {
    /// Every resource vertex of the layout.
    pub fn full(g: &LayoutGraph) -> Self {
        ResourcePool {
            storage: g.vertices_of(VertexKind::MagicStorage),
            ancillary: g.vertices_of(VertexKind::Ancillary),
        }
    }

    fn take(&mut self, v: usize) {
        self.storage.retain(|&s| s != v);
        self.ancillary.retain(|&a| a != v);
    }
}

/// Resource an operation consumes: π/8 rotations a magic state, π/4
/// rotations an ancillary vertex, everything else nothing.
pub fn required_resource(angle: RotationAngle) -> Option<VertexKind> {
    if angle.is_pi8() {
        Some(VertexKind::MagicStorage)
    } else if angle.is_pi4() {
        Some(VertexKind::Ancillary)
    } else {
        None
    }
}

/// Routing context for one layout: search buffers plus the path cache.
#[derive(Debug)]
pub struct Router<'g> {
    g: &'g LayoutGraph,
    scratch: Scratch,
    cache: RouteCache,
}

impl<'g> Router<'g> {
    /// Router whose cache size comes from the environment.
    pub fn new(g: &'g LayoutGraph) -> Self {
        Self::with_cache(g, RouteCache::from_env())
    }

    pub fn with_cache(g: &'g LayoutGraph, cache: RouteCache) -> Self {
        Router {
            g,
            scratch: Scratch::default(),
            cache,
        }
    }

    pub fn graph(&self) -> &'g LayoutGraph {
        self.g
    }

    pub fn cache(&self) -> &RouteCache {
        &self.cache
    }

    /// Minimum-hop path `s → t` whose interior is unblocked bus tiles.
    pub fn shortest_bus_path(&mut self, s: usize, t: usize, occ: &Occupancy) -> Option<Vec<usize>> {
        if s == t {
            return None;
        }
        let g = self.g;
        let allowed = |v: usize| g.is_bus(v) && !occ.is_blocked(v);
        self.pair_path(s, t, &allowed)
    }

    /// Pair path through the cache. Cached paths are the canonical shortest
    /// paths of the unconstrained bus graph; one that still fits the current
    /// constraints is also the canonical constrained path.
    fn pair_path(&mut self, s: usize, t: usize, allowed: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
        let g = self.g;
        if self.cache.enabled() {
            let scratch = &mut self.scratch;
            let cached = self.cache.get_or_insert_with(s, t, || {
                scratch.path_between(g, &[s], &[t], &|v| g.is_bus(v))
            });
            match cached {
                None => return None,
                Some(p) if p[1..p.len() - 1].iter().all(|&v| allowed(v)) => return Some(p),
                Some(_) => {}
            }
        }
        self.scratch.path_between(g, &[s], &[t], allowed)
    }

    /// Terminal Steiner tree over `terminals` avoiding blocked bus tiles.
    ///
    /// Terminal pairs are weighted by their bus distance and joined in
    /// Kruskal order (ties broken by the smaller, then larger terminal id).
    /// Each join connects the two current components by a shortest path
    /// that avoids every vertex already in the tree: a terminal not yet
    /// connected is its own endpoint, otherwise the component's bus tiles
    /// serve as endpoints. This keeps terminals as leaves and the union
    /// acyclic.
    ///
    /// Because terminals must stay leaves, an early join can wall itself in
    /// or force long detours. The tree is therefore also grown from each
    /// terminal in turn, repeatedly attaching the nearest unconnected
    /// terminal, and as a shortest-path star from every free bus tile next
    /// to a terminal. The smallest construction wins (earlier ones on ties).
    /// `None` when every attempt fails.
    pub fn terminal_steiner_tree(&mut self, terminals: &[usize], occ: &Occupancy) -> Option<RoutedTree> {
        let mut terms = terminals.to_vec();
        terms.sort_unstable();
        terms.dedup();
        match terms.len() {
            0 => return None,
            1 => return Some(RoutedTree::bare(terms[0])),
            _ => {}
        }
        let mut best = self.kruskal_tree(&terms, occ);
        if terms.len() == 2 {
            return best;
        }
        let mut consider = |tree: Option<RoutedTree>| {
            if let Some(tree) = tree {
                if best.as_ref().is_none_or(|b| tree.vertices.len() < b.vertices.len()) {
                    best = Some(tree);
                }
            }
        };
        for &seed in &terms {
            consider(self.grown_tree(seed, &terms, occ));
        }
        let g = self.g;
        let mut roots: Vec<usize> = terms
            .iter()
            .flat_map(|&t| g.neighbors(t).iter().copied())
            .filter(|&v| g.is_bus(v) && !occ.is_blocked(v))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        for root in roots {
            consider(self.star_tree(root, &terms, occ));
        }
        best
    }

    /// Union of shortest paths from one bus tile to every terminal.
    fn star_tree(&mut self, root: usize, terms: &[usize], occ: &Occupancy) -> Option<RoutedTree> {
        let g = self.g;
        let free = |v: usize| g.is_bus(v) && !occ.is_blocked(v);
        let paths = self.scratch.shortest_path_tree(g, root, terms, &free)?;
        let mut tree = RoutedTree::from_parts(terms.to_vec(), Vec::new(), terms.to_vec());
        for p in &paths {
            tree.add_path(p);
        }
        tree.edges.dedup();
        Some(tree)
    }

    fn grown_tree(&mut self, seed: usize, terms: &[usize], occ: &Occupancy) -> Option<RoutedTree> {
        let g = self.g;
        let mut in_tree = vec![false; g.num_vertices()];
        for &t in terms {
            in_tree[t] = true;
        }
        let mut bus: Vec<usize> = Vec::new();
        let mut rest: Vec<usize> = terms.iter().copied().filter(|&t| t != seed).collect();
        let mut tree = RoutedTree::from_parts(terms.to_vec(), Vec::new(), terms.to_vec());
        while !rest.is_empty() {
            let ends = if bus.is_empty() { vec![seed] } else { bus.clone() };
            let allowed = |v: usize| g.is_bus(v) && !occ.is_blocked(v) && !in_tree[v];
            let path = self.scratch.path_between(g, &rest, &ends, &allowed)?;
            rest.retain(|&t| t != path[0]);
            for &v in &path[1..path.len() - 1] {
                in_tree[v] = true;
            }
            bus.extend(path.iter().copied().filter(|&v| g.is_bus(v)));
            bus.sort_unstable();
            bus.dedup();
            tree.add_path(&path);
        }
        Some(tree)
    }

    fn kruskal_tree(&mut self, terms: &[usize], occ: &Occupancy) -> Option<RoutedTree> {
        let g = self.g;
        let k = terms.len();
        let free = |v: usize| g.is_bus(v) && !occ.is_blocked(v);
        let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
        for (a, &ta) in terms.iter().enumerate() {
            let dists = self.scratch.distances(g, ta, &terms[a + 1..], &free);
            for (off, d) in dists.into_iter().enumerate() {
                let d = d?;
                pairs.push((d, a, a + 1 + off));
            }
        }
        pairs.sort_unstable();

        let mut comp: Vec<usize> = (0..k).collect();
        let find = |comp: &mut Vec<usize>, mut x: usize| {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        };
        // bus tiles of each component, keyed by its root
        let mut comp_bus: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut in_tree = vec![false; g.num_vertices()];
        for &t in terms {
            in_tree[t] = true;
        }
        let mut tree = RoutedTree::from_parts(terms.to_vec(), Vec::new(), terms.to_vec());
        let mut joins = 0;
        for (_, a, b) in pairs {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            if ra == rb {
                continue;
            }
            let ends_a = if comp_bus[ra].is_empty() { vec![terms[a]] } else { comp_bus[ra].clone() };
            let ends_b = if comp_bus[rb].is_empty() { vec![terms[b]] } else { comp_bus[rb].clone() };
            let allowed = |v: usize| free(v) && !in_tree[v];
            let path = if ends_a.len() == 1 && ends_b.len() == 1 && !g.is_bus(ends_a[0]) && !g.is_bus(ends_b[0]) {
                self.pair_path(ends_a[0], ends_b[0], &allowed)?
            } else {
                self.scratch.path_between(g, &ends_a, &ends_b, &allowed)?
            };
            let interior = &path[1..path.len() - 1];
            for &v in interior {
                in_tree[v] = true;
            }
            let mut merged = std::mem::take(&mut comp_bus[ra]);
            merged.append(&mut comp_bus[rb]);
            merged.extend(path.iter().copied().filter(|&v| g.is_bus(v)));
            merged.sort_unstable();
            merged.dedup();
            comp[rb] = ra;
            comp_bus[ra] = merged;
            tree.add_path(&path);
            joins += 1;
            if joins == k - 1 {
                break;
            }
        }
        Some(tree)
    }

    /// Attaches the closest available resource vertex to `tree` by a fresh
    /// bus path. The tree acts as one super-source: the path may start at
    /// any of its bus tiles, or at the terminal of a bare tree. Ties in
    /// distance go to the smaller resource id. `None` when none is reachable.
    pub fn attach_resource(
        &mut self,
        tree: &RoutedTree,
        available: &[usize],
        occ: &Occupancy,
    ) -> Option<RoutedTree> {
        if available.is_empty() {
            return None;
        }
        let g = self.g;
        let mut anchors: Vec<usize> = tree.bus_vertices(g).collect();
        if anchors.is_empty() {
            if tree.terminals.len() != 1 {
                return None;
            }
            anchors = tree.terminals.clone();
        }
        let mut in_tree = vec![false; g.num_vertices()];
        for &v in &tree.vertices {
            in_tree[v] = true;
        }
        let mut resources = available.to_vec();
        resources.sort_unstable();
        let allowed = |v: usize| g.is_bus(v) && !occ.is_blocked(v) && !in_tree[v];
        let path = self.scratch.path_between(g, &resources, &anchors, &allowed)?;
        let r = path[0];
        let mut out = tree.clone();
        out.add_path(&path);
        match g.kind(r) {
            VertexKind::MagicStorage => out.storage_vertex = Some(r),
            VertexKind::Ancillary => out.ancillary_vertex = Some(r),
            _ => return None,
        }
        Some(out)
    }

    /// Greedy packing of `candidates` (in the given order) into one step.
    ///
    /// Each candidate is routed on the bus left free by the trees already
    /// packed; it then takes the closest resource it needs. Candidates that
    /// cannot be routed, or whose data qubits are taken when sharing is not
    /// allowed, are skipped. Returns `(candidate index, tree)` pairs.
    pub fn pack_forest(
        &mut self,
        candidates: &[&Rotation],
        mapping: &[usize],
        pool: &mut ResourcePool,
        occ: &mut Occupancy,
        allow_shared_data: bool,
    ) -> Vec<(usize, RoutedTree)> {
        let g = self.g;
        let mut used_terminal = vec![false; g.num_vertices()];
        let mut packed = Vec::new();
        for (idx, rot) in candidates.iter().enumerate() {
            let terminals: Vec<usize> = rot.pauli.support().into_iter().map(|q| mapping[q]).collect();
            if !allow_shared_data && terminals.iter().any(|&t| used_terminal[t]) {
                continue;
            }
            let Some(mut tree) = self.terminal_steiner_tree(&terminals, occ) else {
                continue;
            };
            match required_resource(rot.angle) {
                Some(VertexKind::MagicStorage) => {
                    let Some(t) = self.attach_resource(&tree, &pool.storage, occ) else {
                        continue;
                    };
                    tree = t;
                }
                Some(_) => {
                    let Some(t) = self.attach_resource(&tree, &pool.ancillary, occ) else {
                        continue;
                    };
                    tree = t;
                }
                None => {}
            }
            for &v in &tree.vertices {
                if g.is_bus(v) {
                    occ.block(v);
                }
            }
            for &t in &tree.terminals {
                used_terminal[t] = true;
            }
            if let Some(r) = tree.storage_vertex.or(tree.ancillary_vertex) {
                pool.take(r);
            }
            packed.push((idx, tree));
        }
        packed
    }
}

/// Uncached [`Router::shortest_bus_path`].
pub fn shortest_bus_path(g: &LayoutGraph, s: usize, t: usize, occ: &Occupancy) -> Option<Vec<usize>> {
    Router::with_cache(g, RouteCache::disabled()).shortest_bus_path(s, t, occ)
}

/// Uncached [`Router::terminal_steiner_tree`].
pub fn terminal_steiner_tree(g: &LayoutGraph, terminals: &[usize], occ: &Occupancy) -> Option<RoutedTree> {
    Router::with_cache(g, RouteCache::disabled()).terminal_steiner_tree(terminals, occ)
}

/// [`Router::attach_resource`] restricted to magic-state storage.
pub fn attach_storage(
    g: &LayoutGraph,
    tree: &RoutedTree,
    storage_available: &[usize],
    occ: &Occupancy,
) -> Option<RoutedTree> {
    let storage: Vec<usize> = storage_available
        .iter()
        .copied()
        .filter(|&v| g.kind(v) == VertexKind::MagicStorage)
        .collect();
    Router::with_cache(g, RouteCache::disabled()).attach_resource(tree, &storage, occ)
}

/// Uncached [`Router::pack_forest`] starting from an empty step.
pub fn pack_forest(
    g: &LayoutGraph,
    candidates: &[&Rotation],
    mapping: &[usize],
    allow_shared_data: bool,
) -> Vec<(usize, RoutedTree)> {
    let mut pool = ResourcePool::full(g);
    let mut occ = Occupancy::new(g);
    Router::with_cache(g, RouteCache::disabled()).pack_forest(candidates, mapping, &mut pool, &mut occ, allow_shared_data)
}

#[cfg(test)]
mod tests;
