//! Central-zone adjacency graphs for compact and parallelizable layouts.
//!
//! Both families are built on a tile grid. Row 0 and every third row after
//! it are bus rows; the two rows in between hold an aisle of vertical
//! two-qubit patches (top qubit above, bottom qubit below). Columns at both
//! edges are bus tiles, so a bus ring encloses the whole zone.
//!
//! * compact: `P + 2` columns, patches packed side by side;
//! * parallelizable: `2P + 2` columns, each patch followed by a bus column.
//!   The top bus row spans the full width while lower bus rows have holes
//!   under the patches, so the extra bus tiles number exactly `P·(2A + 1)`.
//!
//! Magic-state storage and ancillary vertices sit just outside the ring, each
//! attached to one ring tile.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutStyle {
    Compact,
    Parallelizable,
}

impl FromStr for LayoutStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "compact" => Ok(LayoutStyle::Compact),
            "parallelizable" | "parallel" => Ok(LayoutStyle::Parallelizable),
            _ => Err(Error::Validation(format!("unknown layout style {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LayoutSpec {
    pub style: LayoutStyle,
    pub aisles: usize,
    pub patches_per_aisle: usize,
    pub n_storage: usize,
    #[serde(default)]
    pub n_ancillary: usize,
}

impl LayoutSpec {
    pub fn new(
        style: LayoutStyle,
        aisles: usize,
        patches_per_aisle: usize,
        n_storage: usize,
        n_ancillary: usize,
    ) -> Self {
        LayoutSpec {
            style,
            aisles,
            patches_per_aisle,
            n_storage,
            n_ancillary,
        }
    }

    /// Smallest near-square parallelizable layout holding `n_qubits`.
    pub fn auto(n_qubits: usize, n_storage: usize, n_ancillary: usize) -> Self {
        let n = n_qubits.max(1);
        let aisles = ((n as f64 / 4.0).sqrt().ceil() as usize).max(1);
        let patches = n.div_ceil(2 * aisles);
        LayoutSpec::new(
            LayoutStyle::Parallelizable,
            aisles,
            patches,
            n_storage,
            n_ancillary,
        )
    }

    pub fn data_capacity(&self) -> usize {
        2 * self.aisles * self.patches_per_aisle
    }

    pub fn validate(&self) -> Result<()> {
        if self.aisles == 0 || self.patches_per_aisle == 0 {
            return Err(Error::Validation(
                "layouts need at least one aisle and one patch per aisle".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Bus,
    Data,
    MagicStorage,
    Ancillary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub kind: VertexKind,
    pub row: i32,
    pub col: i32,
}

/// Undirected adjacency graph over typed tiles. Vertex ids are indices
/// into [`LayoutGraph::vertices`]; neighbour lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayoutGraph {
    vertices: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
    spec: Option<LayoutSpec>,
}

impl LayoutGraph {
    /// Builds a graph from explicit parts, checking the structural rules:
    /// edges join 4-neighbour tiles and every data vertex touches the bus.
    pub fn from_parts(vertices: Vec<Vertex>, edges: &[(usize, usize)]) -> Result<Self> {
        let nv = vertices.len();
        let mut adj = vec![Vec::new(); nv];
        for &(u, v) in edges {
            if u >= nv || v >= nv || u == v {
                return Err(Error::Validation(format!("invalid edge ({u}, {v})")));
            }
            let (a, b) = (vertices[u], vertices[v]);
            if (a.row - b.row).abs() + (a.col - b.col).abs() != 1 {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) joins non-adjacent tiles"
                )));
            }
            if adj[u].contains(&v) {
                return Err(Error::Validation(format!("duplicate edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = LayoutGraph {
            vertices,
            adj,
            spec: None,
        };
        for v in 0..nv {
            if g.kind(v) == VertexKind::Data && !g.adj[v].iter().any(|&u| g.is_bus(u)) {
                return Err(Error::Validation(format!(
                    "data vertex {v} has no bus neighbour"
                )));
            }
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Vertex {
        self.vertices[v]
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.vertices[v].kind
    }

    pub fn is_bus(&self, v: usize) -> bool {
        self.vertices[v].kind == VertexKind::Bus
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Every edge once, as `(smaller id, larger id)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn count(&self, kind: VertexKind) -> usize {
        self.vertices.iter().filter(|v| v.kind == kind).count()
    }

    /// Ids of one kind, in increasing order.
    pub fn vertices_of(&self, kind: VertexKind) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.kind(v) == kind)
            .collect()
    }

    /// The layout parameters this graph was built from, if any.
    pub fn spec(&self) -> Option<&LayoutSpec> {
        self.spec.as_ref()
    }

    /// Tile map, one character per tile: `.` bus, `D` data, `S` storage,
    /// `A` ancillary, blank for holes.
    pub fn render(&self) -> String {
        let (r0, r1) = min_max(self.vertices.iter().map(|v| v.row));
        let (c0, c1) = min_max(self.vertices.iter().map(|v| v.col));
        let width = (c1 - c0 + 1) as usize;
        let mut rows = vec![vec![' '; width]; (r1 - r0 + 1) as usize];
        for v in &self.vertices {
            rows[(v.row - r0) as usize][(v.col - c0) as usize] = match v.kind {
                VertexKind::Bus => '.',
                VertexKind::Data => 'D',
                VertexKind::MagicStorage => 'S',
                VertexKind::Ancillary => 'A',
            };
        }
        rows.into_iter()
            .map(|r| r.into_iter().collect::<String>().trim_end().to_string() + "\n")
            .collect()
    }
}

fn min_max(it: impl Iterator<Item = i32>) -> (i32, i32) {
    it.fold((i32::MAX, i32::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

pub fn build_layout(spec: &LayoutSpec) -> Result<LayoutGraph> {
    spec.validate()?;
    let (a, p) = (spec.aisles, spec.patches_per_aisle);
    let height = 3 * a + 1;
    let width = match spec.style {
        LayoutStyle::Compact => p + 2,
        LayoutStyle::Parallelizable => 2 * p + 2,
    };
    let tile = |r: usize, c: usize| -> Option<VertexKind> {
        let edge_col = c == 0 || c == width - 1;
        match (spec.style, r % 3) {
            (LayoutStyle::Compact, 0) => Some(VertexKind::Bus),
            (LayoutStyle::Compact, _) if edge_col => Some(VertexKind::Bus),
            (LayoutStyle::Compact, _) => Some(VertexKind::Data),
            (LayoutStyle::Parallelizable, 0) if r == 0 || edge_col || c.is_multiple_of(2) => {
                Some(VertexKind::Bus)
            }
            (LayoutStyle::Parallelizable, 0) => None,
            (LayoutStyle::Parallelizable, _) if edge_col || c.is_multiple_of(2) => Some(VertexKind::Bus),
            (LayoutStyle::Parallelizable, _) => Some(VertexKind::Data),
        }
    };

    let mut vertices = Vec::new();
    let mut id = vec![vec![None; width]; height];
    for (r, row) in id.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            if let Some(kind) = tile(r, c) {
                *slot = Some(vertices.len());
                vertices.push(Vertex {
                    kind,
                    row: r as i32,
                    col: c as i32,
                });
            }
        }
    }
    let at = |r: isize, c: isize| -> Option<usize> {
        if r < 0 || c < 0 || r >= height as isize || c >= width as isize {
            return None;
        }
        id[r as usize][c as usize]
    };

    let mut edges = Vec::new();
    for r in 0..height {
        for c in 0..width {
            let Some(u) = id[r][c] else { continue };
            let (ri, ci) = (r as isize, c as isize);
            match vertices[u].kind {
                VertexKind::Bus => {
                    for (dr, dc) in [(0, 1), (1, 0)] {
                        if let Some(v) = at(ri + dr, ci + dc) {
                            if vertices[v].kind == VertexKind::Bus {
                                edges.push((u, v));
                            }
                        }
                    }
                }
                _ => {
                    let vertical = if r % 3 == 1 { -1 } else { 1 };
                    for (dr, dc) in [(vertical, 0), (0, -1), (0, 1)] {
                        if let Some(v) = at(ri + dr, ci + dc) {
                            if vertices[v].kind == VertexKind::Bus {
                                edges.push((u, v));
                            }
                        }
                    }
                }
            }
        }
    }

    // outward-facing ring slots, clockwise from the top-left corner
    let mut slots: Vec<(usize, i32, i32)> = Vec::new();
    let (h, w) = (height as i32, width as i32);
    for c in 0..width {
        if let Some(v) = id[0][c] {
            slots.push((v, -1, c as i32));
        }
    }
    for r in 0..height {
        if let Some(v) = id[r][width - 1] {
            slots.push((v, r as i32, w));
        }
    }
    for c in (0..width).rev() {
        if let Some(v) = id[height - 1][c] {
            slots.push((v, h, c as i32));
        }
    }
    for r in (0..height).rev() {
        if let Some(v) = id[r][0] {
            slots.push((v, r as i32, -1));
        }
    }
    let wanted = spec.n_storage + spec.n_ancillary;
    if wanted > slots.len() {
        return Err(Error::Capacity(format!(
            "{wanted} storage/ancillary vertices requested, boundary holds {}",
            slots.len()
        )));
    }
    for i in 0..wanted {
        let (ring, row, col) = slots[i * slots.len() / wanted];
        let kind = if i < spec.n_storage {
            VertexKind::MagicStorage
        } else {
            VertexKind::Ancillary
        };
        edges.push((ring, vertices.len()));
        vertices.push(Vertex { kind, row, col });
    }

    let mut g = LayoutGraph::from_parts(vertices, &edges)?;
    g.spec = Some(*spec);
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssignPolicy {
    Sequential,
    Random(u64),
}

impl FromStr for AssignPolicy {
    type Err = Error;

    /// `sequential` or `random:<seed>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "sequential" {
            return Ok(AssignPolicy::Sequential);
        }
        s.strip_prefix("random:")
            .and_then(|seed| seed.parse().ok())
            .map(AssignPolicy::Random)
            .ok_or_else(|| {
                Error::Validation(format!(
                    "unknown assignment {s:?}, expected sequential or random:<seed>"
                ))
            })
    }
}

/// Maps circuit qubit `k` to a data vertex id.
pub fn assign_qubits(n_qubits: usize, g: &LayoutGraph, policy: AssignPolicy) -> Result<Vec<usize>> {
    let mut data = g.vertices_of(VertexKind::Data);
    if n_qubits > data.len() {
        return Err(Error::Capacity(format!(
            "{n_qubits} qubits do not fit on {} data vertices",
            data.len()
        )));
    }
    if let AssignPolicy::Random(seed) = policy {
        data.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    data.truncate(n_qubits);
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    fn layout(style: LayoutStyle, a: usize, p: usize, s: usize, an: usize) -> LayoutGraph {
        build_layout(&LayoutSpec::new(style, a, p, s, an)).unwrap()
    }

    fn bus_delta(a: usize, p: usize) -> usize {
        layout(LayoutStyle::Parallelizable, a, p, 0, 0).count(VertexKind::Bus)
            - layout(LayoutStyle::Compact, a, p, 0, 0).count(VertexKind::Bus)
    }

    /// Bus vertices reachable from `start` through bus tiles only.
    fn bus_component(g: &LayoutGraph, start: usize) -> Vec<bool> {
        let mut seen = vec![false; g.num_vertices()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if g.is_bus(v) && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    #[test]
    fn bus_delta_examples() {
        assert_eq!(bus_delta(1, 2), 6);
        assert_eq!(bus_delta(2, 3), 15);
    }

    #[test]
    fn bus_delta_identity_holds() {
        for a in 1..=6 {
            for p in 1..=6 {
                assert_eq!(bus_delta(a, p), p * (2 * a + 1), "A={a} P={p}");
            }
        }
    }

    #[test]
    fn single_patch_has_two_data_qubits() {
        let g = layout(LayoutStyle::Compact, 1, 1, 0, 0);
        assert_eq!(g.count(VertexKind::Data), 2);
        assert_eq!(
            g.render(),
            "...\n.D.\n.D.\n...\n"
        );
    }

    #[test]
    fn parallelizable_picture() {
        let g = layout(LayoutStyle::Parallelizable, 2, 2, 2, 1);
        assert_eq!(
            g.render(),
            concat!(
                "S\n",
                "......\n",
                ".D.D..\n",
                ".D.D..S\n",
                ". . ..\n",
                ".D.D..\n",
                ".D.D..\n",
                ". . ..\n",
                "A\n",
            )
        );
    }

    #[test]
    fn structural_invariants() {
        for style in [LayoutStyle::Compact, LayoutStyle::Parallelizable] {
            for a in 1..=4 {
                for p in 1..=4 {
                    let g = layout(style, a, p, 2, 1);
                    assert_eq!(g.count(VertexKind::Data), 2 * a * p);
                    assert_eq!(g.count(VertexKind::MagicStorage), 2);
                    assert_eq!(g.count(VertexKind::Ancillary), 1);
                    let bus = g.vertices_of(VertexKind::Bus);
                    let reach = bus_component(&g, bus[0]);
                    assert!(bus.iter().all(|&b| reach[b]), "bus not connected");
                    for v in 0..g.num_vertices() {
                        assert!(g.neighbors(v).len() <= 4);
                        if !g.is_bus(v) {
                            // reachable through a bus neighbour
                            assert!(g.neighbors(v).iter().any(|&u| g.is_bus(u)));
                            // only data-to-bus or resource-to-bus edges
                            assert!(g.neighbors(v).iter().all(|&u| g.is_bus(u)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn storage_comes_first_clockwise() {
        let g = layout(LayoutStyle::Compact, 1, 1, 1, 1);
        let s = g.vertices_of(VertexKind::MagicStorage)[0];
        let a = g.vertices_of(VertexKind::Ancillary)[0];
        assert_eq!((g.vertex(s).row, g.vertex(s).col), (-1, 0));
        assert!(s < a);
        // the ancillary sits half-way round the ring
        assert_eq!(g.vertex(a).row, 4);
    }

    #[test]
    fn too_many_resources_is_a_capacity_error() {
        // compact 1x1 ring: 3 + 4 + 3 + 4 outward slots
        assert!(build_layout(&LayoutSpec::new(LayoutStyle::Compact, 1, 1, 14, 0)).is_ok());
        assert!(matches!(
            build_layout(&LayoutSpec::new(LayoutStyle::Compact, 1, 1, 10, 5)),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn assignment() {
        let g = layout(LayoutStyle::Compact, 1, 1, 1, 0);
        let m = assign_qubits(2, &g, AssignPolicy::Sequential).unwrap();
        assert_eq!(m, g.vertices_of(VertexKind::Data));
        assert!(g.vertex(m[0]).row < g.vertex(m[1]).row);
        assert!(matches!(
            assign_qubits(3, &g, AssignPolicy::Sequential),
            Err(Error::Capacity(_))
        ));

        let big = layout(LayoutStyle::Parallelizable, 3, 4, 3, 0);
        let r1 = assign_qubits(20, &big, AssignPolicy::Random(5)).unwrap();
        let r2 = assign_qubits(20, &big, AssignPolicy::Random(5)).unwrap();
        assert_eq!(r1, r2);
        let mut uniq = r1.clone();
        uniq.sort_unstable();
        uniq.dedup();
        assert_eq!(uniq.len(), 20);
    }

    #[test]
    fn parse_policies_and_specs() {
        assert_eq!("sequential".parse::<AssignPolicy>().unwrap(), AssignPolicy::Sequential);
        assert_eq!("random:7".parse::<AssignPolicy>().unwrap(), AssignPolicy::Random(7));
        assert!("random".parse::<AssignPolicy>().is_err());
        let spec: LayoutSpec = serde_json::from_str(
            r#"{"style":"compact","aisles":2,"patches_per_aisle":3,"n_storage":1,"n_ancillary":0}"#,
        )
        .unwrap();
        assert_eq!(spec, LayoutSpec::new(LayoutStyle::Compact, 2, 3, 1, 0));
    }

    #[test]
    fn auto_layout_fits() {
        for n in 1..=64 {
            let spec = LayoutSpec::auto(n, 3, 0);
            assert!(spec.data_capacity() >= n);
        }
        assert_eq!(LayoutSpec::auto(10, 3, 0).aisles, 2);
    }

    #[test]
    fn from_parts_validation() {
        let v = |kind, row, col| Vertex { kind, row, col };
        let verts = vec![v(VertexKind::Data, 0, 0), v(VertexKind::Bus, 0, 1), v(VertexKind::Bus, 2, 2)];
        assert!(LayoutGraph::from_parts(verts.clone(), &[(0, 1)]).is_ok());
        assert!(LayoutGraph::from_parts(verts.clone(), &[(1, 2)]).is_err());
        assert!(LayoutGraph::from_parts(verts.clone(), &[]).is_err());
        assert!(LayoutGraph::from_parts(verts, &[(0, 1), (1, 0)]).is_err());
    }
}
