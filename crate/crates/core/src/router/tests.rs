use super::*;
use crate::layout::{assign_qubits, build_layout, AssignPolicy, LayoutSpec, LayoutStyle, Vertex};
use crate::oracle::exact::replay_pack;
use crate::pauli::PauliString;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Graph from a tile picture: `.` bus, `D` data, `S` storage,
/// `A` ancillary, anything else a hole. Every pair of 4-adjacent tiles is
/// joined except data-data pairs.
fn picture(rows: &[&str]) -> LayoutGraph {
    try_picture(rows).unwrap()
}

fn try_picture(rows: &[&str]) -> crate::error::Result<LayoutGraph> {
    let mut verts = Vec::new();
    let mut at = std::collections::HashMap::new();
    for (r, line) in rows.iter().enumerate() {
        for (c, ch) in line.chars().enumerate() {
            let kind = match ch {
                '.' => VertexKind::Bus,
                'D' => VertexKind::Data,
                'S' => VertexKind::MagicStorage,
                'A' => VertexKind::Ancillary,
                _ => continue,
            };
            at.insert((r as i32, c as i32), verts.len());
            verts.push(Vertex {
                kind,
                row: r as i32,
                col: c as i32,
            });
        }
    }
    let mut edges = Vec::new();
    for (&(r, c), &u) in &at {
        for (dr, dc) in [(0, 1), (1, 0)] {
            if let Some(&v) = at.get(&(r + dr, c + dc)) {
                let both_data = verts[u].kind == VertexKind::Data && verts[v].kind == VertexKind::Data;
                if !both_data {
                    edges.push((u, v));
                }
            }
        }
    }
    LayoutGraph::from_parts(verts, &edges)
}

fn id(g: &LayoutGraph, row: i32, col: i32) -> usize {
    (0..g.num_vertices())
        .find(|&v| g.vertex(v).row == row && g.vertex(v).col == col)
        .unwrap()
}

fn rot(angle: RotationAngle, s: &str, idx: usize) -> Rotation {
    Rotation::new(angle, PauliString::from_letters(s).unwrap(), idx)
}

/// Minimum number of bus tiles joining `terminals`, by increasing subset
/// size over all bus tiles.
fn brute_force_steiner_bus(g: &LayoutGraph, terminals: &[usize]) -> usize {
    let bus = g.vertices_of(VertexKind::Bus);
    for size in 0..=bus.len() {
        let mut found = false;
        combinations(bus.len(), size, &mut |pick: &[usize]| {
            if found {
                return;
            }
            let set: Vec<usize> = pick.iter().map(|&k| bus[k]).collect();
            if steiner_ok(g, &set, terminals) {
                found = true;
            }
        });
        if found {
            return size;
        }
    }
    usize::MAX
}

fn combinations(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

/// `set` is connected and touches every terminal.
fn steiner_ok(g: &LayoutGraph, set: &[usize], terminals: &[usize]) -> bool {
    if set.is_empty() {
        return terminals.len() <= 1;
    }
    if !terminals.iter().all(|&t| g.neighbors(t).iter().any(|v| set.contains(v))) {
        return false;
    }
    let mut seen = vec![set[0]];
    let mut k = 0;
    while k < seen.len() {
        for &v in g.neighbors(seen[k]) {
            if set.contains(&v) && !seen.contains(&v) {
                seen.push(v);
            }
        }
        k += 1;
    }
    seen.len() == set.len()
}

#[test]
fn adjacent_endpoints() {
    let g = picture(&["D.D"]);
    let occ = Occupancy::new(&g);
    let (a, b) = (id(&g, 0, 0), id(&g, 0, 1));
    assert_eq!(shortest_bus_path(&g, a, b, &occ), Some(vec![a, b]));
}

#[test]
fn one_tile_between() {
    let g = picture(&["D.D"]);
    let mut occ = Occupancy::new(&g);
    let (s, b, t) = (id(&g, 0, 0), id(&g, 0, 1), id(&g, 0, 2));
    assert_eq!(shortest_bus_path(&g, s, t, &occ), Some(vec![s, b, t]));
    occ.block(b);
    assert_eq!(shortest_bus_path(&g, s, t, &occ), None);
}

#[test]
fn paths_never_cross_data() {
    // the direct route runs through a data tile
    let g = picture(&["...", "DDD", "..."]);
    let occ = Occupancy::new(&g);
    let (s, t) = (id(&g, 1, 0), id(&g, 1, 2));
    let p = shortest_bus_path(&g, s, t, &occ).unwrap();
    assert_eq!(p.len(), 5);
    assert!(p[1..4].iter().all(|&v| g.is_bus(v)));
    // smallest ids first: the upper row
    assert_eq!(g.vertex(p[1]).row, 0);
}

#[test]
fn two_terminal_tree_is_the_shortest_path() {
    let g = build_layout(&LayoutSpec::new(LayoutStyle::Compact, 2, 3, 0, 0)).unwrap();
    let data = g.vertices_of(VertexKind::Data);
    let occ = Occupancy::new(&g);
    for &a in &data {
        for &b in &data {
            if a >= b {
                continue;
            }
            let path = shortest_bus_path(&g, a, b, &occ).unwrap();
            let tree = terminal_steiner_tree(&g, &[a, b], &occ).unwrap();
            assert_eq!(tree.edges.len(), path.len() - 1);
            let mut pv = path.clone();
            pv.sort_unstable();
            assert_eq!(tree.vertices, pv);
        }
    }
}

#[test]
fn three_terminals_in_a_row_are_optimal() {
    let g = picture(&[".....", "D.D.D", "....."]);
    let occ = Occupancy::new(&g);
    let terms = [id(&g, 1, 0), id(&g, 1, 2), id(&g, 1, 4)];
    let tree = terminal_steiner_tree(&g, &terms, &occ).unwrap();
    assert_eq!(tree.bus_count(&g), brute_force_steiner_bus(&g, &terms));
    // D4 cannot reach the tree through D2, which must stay a leaf
    assert_eq!(tree.bus_count(&g), 5);
}

#[test]
fn blocked_bus_separates_terminals() {
    let g = picture(&["D.D"]);
    let mut occ = Occupancy::new(&g);
    occ.block(id(&g, 0, 1));
    assert!(terminal_steiner_tree(&g, &[id(&g, 0, 0), id(&g, 0, 2)], &occ).is_none());
}

#[test]
fn storage_next_to_a_single_qubit() {
    let g = picture(&["DS", ". "]);
    let occ = Occupancy::new(&g);
    let t = id(&g, 0, 0);
    let s = id(&g, 0, 1);
    let tree = attach_storage(&g, &RoutedTree::bare(t), &[s], &occ).unwrap();
    assert_eq!(tree.edges, vec![(t.min(s), t.max(s))]);
    assert_eq!(tree.storage_vertex, Some(s));
}

#[test]
fn closest_storage_wins() {
    // storages two and six edges away from the data tile
    let g = picture(&["D.....", " S   S"]);
    let occ = Occupancy::new(&g);
    let t = id(&g, 0, 0);
    let near = id(&g, 1, 1);
    let far = id(&g, 1, 5);
    let tree = attach_storage(&g, &RoutedTree::bare(t), &[far, near], &occ).unwrap();
    assert_eq!(tree.storage_vertex, Some(near));
    assert_eq!(tree.edges.len(), 2);
}

#[test]
fn blocked_storage_is_unreachable() {
    let g = picture(&["D..", "  S"]);
    let mut occ = Occupancy::new(&g);
    let s = id(&g, 1, 2);
    occ.block(id(&g, 0, 2));
    assert!(attach_storage(&g, &RoutedTree::bare(id(&g, 0, 0)), &[s], &occ).is_none());
    assert!(attach_storage(&g, &RoutedTree::bare(id(&g, 0, 0)), &[], &Occupancy::new(&g)).is_none());
}

#[test]
fn single_pi8_packs() {
    let g = build_layout(&LayoutSpec::new(LayoutStyle::Compact, 1, 1, 1, 0)).unwrap();
    let map = assign_qubits(2, &g, AssignPolicy::Sequential).unwrap();
    let r = rot(RotationAngle::PlusPi8, "ZI", 0);
    let packed = pack_forest(&g, &[&r], &map, false);
    assert_eq!(packed.len(), 1);
    replay_pack(&g, &[(&r, &packed[0].1)], &map, false).unwrap();
}

#[test]
fn opposite_sides_pack_together() {
    let g = build_layout(&LayoutSpec::new(LayoutStyle::Parallelizable, 1, 3, 2, 0)).unwrap();
    let map = assign_qubits(6, &g, AssignPolicy::Sequential).unwrap();
    // qubit 0 top-left patch, qubit 5 bottom-right patch
    let a = rot(RotationAngle::PlusPi8, "XIIIII", 0);
    let b = rot(RotationAngle::PlusPi8, "IIIIIZ", 1);
    let packed = pack_forest(&g, &[&a, &b], &map, false);
    assert_eq!(packed.len(), 2);
    replay_pack(&g, &[(&a, &packed[0].1), (&b, &packed[1].1)], &map, false).unwrap();
}

#[test]
fn single_corridor_admits_one() {
    // D . D with one extra data tile hanging off the bus: only one route
    let g = picture(&["D.D", " D "]);
    let map = vec![id(&g, 0, 0), id(&g, 0, 2), id(&g, 1, 1)];
    let a = rot(RotationAngle::Measure, "XXI", 0);
    let b = rot(RotationAngle::Measure, "IIX", 1);
    let c = rot(RotationAngle::Measure, "XIX", 2);
    // b is single-qubit and needs no bus, so it fits beside a
    assert_eq!(pack_forest(&g, &[&a, &b], &map, false).len(), 2);
    assert_eq!(pack_forest(&g, &[&a, &c], &map, true).len(), 1);
}

#[test]
fn resource_kinds() {
    assert_eq!(required_resource(RotationAngle::MinusPi8), Some(VertexKind::MagicStorage));
    assert_eq!(required_resource(RotationAngle::PlusPi4), Some(VertexKind::Ancillary));
    assert_eq!(required_resource(RotationAngle::PlusPi2), None);
    assert_eq!(required_resource(RotationAngle::Measure), None);
}

#[test]
fn quarter_turn_takes_an_ancillary() {
    let g = build_layout(&LayoutSpec::new(LayoutStyle::Compact, 1, 2, 1, 1)).unwrap();
    let map = assign_qubits(4, &g, AssignPolicy::Sequential).unwrap();
    let r = rot(RotationAngle::PlusPi4, "XIZI", 0);
    let packed = pack_forest(&g, &[&r], &map, false);
    let tree = &packed[0].1;
    assert!(tree.ancillary_vertex.is_some() && tree.storage_vertex.is_none());
    replay_pack(&g, &[(&r, tree)], &map, false).unwrap();
}

fn random_rotation(rng: &mut ChaCha8Rng, n: usize, idx: usize) -> Rotation {
    let angle = [
        RotationAngle::PlusPi8,
        RotationAngle::MinusPi8,
        RotationAngle::PlusPi4,
        RotationAngle::Measure,
        RotationAngle::PlusPi2,
    ][rng.random_range(0..5)];
    loop {
        let letters: String = (0..n).map(|_| ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)]).collect();
        let p = PauliString::from_letters(&letters).unwrap();
        if !p.is_identity() {
            return Rotation::new(angle, p, idx);
        }
    }
}

fn random_layout(rng: &mut ChaCha8Rng) -> LayoutGraph {
    let style = if rng.random_bool(0.5) {
        LayoutStyle::Compact
    } else {
        LayoutStyle::Parallelizable
    };
    let spec = LayoutSpec::new(
        style,
        rng.random_range(1..=3),
        rng.random_range(1..=4),
        rng.random_range(0..=3),
        rng.random_range(0..=2),
    );
    build_layout(&spec).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn packs_satisfy_routing_constraints(seed in any::<u64>(), shared in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_layout(&mut rng);
        let cap = g.count(VertexKind::Data);
        let n = rng.random_range(1..=cap.min(8));
        let map = assign_qubits(n, &g, AssignPolicy::Random(seed)).unwrap();
        let ops: Vec<Rotation> = (0..rng.random_range(1..8)).map(|k| random_rotation(&mut rng, n, k)).collect();
        let refs: Vec<&Rotation> = ops.iter().collect();
        let packed = pack_forest(&g, &refs, &map, shared);
        let pairs: Vec<(&Rotation, &RoutedTree)> = packed.iter().map(|(k, t)| (refs[*k], t)).collect();
        prop_assert!(replay_pack(&g, &pairs, &map, shared).is_ok(), "{:?}", replay_pack(&g, &pairs, &map, shared));
        // the first candidate always routes on an empty step unless it
        // needs a resource the layout lacks
        if let Some(kind) = required_resource(refs[0].angle) {
            if g.count(kind) > 0 {
                prop_assert_eq!(packed.first().map(|p| p.0), Some(0));
            }
        } else {
            prop_assert_eq!(packed.first().map(|p| p.0), Some(0));
        }
    }

    #[test]
    fn cache_is_transparent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_layout(&mut rng);
        let n = g.count(VertexKind::Data).min(6);
        let map = assign_qubits(n, &g, AssignPolicy::Sequential).unwrap();
        let mut cached = Router::with_cache(&g, RouteCache::with_capacity(64));
        let mut plain = Router::with_cache(&g, RouteCache::disabled());
        for round in 0..6 {
            let ops: Vec<Rotation> = (0..5).map(|k| random_rotation(&mut rng, n, round * 5 + k)).collect();
            let refs: Vec<&Rotation> = ops.iter().collect();
            let run = |r: &mut Router| {
                let mut pool = ResourcePool::full(&g);
                let mut occ = Occupancy::new(&g);
                r.pack_forest(&refs, &map, &mut pool, &mut occ, false)
            };
            prop_assert_eq!(run(&mut cached), run(&mut plain));
        }
    }

    #[test]
    fn heuristic_within_twice_optimum(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // open grid with data tiles scattered inside a 5x5 frame
        let mut rows: Vec<Vec<char>> = vec![vec!['.'; 5]; 5];
        let k = rng.random_range(2..=3);
        let mut terms = Vec::new();
        while terms.len() < k {
            let (r, c) = (rng.random_range(0..5), rng.random_range(0..5));
            if rows[r][c] == '.' {
                rows[r][c] = 'D';
                terms.push((r as i32, c as i32));
            }
        }
        let text: Vec<String> = rows.iter().map(|r| r.iter().collect()).collect();
        let refs: Vec<&str> = text.iter().map(String::as_str).collect();
        let g = try_picture(&refs);
        prop_assume!(g.is_ok());
        let g = g.unwrap();
        let t: Vec<usize> = terms.iter().map(|&(r, c)| id(&g, r, c)).collect();
        let occ = Occupancy::new(&g);
        let opt = brute_force_steiner_bus(&g, &t);
        match terminal_steiner_tree(&g, &t, &occ) {
            Some(tree) => prop_assert!(
                tree.bus_count(&g) <= 2 * opt.max(1),
                "{} vs optimum {} on\n{}", tree.bus_count(&g), opt, text.join("\n")
            ),
            None => prop_assert_eq!(opt, usize::MAX, "no tree on\n{}", text.join("\n")),
        }
    }
}
