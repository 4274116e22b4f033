//! Earliest-available-first scheduling.
//!
//! Every time step takes all operations whose dependencies are done, packs
//! as many of them as the layout can route at once, and removes the packed
//! ones from the dependency graph.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dependency::{build_dependency, graph_metrics, DependencyRule};
use crate::error::{Error, Result};
use crate::layout::{assign_qubits, AssignPolicy, LayoutGraph, LayoutSpec};
use crate::pauli::{Circuit, Rotation};
use crate::router::{Occupancy, ResourcePool, RouteCache, RoutedTree, Router};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleOptions {
    pub rule: DependencyRule,
    /// Shuffle each step's candidates with this seed instead of taking them
    /// in source order.
    pub order_seed: Option<u64>,
    /// Let operations in one step share data qubits.
    pub allow_shared_data: bool,
    pub assign: AssignPolicy,
    /// Route-cache capacity; `None` reads it from the environment.
    pub cache_capacity: Option<usize>,
}

impl ScheduleOptions {
    pub fn new(rule: DependencyRule) -> Self {
        ScheduleOptions {
            rule,
            order_seed: None,
            allow_shared_data: false,
            assign: AssignPolicy::Sequential,
            cache_capacity: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduledOp {
    pub rotation: Rotation,
    pub tree: RoutedTree,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TimeStep {
    pub ops: Vec<ScheduledOp>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub steps: Vec<TimeStep>,
    pub rule: DependencyRule,
    pub layout: Option<LayoutSpec>,
    /// Data vertex of each circuit qubit.
    pub qubit_map: Vec<usize>,
}

impl Schedule {
    pub fn num_steps(&self) -> usize {
        self.steps.len()
    }

    /// Time step of every operation, keyed by source index.
    pub fn step_of(&self) -> std::collections::HashMap<usize, usize> {
        self.steps
            .iter()
            .enumerate()
            .flat_map(|(k, s)| s.ops.iter().map(move |o| (o.rotation.source_index, k)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    /// Expected logical cycles: the number of time steps.
    pub en: usize,
    /// Dependency-graph depth, a lower bound on `en`.
    pub lb: usize,
    /// Circuit length, an upper bound on `en`.
    pub ub: usize,
    pub average_width: f64,
    pub t_dep_s: f64,
    pub t_sch_s: f64,
    pub t_tot_s: f64,
    pub rule: DependencyRule,
    pub layout: Option<LayoutSpec>,
}

/// Runs earliest-available-first scheduling of `c` on `g`.
pub fn schedule(c: &Circuit, g: &LayoutGraph, opts: &ScheduleOptions) -> Result<(Schedule, Report)> {
    let start = Instant::now();
    let qubit_map = assign_qubits(c.num_qubits(), g, opts.assign)?;

    let t0 = Instant::now();
    let dep = build_dependency(c, opts.rule);
    let metrics = graph_metrics(&dep)?;
    let t_dep_s = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let cache = opts
        .cache_capacity
        .map_or_else(RouteCache::from_env, RouteCache::with_capacity);
    let mut router = Router::with_cache(g, cache);
    let mut rng = opts.order_seed.map(ChaCha8Rng::seed_from_u64);
    let ops = c.ops();
    let mut indeg: Vec<usize> = (0..ops.len()).map(|j| dep.predecessors(j).len()).collect();
    let mut roots: BTreeSet<usize> = (0..ops.len()).filter(|&j| indeg[j] == 0).collect();
    let mut occ = Occupancy::new(g);
    let mut steps = Vec::new();
    while !roots.is_empty() {
        let mut candidates: Vec<usize> = roots.iter().copied().collect();
        if let Some(rng) = rng.as_mut() {
            candidates.shuffle(rng);
        }
        let refs: Vec<&Rotation> = candidates.iter().map(|&j| &ops[j]).collect();
        occ.clear();
        let mut pool = ResourcePool::full(g);
        let packed = router.pack_forest(&refs, &qubit_map, &mut pool, &mut occ, opts.allow_shared_data);
        if packed.is_empty() {
            let first = &ops[candidates[0]];
            return Err(Error::Scheduling {
                source_index: first.source_index,
                message: format!(
                    "none of the {} available operations can be routed on this layout",
                    candidates.len()
                ),
            });
        }
        let mut released = Vec::new();
        let mut step = TimeStep::default();
        for (k, tree) in packed {
            let j = candidates[k];
            roots.remove(&j);
            for &s in dep.successors(j) {
                indeg[s] -= 1;
                if indeg[s] == 0 {
                    released.push(s);
                }
            }
            step.ops.push(ScheduledOp {
                rotation: ops[j].clone(),
                tree,
            });
        }
        roots.extend(released);
        steps.push(step);
    }
    let t_sch_s = t1.elapsed().as_secs_f64();

    let layout = g.spec().copied();
    let report = Report {
        en: steps.len(),
        lb: metrics.max_depth,
        ub: ops.len(),
        average_width: metrics.average_width,
        t_dep_s,
        t_sch_s,
        t_tot_s: start.elapsed().as_secs_f64(),
        rule: opts.rule,
        layout,
    };
    let schedule = Schedule {
        steps,
        rule: opts.rule,
        layout,
        qubit_map,
    };
    Ok((schedule, report))
}

/// Percentage gap `100·(s − s_star)/s_star`.
pub fn compute_gap(s: f64, s_star: f64) -> Result<f64> {
    if s_star == 0.0 {
        return Err(Error::Domain("gap reference is zero".into()));
    }
    Ok(100.0 * (s - s_star) / s_star)
}
