//! Breadth-first searches shared by the router.

use std::collections::VecDeque;

use crate::layout::LayoutGraph;

const UNSEEN: u32 = u32::MAX;

/// Reusable BFS buffers; `epoch` stamps avoid clearing between searches.
#[derive(Debug, Default)]
pub(crate) struct Scratch {
    dist: Vec<u32>,
    seen: Vec<u32>,
    source: Vec<u32>,
    target: Vec<u32>,
    epoch: u32,
    queue: VecDeque<usize>,
}

impl Scratch {
    fn begin(&mut self, nv: usize) -> u32 {
        if self.dist.len() != nv {
            self.dist = vec![0; nv];
            self.seen = vec![0; nv];
            self.source = vec![0; nv];
            self.target = vec![0; nv];
            self.epoch = 0;
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.seen.fill(0);
            self.source.fill(0);
            self.target.fill(0);
            self.epoch = 1;
        }
        self.queue.clear();
        self.epoch
    }

    fn dist(&self, v: usize) -> u32 {
        if self.seen[v] == self.epoch {
            self.dist[v]
        } else {
            UNSEEN
        }
    }

    /// Shortest path from any of `sources` to any of `targets` whose
    /// interior vertices all satisfy `allowed`.
    ///
    /// Among all shortest paths the one whose vertex-id sequence, read from
    /// the source end, is lexicographically smallest is returned, so the
    /// result does not depend on search order. Sources and targets are
    /// endpoints only and are never traversed.
    pub(crate) fn path_between(
        &mut self,
        g: &LayoutGraph,
        sources: &[usize],
        targets: &[usize],
        allowed: &dyn Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let epoch = self.begin(g.num_vertices());
        for &t in targets {
            self.target[t] = epoch;
        }
        for &s in sources {
            if self.target[s] == epoch {
                return Some(vec![s]);
            }
            self.source[s] = epoch;
        }
        for &t in targets {
            if self.seen[t] != epoch {
                self.seen[t] = epoch;
                self.dist[t] = 0;
                self.queue.push_back(t);
            }
        }
        // distance (in edges) of the closest source
        let mut best = UNSEEN;
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u];
            if du + 1 > best {
                break;
            }
            for &v in g.neighbors(u) {
                if self.source[v] == epoch {
                    best = best.min(du + 1);
                    continue;
                }
                if self.seen[v] == epoch || self.target[v] == epoch || !allowed(v) {
                    continue;
                }
                self.seen[v] = epoch;
                self.dist[v] = du + 1;
                self.queue.push_back(v);
            }
        }
        if best == UNSEEN {
            return None;
        }
        let start = sources
            .iter()
            .copied()
            .filter(|&s| {
                g.neighbors(s)
                    .iter()
                    .any(|&w| self.step_ok(w, best - 1, epoch, allowed))
            })
            .min()?;
        let mut path = vec![start];
        let mut cur = start;
        for remaining in (0..best).rev() {
            cur = g
                .neighbors(cur)
                .iter()
                .copied()
                .filter(|&w| self.step_ok(w, remaining, epoch, allowed))
                .min()?;
            path.push(cur);
        }
        Some(path)
    }

    fn step_ok(&self, w: usize, remaining: u32, epoch: u32, allowed: &dyn Fn(usize) -> bool) -> bool {
        if remaining == 0 {
            self.target[w] == epoch
        } else {
            self.target[w] != epoch
                && self.source[w] != epoch
                && self.dist(w) == remaining
                && allowed(w)
        }
    }

    /// Hop distances from `from` to every vertex in `to`, travelling through
    /// `allowed` interior vertices; `None` where unreachable.
    pub(crate) fn distances(
        &mut self,
        g: &LayoutGraph,
        from: usize,
        to: &[usize],
        allowed: &dyn Fn(usize) -> bool,
    ) -> Vec<Option<u32>> {
        let epoch = self.begin(g.num_vertices());
        for &t in to {
            self.target[t] = epoch;
        }
        self.seen[from] = epoch;
        self.dist[from] = 0;
        self.queue.push_back(from);
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u];
            for &v in g.neighbors(u) {
                if self.seen[v] == epoch {
                    continue;
                }
                if self.target[v] == epoch {
                    // endpoint: record but do not expand
                    self.seen[v] = epoch;
                    self.dist[v] = du + 1;
                    continue;
                }
                if !allowed(v) {
                    continue;
                }
                self.seen[v] = epoch;
                self.dist[v] = du + 1;
                self.queue.push_back(v);
            }
        }
        to.iter()
            .map(|&t| (t != from && self.seen[t] == epoch).then(|| self.dist[t]))
            .collect()
    }

    /// Shortest-path tree from the bus tile `root` to every vertex of `to`,
    /// as one root-ward path per target. Each vertex steps to its smallest
    /// neighbour one hop closer to the root, so the paths share a single
    /// parent function and their union is a tree with the targets as
    /// leaves. `None` if some target is unreachable.
    pub(crate) fn shortest_path_tree(
        &mut self,
        g: &LayoutGraph,
        root: usize,
        to: &[usize],
        allowed: &dyn Fn(usize) -> bool,
    ) -> Option<Vec<Vec<usize>>> {
        self.distances(g, root, to, allowed).into_iter().collect::<Option<Vec<_>>>()?;
        let epoch = self.epoch;
        let mut paths = Vec::with_capacity(to.len());
        for &t in to {
            let mut path = vec![t];
            let mut cur = t;
            while cur != root {
                let d = self.dist[cur];
                cur = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .filter(|&w| {
                        self.seen[w] == epoch
                            && self.target[w] != epoch
                            && self.dist[w] + 1 == d
                            && (w == root || allowed(w))
                    })
                    .min()?;
                path.push(cur);
            }
            paths.push(path);
        }
        Some(paths)
    }
}
