//! Branch and bound for maximum matching at orders beyond the subset table.
//!
//! Each node picks the uncovered vertex of smallest positive degree and
//! branches over its edges (least-contended partners first), then over
//! leaving it unmatched. The bound is the smaller of a third of the live
//! support and the size of a greedy hitting set of the live edges: disjoint
//! edges need distinct hitting vertices.

use crate::hypergraph::{Hypergraph3, Triple};
use crate::matching::Matching;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct BranchResult {
    pub size: usize,
    pub witness: Matching,
    /// True iff the search finished inside the budget, so `size` is optimal.
    pub exact: bool,
    pub nodes: u64,
}

struct Search<'a> {
    edges: Vec<Triple>,
    incident: Vec<Vec<usize>>,
    alive: Vec<bool>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    stack: Vec<usize>,
    best: Vec<usize>,
    /// Stop as soon as a matching of this size is found.
    target: usize,
    _h: &'a Hypergraph3,
}

impl Search<'_> {
    fn edge_live(&self, e: usize) -> bool {
        self.edges[e].iter().all(|&v| self.alive[v])
    }

    fn degrees(&self) -> Vec<usize> {
        let n = self.alive.len();
        let mut deg = vec![0usize; n];
        for (i, e) in self.edges.iter().enumerate() {
            if self.edge_live(i) {
                for &v in e {
                    deg[v] += 1;
                }
            }
        }
        deg
    }

    fn hitting_bound(&self, deg: &[usize]) -> usize {
        let mut deg = deg.to_vec();
        let mut dead = vec![false; self.edges.len()];
        let mut picked = 0;
        loop {
            let (v, &d) = deg
                .iter()
                .enumerate()
                .max_by_key(|&(v, d)| (*d, std::cmp::Reverse(v)))
                .expect("nonempty vertex set");
            if d == 0 {
                return picked;
            }
            picked += 1;
            for &e in &self.incident[v] {
                if !dead[e] && self.edge_live(e) {
                    dead[e] = true;
                    for &u in &self.edges[e] {
                        deg[u] -= 1;
                    }
                }
            }
        }
    }

    fn run(&mut self) {
        if self.best.len() >= self.target {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let deg = self.degrees();
        let support = deg.iter().filter(|&&d| d > 0).count();
        if support == 0 {
            if self.stack.len() > self.best.len() {
                self.best = self.stack.clone();
            }
            return;
        }
        let cur = self.stack.len();
        let cheap = cur + support / 3;
        if cheap <= self.best.len() {
            return;
        }
        let ub = cur + (support / 3).min(self.hitting_bound(&deg));
        if ub <= self.best.len() {
            return;
        }
        let v = (0..deg.len())
            .filter(|&v| deg[v] > 0)
            .min_by_key(|&v| (deg[v], v))
            .expect("support is nonempty");
        let mut branches: Vec<usize> = self.incident[v]
            .iter()
            .copied()
            .filter(|&e| self.edge_live(e))
            .collect();
        branches.sort_by_key(|&e| {
            let s: usize = self.edges[e].iter().filter(|&&u| u != v).map(|&u| deg[u]).sum();
            (s, self.edges[e])
        });
        for e in branches {
            let t = self.edges[e];
            for &u in &t {
                self.alive[u] = false;
            }
            self.stack.push(e);
            self.run();
            self.stack.pop();
            for &u in &t {
                self.alive[u] = true;
            }
            if self.exhausted || self.best.len() >= self.target {
                return;
            }
        }
        self.alive[v] = false;
        self.run();
        self.alive[v] = true;
    }
}

/// Maximum matching by branch and bound with a node budget.
pub fn max_matching_branch(h: &Hypergraph3, budget: u64) -> BranchResult {
    search(h, budget, h.n() / 3)
}

pub(crate) fn search(h: &Hypergraph3, budget: u64, target: usize) -> BranchResult {
    let edges: Vec<Triple> = h.edges().collect();
    let mut incident = vec![Vec::new(); h.n()];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut s = Search {
        edges,
        incident,
        alive: vec![true; h.n()],
        budget,
        nodes: 0,
        exhausted: false,
        stack: Vec::new(),
        best: Vec::new(),
        target,
        _h: h,
    };
    s.run();
    let witness = Matching::from_edges(h.n(), s.best.iter().map(|&e| s.edges[e]))
        .expect("search keeps chosen edges disjoint");
    BranchResult {
        size: s.best.len(),
        witness,
        exact: !s.exhausted,
        nodes: s.nodes,
    }
}
