//! Small 2-graph utilities used to pair up cover members.

use crate::rational::Rational;

/// Undirected simple graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Loops and repeated edges are ignored.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v || self.has_edge(u, v) {
            return false;
        }
        for (x, y) in [(u, v), (v, u)] {
            let pos = self.adj[x].binary_search(&y).unwrap_err();
            self.adj[x].insert(pos, y);
        }
        self.m += 1;
        true
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `keep` (sorted), relabelled to `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = SimpleGraph::new(keep.len());
        for (u, v) in self.edges() {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                g.add_edge(index[u], index[v]);
            }
        }
        g
    }
}

/// Repeatedly deletes vertices of degree below `m/n` (of the input graph).
/// Returns the surviving vertices in increasing order; with no edges, the
/// single vertex 0.
pub fn min_degree_subgraph(g: &SimpleGraph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    if g.edge_count() == 0 {
        return vec![0];
    }
    let bound = Rational::new(g.edge_count() as i64, n as i64);
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: Vec<usize> = (0..n)
        .filter(|&v| Rational::from_integer(deg[v] as i64) < bound)
        .collect();
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if Rational::from_integer(deg[u] as i64) < bound {
                    queue.push(u);
                }
            }
        }
    }
    (0..n).filter(|&v| alive[v]).collect()
}

/// Greedy maximal matching, then cross swaps: while two vertices `u, v` are
/// unmatched and some matched edge `xy` has `u ~ x` and `v ~ y`, replace it
/// by `ux, vy`. Reaches size at least `min(δ(G), ⌊n/2⌋)`.
pub fn greedy_graph_matching(g: &SimpleGraph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut mate = vec![usize::MAX; n];
    for (u, v) in g.edges() {
        if mate[u] == usize::MAX && mate[v] == usize::MAX {
            mate[u] = v;
            mate[v] = u;
        }
    }
    'grow: loop {
        let free: Vec<usize> = (0..n).filter(|&v| mate[v] == usize::MAX).collect();
        for (i, &u) in free.iter().enumerate() {
            for &v in &free[i + 1..] {
                if g.has_edge(u, v) {
                    mate[u] = v;
                    mate[v] = u;
                    continue 'grow;
                }
                for &x in g.neighbors(u) {
                    let y = mate[x];
                    if y != usize::MAX && g.has_edge(v, y) {
                        mate[u] = x;
                        mate[x] = u;
                        mate[v] = y;
                        mate[y] = v;
                        continue 'grow;
                    }
                }
            }
        }
        break;
    }
    (0..n)
        .filter(|&u| mate[u] != usize::MAX && u < mate[u])
        .map(|u| (u, mate[u]))
        .collect()
}
