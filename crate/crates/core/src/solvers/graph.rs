use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeightedGraph {
    vertices: usize,
    edges: Vec<Edge>,
    directed: bool,
}

impl EdgeWeightedGraph {
    pub fn new(vertices: usize, edges: Vec<Edge>, directed: bool) -> Result<Self> {
        for e in &edges {
            if e.u >= vertices || e.v >= vertices {
                return Err(Error::IndexOutOfRange { agent: e.u, item: e.v, n: vertices });
            }
            if e.u == e.v {
                return Err(Error::InvalidParameters(format!("self-loop at vertex {}", e.u)));
            }
            if !e.w.is_finite() || e.w < 0.0 {
                return Err(Error::InvalidParameters(format!("invalid edge weight {}", e.w)));
            }
        }
        Ok(Self { vertices, edges, directed })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn weight_of(&self, edge_ids: &[usize]) -> f64 {
        edge_ids.iter().map(|&e| self.edges[e].w).sum()
    }

    /// Same skeleton, new weights (indexed like `edges`).
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        let edges = self.edges.iter().zip(weights).map(|(e, &w)| Edge { w, ..*e }).collect();
        Self::new(self.vertices, edges, self.directed)
    }
}

/// True when the edges are pairwise vertex-disjoint.
pub fn is_matching(g: &EdgeWeightedGraph, edge_ids: &[usize]) -> bool {
    let mut used = vec![false; g.vertices()];
    for &id in edge_ids {
        let Some(e) = g.edges().get(id) else { return false };
        if used[e.u] || used[e.v] {
            return false;
        }
        used[e.u] = true;
        used[e.v] = true;
    }
    true
}

/// Scan edges by descending weight and keep every edge whose endpoints are
/// still free. Equal weights are taken in lexicographic `(min, max)` endpoint
/// order. Returns sorted edge indices; weight is at least half the optimum.
pub fn greedy_general_matching(g: &EdgeWeightedGraph) -> Result<Vec<usize>> {
    if g.is_directed() {
        return Err(Error::DirectedGraph);
    }
    let key = |id: usize| {
        let e = g.edges()[id];
        (e.u.min(e.v), e.u.max(e.v), id)
    };
    let mut order: Vec<usize> = (0..g.edges().len()).collect();
    order.sort_by(|&a, &b| {
        g.edges()[b].w.total_cmp(&g.edges()[a].w).then_with(|| key(a).cmp(&key(b)))
    });
    let mut used = vec![false; g.vertices()];
    let mut picked = Vec::new();
    for id in order {
        let e = g.edges()[id];
        if !used[e.u] && !used[e.v] {
            used[e.u] = true;
            used[e.v] = true;
            picked.push(id);
        }
    }
    picked.sort_unstable();
    Ok(picked)
}

/// Every matching of `g` (including the empty one) as sorted edge-index
/// lists. Exponential; meant for graphs with at most a dozen vertices.
pub fn brute_force_matchings(g: &EdgeWeightedGraph) -> Vec<Vec<usize>> {
    fn rec(
        g: &EdgeWeightedGraph,
        next: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if next == g.edges().len() {
            out.push(cur.clone());
            return;
        }
        rec(g, next + 1, used, cur, out);
        let e = g.edges()[next];
        if !used[e.u] && !used[e.v] {
            used[e.u] = true;
            used[e.v] = true;
            cur.push(next);
            rec(g, next + 1, used, cur, out);
            cur.pop();
            used[e.u] = false;
            used[e.v] = false;
        }
    }
    let mut out = Vec::new();
    rec(g, 0, &mut vec![false; g.vertices()], &mut Vec::new(), &mut out);
    out
}
