use super::{OrdinalGraphProblem, WeightMode};
use crate::solvers::{brute_force_matchings, is_matching, max_cardinality_bipartite, BipartiteGraph, EdgeWeightedGraph};
use crate::{Error, Result};

/// Largest vertex count for which general-graph `r` is computed exactly.
const EXACT_R_MAX_VERTICES: usize = 20;

/// Families of feasible edge sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// Vertex-disjoint edges. Covers one-sided matching (every matching
    /// extends to a perfect one at no loss) and general graph matching.
    Matching,
    /// Vertex-disjoint edges covering every vertex; bipartite graphs only.
    PerfectMatching,
    /// Agent-item graphs: each item on at most one edge, agent `i` on at
    /// most `caps[i]` edges. Entries for items are ignored.
    Capacity(Vec<usize>),
}

impl Constraint {
    pub fn as_str(&self) -> &'static str {
        match self {
            Constraint::Matching => "matching",
            Constraint::PerfectMatching => "perfect",
            Constraint::Capacity(_) => "capacity",
        }
    }

    pub(super) fn validate(
        &self,
        g: &EdgeWeightedGraph,
        is_agent: &[bool],
        mode: WeightMode,
        sides: Option<&[bool]>,
    ) -> Result<()> {
        match self {
            Constraint::Matching => Ok(()),
            Constraint::PerfectMatching => {
                if sides.is_none() || mode == WeightMode::Directed {
                    Err(Error::InvalidParameters(
                        "perfect matching needs an undirected bipartite graph".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            Constraint::Capacity(caps) => {
                if mode != WeightMode::AgentItem {
                    Err(Error::InvalidParameters("capacities need agent-item mode".into()))
                } else if caps.len() != g.vertices() || is_agent.len() != caps.len() {
                    Err(Error::DimensionMismatch { expected: g.vertices(), got: caps.len() })
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn edge_feasible(&self, prob: &OrdinalGraphProblem, id: usize) -> bool {
        let e = prob.edge(id);
        match self {
            Constraint::Matching => true,
            Constraint::Capacity(caps) => caps[e.u] >= 1,
            Constraint::PerfectMatching => {
                let n = prob.vertices();
                if n % 2 == 1 {
                    return false;
                }
                let rest = side_graph(prob, |x| x != e.u && x != e.v);
                max_cardinality_bipartite(&rest).len() == (n - 2) / 2
            }
        }
    }

    pub fn is_feasible(&self, prob: &OrdinalGraphProblem, edge_ids: &[usize]) -> bool {
        let g = prob.graph();
        let mut seen = vec![false; g.edges().len()];
        for &id in edge_ids {
            if id >= seen.len() || seen[id] {
                return false;
            }
            seen[id] = true;
        }
        match self {
            Constraint::Matching => is_matching(g, edge_ids),
            Constraint::PerfectMatching => {
                is_matching(g, edge_ids) && 2 * edge_ids.len() == g.vertices()
            }
            Constraint::Capacity(caps) => {
                let mut load = vec![0usize; g.vertices()];
                for &id in edge_ids {
                    let e = g.edges()[id];
                    load[e.u] += 1;
                    load[e.v] += 1;
                }
                (0..g.vertices()).all(|v| {
                    if prob.is_agent(v) {
                        load[v] <= caps[v]
                    } else {
                        load[v] <= 1
                    }
                })
            }
        }
    }

    pub(super) fn max_solution_size(&self, prob: &OrdinalGraphProblem) -> usize {
        match self {
            Constraint::Matching => match prob.sides() {
                Some(_) => max_cardinality_bipartite(&side_graph(prob, |_| true)).len(),
                None => general_matching_number(prob.graph()),
            },
            Constraint::PerfectMatching => {
                let n = prob.vertices();
                let size = max_cardinality_bipartite(&side_graph(prob, |_| true)).len();
                if 2 * size == n {
                    size
                } else {
                    0
                }
            }
            Constraint::Capacity(caps) => {
                // one left vertex per unit of capacity
                let g = prob.graph();
                let mut slot_start = vec![0usize; g.vertices() + 1];
                for v in 0..g.vertices() {
                    let c = if prob.is_agent(v) { caps[v] } else { 0 };
                    slot_start[v + 1] = slot_start[v] + c;
                }
                let mut bg = BipartiteGraph::new(slot_start[g.vertices()], g.vertices());
                for e in g.edges() {
                    for slot in slot_start[e.u]..slot_start[e.u + 1] {
                        bg.add_edge(slot, e.v);
                    }
                }
                max_cardinality_bipartite(&bg).len()
            }
        }
    }

    pub(super) fn enumerate(&self, prob: &OrdinalGraphProblem) -> Result<Vec<Vec<usize>>> {
        let g = prob.graph();
        if g.edges().len() > 64 {
            return Err(Error::TooLarge { n: g.edges().len(), max: 64 });
        }
        match self {
            Constraint::Matching => Ok(brute_force_matchings(g)),
            Constraint::PerfectMatching => Ok(brute_force_matchings(g)
                .into_iter()
                .filter(|m| 2 * m.len() == g.vertices())
                .collect()),
            Constraint::Capacity(_) => {
                let mut out = Vec::new();
                let mut cur = Vec::new();
                enumerate_capacity(prob, 0, &mut cur, &mut out);
                Ok(out)
            }
        }
    }
}

fn enumerate_capacity(
    prob: &OrdinalGraphProblem,
    next: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if next == prob.edge_count() {
        out.push(cur.clone());
        return;
    }
    enumerate_capacity(prob, next + 1, cur, out);
    cur.push(next);
    if prob.constraint().is_feasible(prob, cur) {
        enumerate_capacity(prob, next + 1, cur, out);
    }
    cur.pop();
}

/// Bipartite view of the problem (left side = `sides[v]`), restricted to
/// vertices passing `keep`. Left and right vertices keep their global
/// indices, so unused indices are simply isolated.
fn side_graph<F: Fn(usize) -> bool>(prob: &OrdinalGraphProblem, keep: F) -> BipartiteGraph {
    let sides = prob.sides().expect("bipartite problem");
    let n = prob.vertices();
    let mut bg = BipartiteGraph::new(n, n);
    for e in prob.graph().edges() {
        if !keep(e.u) || !keep(e.v) {
            continue;
        }
        let (l, r) = if sides[e.u] { (e.u, e.v) } else { (e.v, e.u) };
        bg.add_edge(l, r);
    }
    bg
}

/// Matching number of a general graph by memoized search over vertex
/// subsets. Above [`EXACT_R_MAX_VERTICES`] returns the bound `floor(|U|/2)`.
fn general_matching_number(g: &EdgeWeightedGraph) -> usize {
    let n = g.vertices();
    if n > EXACT_R_MAX_VERTICES {
        return (n / 2).min(g.edges().len());
    }
    let mut adj = vec![0u32; n];
    for e in g.edges() {
        adj[e.u] |= 1 << e.v;
        adj[e.v] |= 1 << e.u;
    }
    fn best(mask: u32, adj: &[u32], memo: &mut [u8]) -> u8 {
        if mask == 0 {
            return 0;
        }
        if memo[mask as usize] != u8::MAX {
            return memo[mask as usize];
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut b = best(rest, adj, memo);
        let mut nb = adj[v] & rest;
        while nb != 0 {
            let u = nb.trailing_zeros();
            nb &= nb - 1;
            b = b.max(1 + best(rest & !(1 << u), adj, memo));
        }
        memo[mask as usize] = b;
        b
    }
    let mut memo = vec![u8::MAX; 1usize << n];
    best(((1u64 << n) - 1) as u32, &adj, &mut memo) as usize
}
