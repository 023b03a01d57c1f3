//! Maximization over graphs with ordinal preferences.
//!
//! Vertices are agents or items. Agents rank their neighbors and answer
//! value queries; edge weights follow from the values depending on the
//! [`WeightMode`]. The feasible edge sets are described by a [`Constraint`].

mod constraint;
mod gen;
mod io;
mod tsf;

pub use constraint::Constraint;
pub use gen::{one_sided_problem, random_graph_instance, GraphKind};
pub use io::{parse_graph_instance, write_graph_instance};
pub use tsf::{
    find_top_feasible, graph_distortion_bound, graph_opt, lambda_a_tsf, lambda_a_tsf_run,
    ApproxSolverPlug, GraphTsfOutput,
};

use std::collections::HashMap;

use crate::solvers::{Edge, EdgeWeightedGraph};
use crate::{Error, Result, ValuationProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightMode {
    /// `w({i, j}) = v_i(j)` for agent `i` and item `j`.
    AgentItem,
    /// `w({i, j}) = v_i(j) + v_j(i)` between two agents.
    UndirectedSum,
    /// `w((i, j)) = v_i(j)`.
    Directed,
}

impl WeightMode {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightMode::AgentItem => "agent-item",
            WeightMode::UndirectedSum => "undirected-sum",
            WeightMode::Directed => "directed",
        }
    }
}

impl std::str::FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "agent-item" => Ok(WeightMode::AgentItem),
            "undirected-sum" => Ok(WeightMode::UndirectedSum),
            "directed" => Ok(WeightMode::Directed),
            other => Err(Error::InvalidParameters(format!("unknown weight mode `{other}`"))),
        }
    }
}

/// A graph whose edge weights are hidden behind agents' valuations.
///
/// In agent-item mode every edge is stored with the agent as `u`. Directed
/// edges are `(u, v)` with the valuing agent `u`.
#[derive(Debug, Clone)]
pub struct OrdinalGraphProblem {
    graph: EdgeWeightedGraph,
    is_agent: Vec<bool>,
    rankings: Vec<Vec<usize>>,
    mode: WeightMode,
    constraint: Constraint,
    sides: Option<Vec<bool>>,
    lookup: HashMap<(usize, usize), usize>,
    r: usize,
}

impl OrdinalGraphProblem {
    /// `rankings[v]` lists the neighbors of agent `v`, most preferred first,
    /// and is empty for items.
    pub fn new(
        vertices: usize,
        edges: &[(usize, usize)],
        agents: &[usize],
        rankings: Vec<Vec<usize>>,
        mode: WeightMode,
        constraint: Constraint,
    ) -> Result<Self> {
        let mut is_agent = vec![false; vertices];
        for &a in agents {
            if a >= vertices {
                return Err(Error::InvalidParameters(format!("agent {a} out of range")));
            }
            is_agent[a] = true;
        }
        if rankings.len() != vertices {
            return Err(Error::DimensionMismatch { expected: vertices, got: rankings.len() });
        }

        let mut stored = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            let (u, v) = match mode {
                WeightMode::AgentItem => match (is_agent.get(u), is_agent.get(v)) {
                    (Some(true), Some(false)) => (u, v),
                    (Some(false), Some(true)) => (v, u),
                    _ => {
                        return Err(Error::InvalidParameters(format!(
                            "edge ({u}, {v}) must join an agent and an item"
                        )))
                    }
                },
                _ => {
                    if !is_agent.get(u).copied().unwrap_or(false)
                        || !is_agent.get(v).copied().unwrap_or(false)
                    {
                        return Err(Error::InvalidParameters(format!(
                            "edge ({u}, {v}) must join two agents"
                        )));
                    }
                    (u, v)
                }
            };
            stored.push(Edge { u, v, w: 0.0 });
        }
        let directed = mode == WeightMode::Directed;
        let graph = EdgeWeightedGraph::new(vertices, stored, directed)?;

        let mut lookup = HashMap::new();
        for (id, e) in graph.edges().iter().enumerate() {
            let mut keys = vec![(e.u, e.v)];
            if mode == WeightMode::UndirectedSum {
                keys.push((e.v, e.u));
            }
            for key in keys {
                if lookup.insert(key, id).is_some() {
                    return Err(Error::InvalidParameters(format!(
                        "duplicate edge ({}, {})",
                        e.u, e.v
                    )));
                }
            }
        }

        for (v, ranking) in rankings.iter().enumerate() {
            let expected: Vec<usize> = {
                let mut nb: Vec<usize> =
                    lookup.keys().filter(|(a, _)| *a == v).map(|&(_, b)| b).collect();
                nb.sort_unstable();
                nb
            };
            if !is_agent[v] && !ranking.is_empty() {
                return Err(Error::InvalidParameters(format!("item {v} has a ranking")));
            }
            let mut got = ranking.clone();
            got.sort_unstable();
            if is_agent[v] && got != expected {
                return Err(Error::InvalidProfile(format!(
                    "ranking of agent {v} is not a permutation of its neighbors"
                )));
            }
        }

        let sides = match mode {
            WeightMode::AgentItem => Some(is_agent.clone()),
            _ => two_coloring(&graph),
        };
        constraint.validate(&graph, &is_agent, mode, sides.as_deref())?;

        let mut prob = Self { graph, is_agent, rankings, mode, constraint, sides, lookup, r: 0 };
        prob.r = prob.constraint.max_solution_size(&prob);
        Ok(prob)
    }

    pub fn vertices(&self) -> usize {
        self.graph.vertices()
    }

    /// Skeleton graph; every weight is 0.
    pub fn graph(&self) -> &EdgeWeightedGraph {
        &self.graph
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edges().len()
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.graph.edges()[id]
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    pub fn is_agent(&self, v: usize) -> bool {
        self.is_agent[v]
    }

    pub fn agents(&self) -> Vec<usize> {
        (0..self.vertices()).filter(|&v| self.is_agent[v]).collect()
    }

    pub fn ranking(&self, agent: usize) -> &[usize] {
        &self.rankings[agent]
    }

    /// 2-coloring of the vertices when the graph is bipartite; in agent-item
    /// mode, `true` marks agents.
    pub fn sides(&self) -> Option<&[bool]> {
        self.sides.as_deref()
    }

    /// `max |T|` over feasible sets `T`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Edge between `agent` and its neighbor `other`.
    pub fn edge_id(&self, agent: usize, other: usize) -> Option<usize> {
        self.lookup.get(&(agent, other)).copied()
    }

    pub fn edge_feasible(&self, id: usize) -> bool {
        self.constraint.edge_feasible(self, id)
    }

    pub fn is_feasible(&self, edge_ids: &[usize]) -> bool {
        self.constraint.is_feasible(self, edge_ids)
    }

    /// All feasible edge sets. Exponential.
    pub fn enumerate_feasible(&self) -> Result<Vec<Vec<usize>>> {
        self.constraint.enumerate(self)
    }

    /// Edge weights under Eq. (1) for per-vertex values `value(i, j)`.
    pub fn weights_with<F: Fn(usize, usize) -> f64>(&self, value: F) -> Vec<f64> {
        self.graph
            .edges()
            .iter()
            .map(|e| match self.mode {
                WeightMode::UndirectedSum => value(e.u, e.v) + value(e.v, e.u),
                _ => value(e.u, e.v),
            })
            .collect()
    }

    /// True edge weights. `truth` is indexed by vertex on both axes.
    pub fn true_weights(&self, truth: &ValuationProfile) -> Result<Vec<f64>> {
        if truth.n() != self.vertices() {
            return Err(Error::DimensionMismatch { expected: self.vertices(), got: truth.n() });
        }
        Ok(self.weights_with(|i, j| truth.value(i, j)))
    }

    /// Number of ranked entries an agent's threshold search runs over: its
    /// ranking from the top feasible neighbor down. Zero without a feasible
    /// edge.
    pub fn search_length(&self, agent: usize) -> usize {
        match tsf::top_feasible_position(self, agent) {
            Some(p) => self.rankings[agent].len() - p,
            None => 0,
        }
    }

    /// Per-agent query bound `1 + lambda * ceil(log2 L)`, where `L` is the
    /// longest search list.
    pub fn query_budget(&self, lambda: usize) -> usize {
        let len = self.agents().into_iter().map(|a| self.search_length(a)).max().unwrap_or(0);
        1 + lambda * crate::algorithms::ceil_log2(len)
    }
}

fn two_coloring(g: &EdgeWeightedGraph) -> Option<Vec<bool>> {
    let n = g.vertices();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut color: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(true);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let cx = color[x]?;
            for &y in &adj[x] {
                match color[y] {
                    None => {
                        color[y] = Some(!cx);
                        stack.push(y);
                    }
                    Some(cy) if cy == cx => return None,
                    _ => {}
                }
            }
        }
    }
    color.into_iter().collect()
}
