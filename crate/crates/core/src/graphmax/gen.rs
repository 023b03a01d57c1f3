use rand::Rng;

use super::{Constraint, OrdinalGraphProblem, WeightMode};
use crate::{Error, OrdinalProfile, Result, ValuationProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// Complete bipartite agents-to-items graph, `|U|/2` of each.
    OneSided,
    /// Random undirected graph among agents.
    General,
    /// Random bipartite graph among agents containing a perfect matching.
    TwoSidedPerfect,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::OneSided => "one-sided",
            GraphKind::General => "general",
            GraphKind::TwoSidedPerfect => "two-sided-perfect",
        }
    }
}

impl std::str::FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one-sided" => Ok(GraphKind::OneSided),
            "general" => Ok(GraphKind::General),
            "two-sided-perfect" => Ok(GraphKind::TwoSidedPerfect),
            other => Err(Error::InvalidParameters(format!("unknown graph kind `{other}`"))),
        }
    }
}

/// One-sided matching as a graph problem: agents `0..n`, items `n..2n`.
/// With `truth`, also returns the values lifted to `2n` vertices.
pub fn one_sided_problem(
    ord: &OrdinalProfile,
    truth: Option<&ValuationProfile>,
) -> Result<(OrdinalGraphProblem, Option<ValuationProfile>)> {
    let n = ord.n();
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, n + j))).collect();
    let mut rankings: Vec<Vec<usize>> =
        (0..n).map(|i| ord.ranking(i).iter().map(|&j| n + j).collect()).collect();
    rankings.resize(2 * n, Vec::new());
    let agents: Vec<usize> = (0..n).collect();
    let prob = OrdinalGraphProblem::new(
        2 * n,
        &edges,
        &agents,
        rankings,
        WeightMode::AgentItem,
        Constraint::Matching,
    )?;
    let lifted = match truth {
        None => None,
        Some(t) => {
            if t.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: t.n() });
            }
            let mut rows = vec![vec![0.0; 2 * n]; 2 * n];
            for (i, row) in rows.iter_mut().enumerate().take(n) {
                row[n..].copy_from_slice(t.row(i));
            }
            Some(ValuationProfile::unrestricted(rows)?)
        }
    };
    Ok((prob, lifted))
}

/// Random instance on `vertices` vertices with edge probability `p` and
/// values `U(0,1)^3` on every agent-neighbor pair. Rankings sort values
/// descending, ties by vertex index.
pub fn random_graph_instance<R: Rng + ?Sized>(
    rng: &mut R,
    kind: GraphKind,
    vertices: usize,
    p: f64,
) -> Result<(OrdinalGraphProblem, ValuationProfile)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameters(format!("edge probability {p} outside [0, 1]")));
    }
    let even = || {
        if vertices.is_multiple_of(2) {
            Ok(vertices / 2)
        } else {
            Err(Error::InvalidParameters(format!("{} needs an even vertex count", kind.as_str())))
        }
    };
    let (edges, agents, mode, constraint) = match kind {
        GraphKind::OneSided => {
            let h = even()?;
            let edges: Vec<(usize, usize)> =
                (0..h).flat_map(|i| (0..h).map(move |j| (i, h + j))).collect();
            (edges, (0..h).collect::<Vec<_>>(), WeightMode::AgentItem, Constraint::Matching)
        }
        GraphKind::General => {
            let mut edges = Vec::new();
            for u in 0..vertices {
                for v in u + 1..vertices {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            (edges, (0..vertices).collect(), WeightMode::UndirectedSum, Constraint::Matching)
        }
        GraphKind::TwoSidedPerfect => {
            let h = even()?;
            let mut edges = Vec::new();
            for u in 0..h {
                for v in h..vertices {
                    if v == u + h || rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            (edges, (0..vertices).collect(), WeightMode::UndirectedSum, Constraint::PerfectMatching)
        }
    };

    let mut values = vec![vec![0.0; vertices]; vertices];
    let mut neighbors = vec![Vec::new(); vertices];
    for &(u, v) in &edges {
        neighbors[u].push(v);
        if mode == WeightMode::UndirectedSum {
            neighbors[v].push(u);
        }
    }
    let mut rankings = vec![Vec::new(); vertices];
    for &a in &agents {
        let mut nb = std::mem::take(&mut neighbors[a]);
        nb.sort_unstable();
        for &j in &nb {
            values[a][j] = rng.random::<f64>().powi(3);
        }
        nb.sort_by(|&x, &y| values[a][y].total_cmp(&values[a][x]));
        rankings[a] = nb;
    }
    let prob = OrdinalGraphProblem::new(vertices, &edges, &agents, rankings, mode, constraint)?;
    Ok((prob, ValuationProfile::unrestricted(values)?))
}
