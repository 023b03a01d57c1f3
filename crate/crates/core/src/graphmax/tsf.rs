use super::{Constraint, OrdinalGraphProblem, WeightMode};
use crate::algorithms::{threshold_steps, ThresholdPartition};
use crate::solvers::{greedy_general_matching, hungarian_max_weight, EdgeWeightedGraph, WeightMatrix};
use crate::{Error, QueryOracle, Result, SimulatedProfile};

type SolverFn = fn(&OrdinalGraphProblem, &EdgeWeightedGraph) -> Result<Vec<usize>>;

/// Full-information solver with approximation factor `rho`.
#[derive(Clone, Copy)]
pub struct ApproxSolverPlug {
    pub name: &'static str,
    pub rho: f64,
    solver: SolverFn,
}

impl std::fmt::Debug for ApproxSolverPlug {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ApproxSolverPlug").field("name", &self.name).field("rho", &self.rho).finish()
    }
}

impl ApproxSolverPlug {
    pub fn new(name: &'static str, rho: f64, solver: SolverFn) -> Self {
        Self { name, rho, solver }
    }

    /// Exact on bipartite graphs under any [`Constraint`].
    pub fn hungarian() -> Self {
        Self::new("hungarian", 1.0, hungarian_plug)
    }

    /// Greedy matching, `rho = 2`; undirected graphs with [`Constraint::Matching`].
    pub fn greedy() -> Self {
        Self::new("greedy", 2.0, greedy_plug)
    }

    /// Exhaustive search over feasible sets.
    pub fn brute_force() -> Self {
        Self::new("brute-force", 1.0, brute_plug)
    }

    pub fn solve(&self, prob: &OrdinalGraphProblem, weighted: &EdgeWeightedGraph) -> Result<Vec<usize>> {
        (self.solver)(prob, weighted)
    }
}

fn hungarian_plug(prob: &OrdinalGraphProblem, g: &EdgeWeightedGraph) -> Result<Vec<usize>> {
    let sides = prob
        .sides()
        .filter(|_| prob.mode() != WeightMode::Directed)
        .ok_or_else(|| Error::InvalidParameters("hungarian plug needs a bipartite graph".into()))?;
    let n = prob.vertices();
    let left: Vec<usize> = (0..n).filter(|&v| sides[v]).collect();
    let right: Vec<usize> = (0..n).filter(|&v| !sides[v]).collect();
    let mut col = vec![usize::MAX; n];
    for (c, &v) in right.iter().enumerate() {
        col[v] = c;
    }
    let mut slots = Vec::new();
    for &v in &left {
        let copies = match prob.constraint() {
            Constraint::Capacity(caps) => caps[v],
            _ => 1,
        };
        slots.extend(std::iter::repeat_n(v, copies));
    }
    let perfect = *prob.constraint() == Constraint::PerfectMatching;
    // an offset above the total weight makes every max-weight assignment use
    // as many real edges as possible
    let offset = if perfect { 1.0 + g.edges().iter().map(|e| e.w).sum::<f64>() } else { 0.0 };

    let size = slots.len().max(right.len());
    let mut data = vec![vec![0.0; size]; size];
    let mut edge_at = vec![vec![None; size]; size];
    for (id, e) in g.edges().iter().enumerate() {
        let (l, r) = if sides[e.u] { (e.u, e.v) } else { (e.v, e.u) };
        for (s, _) in slots.iter().enumerate().filter(|(_, &x)| x == l) {
            data[s][col[r]] = e.w + offset;
            edge_at[s][col[r]] = Some(id);
        }
    }
    let m = hungarian_max_weight(&WeightMatrix::new(data)?)?;
    let mut picked: Vec<usize> =
        (0..size).filter_map(|s| edge_at[s][m.item_of(s)]).collect();
    picked.sort_unstable();
    Ok(picked)
}

fn greedy_plug(prob: &OrdinalGraphProblem, g: &EdgeWeightedGraph) -> Result<Vec<usize>> {
    if *prob.constraint() != Constraint::Matching {
        return Err(Error::InvalidParameters(format!(
            "greedy plug handles plain matchings, not `{}`",
            prob.constraint().as_str()
        )));
    }
    greedy_general_matching(g)
}

fn brute_plug(prob: &OrdinalGraphProblem, g: &EdgeWeightedGraph) -> Result<Vec<usize>> {
    let mut best: Option<(f64, Vec<usize>)> = None;
    for set in prob.enumerate_feasible()? {
        let w = g.weight_of(&set);
        if best.as_ref().is_none_or(|(bw, _)| w > *bw) {
            best = Some((w, set));
        }
    }
    best.map(|(_, s)| s)
        .ok_or_else(|| Error::InfeasibleSolution("no feasible edge set".into()))
}

/// Position in `agent`'s ranking of its top neighbor whose edge lies in some
/// feasible set.
pub(super) fn top_feasible_position(prob: &OrdinalGraphProblem, agent: usize) -> Option<usize> {
    prob.ranking(agent).iter().position(|&j| {
        prob.edge_id(agent, j).is_some_and(|id| prob.edge_feasible(id))
    })
}

/// Highest-ranked neighbor of `agent` whose edge belongs to some feasible set.
pub fn find_top_feasible(agent: usize, prob: &OrdinalGraphProblem) -> Result<usize> {
    if agent >= prob.vertices() || !prob.is_agent(agent) {
        return Err(Error::InvalidParameters(format!("{agent} is not an agent")));
    }
    top_feasible_position(prob, agent)
        .map(|p| prob.ranking(agent)[p])
        .ok_or(Error::NoFeasibleEdge { agent })
}

#[derive(Debug, Clone)]
pub struct GraphTsfOutput {
    pub edges: Vec<usize>,
    /// Simulated edge weights, indexed like the problem's edges.
    pub simulated_weights: Vec<f64>,
    /// Per-vertex simulated values (rows of items stay zero).
    pub simulated: SimulatedProfile,
    /// `(agent, partition over its ranking from the top feasible neighbor)`.
    pub partitions: Vec<(usize, ThresholdPartition)>,
}

/// Threshold step functions with `alpha_l = r^{-l/(lambda+1)}` per agent,
/// simulated edge weights, then the plug's solution on the simulated graph.
///
/// Agents with no feasible edge are skipped and make no queries.
pub fn lambda_a_tsf_run<O: QueryOracle + ?Sized>(
    prob: &OrdinalGraphProblem,
    oracle: &mut O,
    lambda: usize,
    plug: &ApproxSolverPlug,
) -> Result<GraphTsfOutput> {
    let n = prob.vertices();
    if oracle.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: oracle.n() });
    }
    let base = prob.r().max(1) as f64;
    let mut simulated = SimulatedProfile::zeros(n);
    let mut partitions = Vec::new();
    for agent in prob.agents() {
        let Some(start) = top_feasible_position(prob, agent) else { continue };
        let slice = &prob.ranking(agent)[start..];
        let part = threshold_steps(slice.len(), base, lambda, |pos| oracle.query(agent, slice[pos]))?;
        for (pos, &j) in slice.iter().enumerate().take(part.boundaries[lambda] + 1) {
            simulated.set(agent, j, part.simulated_value(pos));
        }
        partitions.push((agent, part));
    }
    let simulated_weights = prob.weights_with(|i, j| simulated.value(i, j));
    let weighted = prob.graph().with_weights(&simulated_weights)?;
    let edges = plug.solve(prob, &weighted)?;
    if !prob.is_feasible(&edges) {
        return Err(Error::InfeasibleSolution(format!("{} returned {edges:?}", plug.name)));
    }
    Ok(GraphTsfOutput { edges, simulated_weights, simulated, partitions })
}

pub fn lambda_a_tsf<O: QueryOracle + ?Sized>(
    prob: &OrdinalGraphProblem,
    oracle: &mut O,
    lambda: usize,
    plug: &ApproxSolverPlug,
) -> Result<Vec<usize>> {
    lambda_a_tsf_run(prob, oracle, lambda, plug).map(|out| out.edges)
}

/// `3 rho r^{1/(lambda+1)}`.
pub fn graph_distortion_bound(r: usize, lambda: usize, rho: f64) -> f64 {
    3.0 * rho * (r.max(1) as f64).powf(1.0 / (lambda as f64 + 1.0))
}

/// Best feasible set under `weights` by exhaustive search, with its weight.
pub fn graph_opt(prob: &OrdinalGraphProblem, weights: &[f64]) -> Result<(Vec<usize>, f64)> {
    let g = prob.graph().with_weights(weights)?;
    let set = brute_plug(prob, &g)?;
    let w = g.weight_of(&set);
    Ok((set, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphmax::{one_sided_problem, random_graph_instance, GraphKind};
    use crate::algorithms::{lambda_tsf_run, tsf_query_budget};
    use crate::{derive_ordinal, distortion_ratio, CountingOracle, ValuationProfile, TOL};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn top_feasible_for_perfect_matching() {
        // agents 0 (ranks a=2 over b=3) and 1; items a, b
        let p = OrdinalGraphProblem::new(
            4,
            &[(0, 2), (0, 3), (1, 2)],
            &[0, 1],
            vec![vec![2, 3], vec![2], vec![], vec![]],
            WeightMode::AgentItem,
            Constraint::PerfectMatching,
        )
        .unwrap();
        assert_eq!(find_top_feasible(0, &p).unwrap(), 3);
        assert_eq!(find_top_feasible(1, &p).unwrap(), 2);
        assert!(find_top_feasible(2, &p).is_err());
    }

    #[test]
    fn top_feasible_for_one_sided_is_top_item() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (p, _) = random_graph_instance(&mut rng, GraphKind::OneSided, 10, 1.0).unwrap();
        for a in p.agents() {
            assert_eq!(find_top_feasible(a, &p).unwrap(), p.ranking(a)[0]);
        }
    }

    #[test]
    fn no_feasible_edge() {
        let p = OrdinalGraphProblem::new(
            4,
            &[(0, 1), (0, 2), (0, 3)],
            &[0, 1, 2, 3],
            vec![vec![1, 2, 3], vec![0], vec![0], vec![0]],
            WeightMode::UndirectedSum,
            Constraint::PerfectMatching,
        )
        .unwrap();
        assert!(matches!(find_top_feasible(1, &p), Err(Error::NoFeasibleEdge { agent: 1 })));
    }

    /// Brute-force perfect-matching membership of each edge.
    fn edges_in_some_perfect_matching(p: &OrdinalGraphProblem) -> Vec<bool> {
        let mut hit = vec![false; p.edge_count()];
        for s in p.enumerate_feasible().unwrap() {
            for e in s {
                hit[e] = true;
            }
        }
        hit
    }

    #[test]
    fn perfect_feasibility_agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let half = rng.random_range(1..=5);
            let prob = rng.random_range(0.2..0.9);
            let (p, _) = random_graph_instance(&mut rng, GraphKind::TwoSidedPerfect, 2 * half, prob).unwrap();
            let hit = edges_in_some_perfect_matching(&p);
            for (id, &h) in hit.iter().enumerate() {
                assert_eq!(p.edge_feasible(id), h, "edge {id}");
            }
        }
    }

    #[test]
    fn single_edge_lambda_zero() {
        let p = OrdinalGraphProblem::new(
            2,
            &[(0, 1)],
            &[0, 1],
            vec![vec![1], vec![0]],
            WeightMode::UndirectedSum,
            Constraint::Matching,
        )
        .unwrap();
        let truth = ValuationProfile::unrestricted(vec![vec![0.0, 0.3], vec![0.6, 0.0]]).unwrap();
        let mut o = CountingOracle::truthful(&truth);
        let out = lambda_a_tsf_run(&p, &mut o, 0, &ApproxSolverPlug::greedy()).unwrap();
        assert_eq!(out.edges, vec![0]);
        assert_eq!(o.queries_of(0), 1);
        assert_eq!(o.queries_of(1), 1);
        assert!((out.simulated_weights[0] - 0.9).abs() < TOL);
    }

    #[test]
    fn one_sided_matches_lambda_tsf() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.random_range(1..=16);
            let lambda = rng.random_range(0..=3);
            let rows: Vec<Vec<f64>> =
                (0..n).map(|_| (0..n).map(|_| rng.random::<f64>().powi(3)).collect()).collect();
            let truth = ValuationProfile::unrestricted(rows).unwrap();
            let ord = derive_ordinal(&truth);
            let mut o1 = CountingOracle::truthful(&truth);
            let base = lambda_tsf_run(&ord, &mut o1, lambda).unwrap();

            let (prob, lifted) = one_sided_problem(&ord, Some(&truth)).unwrap();
            let lifted = lifted.unwrap();
            let mut o2 = CountingOracle::truthful(&lifted);
            let out = lambda_a_tsf_run(&prob, &mut o2, lambda, &ApproxSolverPlug::hungarian()).unwrap();

            for i in 0..n {
                for j in 0..n {
                    assert_eq!(base.simulated.value(i, j), out.simulated.value(i, n + j));
                }
                assert_eq!(o1.queries_of(i), o2.queries_of(i));
            }
            let sim_base = base.matching.welfare_on(base.simulated.rows());
            let sim_graph: f64 = out.edges.iter().map(|&e| out.simulated_weights[e]).sum();
            assert!((sim_base - sim_graph).abs() < 1e-9);
            assert!(o2.max_queries() <= tsf_query_budget(n, lambda));
        }
    }

    #[test]
    fn general_matching_greedy_within_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let u = rng.random_range(2..=10);
            let lambda = rng.random_range(0..=3);
            let (p, truth) = random_graph_instance(&mut rng, GraphKind::General, u, 0.6).unwrap();
            let mut o = CountingOracle::truthful(&truth);
            let out = lambda_a_tsf_run(&p, &mut o, lambda, &ApproxSolverPlug::greedy()).unwrap();
            let w = p.true_weights(&truth).unwrap();
            for (s, t) in out.simulated_weights.iter().zip(&w) {
                assert!(*s <= t + TOL);
            }
            let (_, opt) = graph_opt(&p, &w).unwrap();
            let alg: f64 = out.edges.iter().map(|&e| w[e]).sum();
            let d = distortion_ratio(opt, alg).unwrap();
            assert!(d <= graph_distortion_bound(p.r(), lambda, 2.0) + TOL);
            assert!(o.max_queries() <= p.query_budget(lambda));
        }
    }

    #[test]
    fn plugs_agree_on_perfect_matching() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..80 {
            let half = rng.random_range(1..=5);
            let (p, truth) = random_graph_instance(&mut rng, GraphKind::TwoSidedPerfect, 2 * half, 0.5).unwrap();
            let w = p.true_weights(&truth).unwrap();
            let g = p.graph().with_weights(&w).unwrap();
            let h = ApproxSolverPlug::hungarian().solve(&p, &g).unwrap();
            assert!(p.is_feasible(&h));
            let (_, opt) = graph_opt(&p, &w).unwrap();
            assert!((g.weight_of(&h) - opt).abs() < 1e-9);
        }
    }

    #[test]
    fn hungarian_plug_with_capacities() {
        let p = OrdinalGraphProblem::new(
            5,
            &[(0, 2), (0, 3), (0, 4), (1, 2)],
            &[0, 1],
            vec![vec![2, 3, 4], vec![2], vec![], vec![], vec![]],
            WeightMode::AgentItem,
            Constraint::Capacity(vec![2, 1, 0, 0, 0]),
        )
        .unwrap();
        let g = p.graph().with_weights(&[0.9, 0.5, 0.4, 0.8]).unwrap();
        let h = ApproxSolverPlug::hungarian().solve(&p, &g).unwrap();
        let b = ApproxSolverPlug::brute_force().solve(&p, &g).unwrap();
        assert!(p.is_feasible(&h));
        assert!((g.weight_of(&h) - g.weight_of(&b)).abs() < 1e-12);
        assert!((g.weight_of(&h) - 1.7).abs() < 1e-12);
    }

    #[test]
    fn greedy_rejects_other_constraints() {
        let p = OrdinalGraphProblem::new(
            2,
            &[(0, 1)],
            &[0, 1],
            vec![vec![1], vec![0]],
            WeightMode::UndirectedSum,
            Constraint::PerfectMatching,
        )
        .unwrap();
        assert!(ApproxSolverPlug::greedy().solve(&p, p.graph()).is_err());
        assert_eq!(ApproxSolverPlug::hungarian().solve(&p, p.graph()).unwrap(), vec![0]);
    }
}
