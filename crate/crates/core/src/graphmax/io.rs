//! Graph problem files.
//!
//! ```text
//! graph undirected 4
//! mode undirected-sum
//! constraint matching
//! agents 0 1 2 3
//! 0 1
//! 1 2
//! 2 3
//! rank 0 1
//! rank 1 2 0
//! rank 2 1 3
//! rank 3 2
//! value 1 2 0.75
//! ```
//!
//! `constraint` is `matching`, `perfect`, or `capacity c_0 ... c_{|U|-1}`.
//! `agents` defaults to every vertex. `value i j x` lines are optional; when
//! present they give the hidden values (missing pairs are 0).

use std::fmt::Write as _;

use super::{Constraint, OrdinalGraphProblem, WeightMode};
use crate::{Error, Result, ValuationProfile};

pub fn write_graph_instance(prob: &OrdinalGraphProblem, truth: Option<&ValuationProfile>) -> String {
    let dir = if prob.mode() == WeightMode::Directed { "directed" } else { "undirected" };
    let mut out = format!("graph {dir} {}\nmode {}\n", prob.vertices(), prob.mode().as_str());
    match prob.constraint() {
        Constraint::Capacity(caps) => {
            let caps: Vec<String> = caps.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "constraint capacity {}", caps.join(" "));
        }
        c => {
            let _ = writeln!(out, "constraint {}", c.as_str());
        }
    }
    let agents: Vec<String> = prob.agents().iter().map(|a| a.to_string()).collect();
    let _ = writeln!(out, "agents {}", agents.join(" "));
    for e in prob.graph().edges() {
        let _ = writeln!(out, "{} {}", e.u, e.v);
    }
    for a in prob.agents() {
        let mut line = format!("rank {a}");
        for j in prob.ranking(a) {
            let _ = write!(line, " {j}");
        }
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(t) = truth {
        for a in prob.agents() {
            for &j in prob.ranking(a) {
                let _ = writeln!(out, "value {a} {j} {}", t.value(a, j));
            }
        }
    }
    out
}

pub fn parse_graph_instance(text: &str) -> Result<(OrdinalGraphProblem, Option<ValuationProfile>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let h: Vec<&str> = header.split_whitespace().collect();
    let bad = |line: usize, msg: String| Error::Parse { line, msg };
    if h.len() != 3 || h[0] != "graph" || !matches!(h[1], "directed" | "undirected") {
        return Err(bad(hline, format!("bad header `{header}`")));
    }
    let directed = h[1] == "directed";
    let n: usize = h[2].parse().map_err(|_| bad(hline, format!("bad vertex count `{}`", h[2])))?;

    let mut mode = None;
    let mut constraint = Constraint::Matching;
    let mut agents: Option<Vec<usize>> = None;
    let mut edges = Vec::new();
    let mut rankings = vec![Vec::new(); n];
    let mut values: Vec<(usize, usize, f64)> = Vec::new();

    for (no, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let nums = |from: usize| -> Result<Vec<usize>> {
            parts[from..]
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| bad(no, format!("bad index `{t}`"))))
                .collect()
        };
        match parts[0] {
            "mode" if parts.len() == 2 => mode = Some(parts[1].parse::<WeightMode>()?),
            "constraint" if parts.len() >= 2 => {
                constraint = match parts[1] {
                    "matching" => Constraint::Matching,
                    "perfect" => Constraint::PerfectMatching,
                    "capacity" => Constraint::Capacity(nums(2)?),
                    other => return Err(bad(no, format!("unknown constraint `{other}`"))),
                }
            }
            "agents" => agents = Some(nums(1)?),
            "rank" if parts.len() >= 2 => {
                let v = nums(1)?;
                let a = v[0];
                if a >= n {
                    return Err(bad(no, format!("agent {a} out of range")));
                }
                rankings[a] = v[1..].to_vec();
            }
            "value" if parts.len() == 4 => {
                let i: usize = parts[1].parse().map_err(|_| bad(no, "bad agent".into()))?;
                let j: usize = parts[2].parse().map_err(|_| bad(no, "bad vertex".into()))?;
                let x: f64 = parts[3].parse().map_err(|_| bad(no, format!("bad value `{}`", parts[3])))?;
                if i >= n || j >= n {
                    return Err(bad(no, "value index out of range".into()));
                }
                values.push((i, j, x));
            }
            _ if parts.len() == 2 => {
                let v = nums(0)?;
                edges.push((v[0], v[1]));
            }
            _ => return Err(bad(no, format!("unrecognized line `{line}`"))),
        }
    }

    let mode = mode.unwrap_or(if directed { WeightMode::Directed } else { WeightMode::UndirectedSum });
    if directed != (mode == WeightMode::Directed) {
        return Err(bad(hline, format!("mode {} does not match header", mode.as_str())));
    }
    let agents = agents.unwrap_or_else(|| (0..n).collect());
    let prob = OrdinalGraphProblem::new(n, &edges, &agents, rankings, mode, constraint)?;

    if values.is_empty() {
        return Ok((prob, None));
    }
    let mut rows = vec![vec![0.0; n]; n];
    for (i, j, x) in values {
        rows[i][j] = x;
    }
    let truth = ValuationProfile::unrestricted(rows)?;
    for a in prob.agents() {
        if !prob.ranking(a).windows(2).all(|w| truth.value(a, w[0]) >= truth.value(a, w[1])) {
            return Err(Error::InvalidProfile(format!("values of agent {a} contradict its ranking")));
        }
    }
    Ok((prob, Some(truth)))
}
