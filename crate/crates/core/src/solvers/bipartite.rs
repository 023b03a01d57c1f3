use std::collections::VecDeque;

/// Bipartite graph as left-side adjacency lists into `0..right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        Self { right, adj: vec![Vec::new(); left] }
    }

    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(left, right);
        for &(l, r) in edges {
            g.add_edge(l, r);
        }
        g
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        debug_assert!(r < self.right);
        self.adj[l].push(r);
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }
}

const FREE: usize = usize::MAX;

/// Hopcroft-Karp. Returns matched `(left, right)` pairs sorted by left
/// vertex.
pub fn max_cardinality_bipartite(g: &BipartiteGraph) -> Vec<(usize, usize)> {
    let left = g.left();
    let mut match_l = vec![FREE; left];
    let mut match_r = vec![FREE; g.right];
    let mut dist = vec![0usize; left];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..left {
            if match_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &g.adj[l] {
                match match_r[r] {
                    FREE => found = true,
                    l2 if dist[l2] == usize::MAX => {
                        dist[l2] = dist[l] + 1;
                        queue.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        for l in 0..left {
            if match_l[l] == FREE {
                augment(g, l, &mut match_l, &mut match_r, &mut dist);
            }
        }
    }

    match_l.iter().enumerate().filter(|(_, &r)| r != FREE).map(|(l, &r)| (l, r)).collect()
}

fn augment(
    g: &BipartiteGraph,
    l: usize,
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &r in &g.adj[l] {
        let next = match_r[r];
        let ok = next == FREE
            || (dist[next] == dist[l].wrapping_add(1) && augment(g, next, match_l, match_r, dist));
        if ok {
            match_l[l] = r;
            match_r[r] = l;
            return true;
        }
    }
    dist[l] = usize::MAX;
    false
}
