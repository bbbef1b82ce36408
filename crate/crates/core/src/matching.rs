//! Maximum bipartite matching (Hopcroft–Karp) with König covers and Hall
//! violators as certificates.

use std::collections::VecDeque;

/// Bipartite graph given by adjacency lists from the left side.
#[derive(Clone, Debug)]
pub struct Bipartite {
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

impl Bipartite {
    pub fn new(left: usize, right: usize) -> Self {
        Bipartite { right, adj: vec![Vec::new(); left] }
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }

    pub fn edge(&mut self, u: usize, v: usize) {
        debug_assert!(v < self.right);
        self.adj[u].push(v);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub of_left: Vec<Option<usize>>,
    pub of_right: Vec<Option<usize>>,
    pub size: usize,
}

const INF: usize = usize::MAX;

pub fn max_matching(g: &Bipartite) -> Matching {
    let nl = g.left();
    let mut of_left = vec![None; nl];
    let mut of_right: Vec<Option<usize>> = vec![None; g.right];
    let mut dist = vec![INF; nl];
    let mut size = 0;
    loop {
        // BFS layering from free left vertices.
        let mut q = VecDeque::new();
        for u in 0..nl {
            if of_left[u].is_none() {
                dist[u] = 0;
                q.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = q.pop_front() {
            for &v in &g.adj[u] {
                match of_right[v] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        q.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; nl];
        for u in 0..nl {
            if of_left[u].is_none() && augment(g, u, &mut dist, &mut it, &mut of_left, &mut of_right) {
                size += 1;
            }
        }
    }
    Matching { of_left, of_right, size }
}

fn augment(
    g: &Bipartite,
    u: usize,
    dist: &mut [usize],
    it: &mut [usize],
    of_left: &mut [Option<usize>],
    of_right: &mut [Option<usize>],
) -> bool {
    while it[u] < g.adj[u].len() {
        let v = g.adj[u][it[u]];
        it[u] += 1;
        let ok = match of_right[v] {
            None => true,
            Some(w) => dist[w] == dist[u] + 1 && augment(g, w, dist, it, of_left, of_right),
        };
        if ok {
            of_left[u] = Some(v);
            of_right[v] = Some(u);
            return true;
        }
    }
    dist[u] = INF;
    false
}

/// Vertices reachable by alternating paths from free left vertices.
fn alternating_reach(g: &Bipartite, m: &Matching) -> (Vec<bool>, Vec<bool>) {
    let mut seen_l = vec![false; g.left()];
    let mut seen_r = vec![false; g.right];
    let mut q = VecDeque::new();
    for (u, seen) in seen_l.iter_mut().enumerate() {
        if m.of_left[u].is_none() {
            *seen = true;
            q.push_back(u);
        }
    }
    while let Some(u) = q.pop_front() {
        for &v in &g.adj[u] {
            if !seen_r[v] {
                seen_r[v] = true;
                if let Some(w) = m.of_right[v] {
                    if !seen_l[w] {
                        seen_l[w] = true;
                        q.push_back(w);
                    }
                }
            }
        }
    }
    (seen_l, seen_r)
}

/// Minimum vertex cover `(left, right)` from a maximum matching.
pub fn konig_cover(g: &Bipartite, m: &Matching) -> (Vec<bool>, Vec<bool>) {
    let (zl, zr) = alternating_reach(g, m);
    (zl.iter().map(|&z| !z).collect(), zr)
}

/// Outcome of asking for a matching that saturates the left side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Saturation {
    /// `pairs[u]` is the right partner of left vertex `u`.
    Matched(Vec<usize>),
    /// A left set whose neighbourhood is strictly smaller.
    Violator { left: Vec<usize>, neighbours: Vec<usize> },
}

impl Saturation {
    pub fn is_matched(&self) -> bool {
        matches!(self, Saturation::Matched(_))
    }
}

pub fn saturate_left(g: &Bipartite) -> Saturation {
    let m = max_matching(g);
    if m.size == g.left() {
        return Saturation::Matched(m.of_left.iter().map(|v| v.unwrap()).collect());
    }
    let (zl, zr) = alternating_reach(g, &m);
    let left: Vec<usize> = (0..g.left()).filter(|&u| zl[u]).collect();
    let neighbours: Vec<usize> = (0..g.right).filter(|&v| zr[v]).collect();
    Saturation::Violator { left, neighbours }
}

/// Checks a claimed violator against the graph.
pub fn is_hall_violator(g: &Bipartite, left: &[usize]) -> bool {
    let mut nb = vec![false; g.right];
    for &u in left {
        for &v in &g.adj[u] {
            nb[v] = true;
        }
    }
    nb.iter().filter(|&&b| b).count() < left.len()
}
