//! Chip-firing arithmetic on finite multigraphs.
//!
//! Everything here is computed straight from the definitions: divisor
//! reduction via Dhar's burning algorithm, rank by exhausting effective
//! divisors. The module is deliberately independent of the tableau
//! machinery so the two engines can be used to check each other.

use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Connected multigraph without loop edges. Vertices are `0..vertex_count()`;
/// parallel edges are distinct entries of the edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    // adj[u][v] = number of edges between u and v
    adj: Vec<Vec<u32>>,
}

impl FiniteGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, Error> {
        if vertices == 0 {
            return Err(Error::constraint("vertex count >= 1 violated"));
        }
        let mut adj = vec![vec![0u32; vertices]; vertices];
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::constraint(format!(
                    "edge ({u}, {v}) references a vertex >= {vertices}"
                )));
            }
            if u == v {
                return Err(Error::constraint(format!("loop edge at vertex {u}")));
            }
            adj[u][v] += 1;
            adj[v][u] += 1;
        }
        let graph = FiniteGraph {
            vertices,
            edges,
            adj,
        };
        if !graph.is_connected() {
            return Err(Error::constraint("graph must be connected"));
        }
        Ok(graph)
    }

    /// Cycle graph on `k >= 2` vertices; `k = 2` is a pair of parallel edges.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 2, "cycle needs at least 2 vertices");
        let edges = (0..k).map(|i| (i, (i + 1) % k)).collect();
        FiniteGraph::new(k, edges).expect("cycle graph is always valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// First Betti number, `|E| - |V| + 1`.
    pub fn genus(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    pub fn degree(&self, v: usize) -> i64 {
        self.adj[v].iter().map(|&m| m as i64).sum()
    }

    /// Divisor with coefficient `deg(v) - 2` at every vertex.
    pub fn canonical_divisor(&self) -> VertexDivisor {
        VertexDivisor::new((0..self.vertices).map(|v| self.degree(v) - 2).collect())
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for (v, &mult) in self.adj[u].iter().enumerate() {
                if !seen[v] && mult > 0 {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn bfs_distances(&self, q: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices];
        dist[q] = 0;
        let mut frontier = vec![q];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for (v, &mult) in self.adj[u].iter().enumerate() {
                    if mult > 0 && dist[v] == usize::MAX {
                        dist[v] = d;
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Dhar's burning algorithm: which vertices burn when the fire starts at
    /// `q` against the (off-`q` non-negative) configuration `coeffs`.
    /// An unburnt vertex burns as soon as its burnt incident edges outnumber
    /// its coefficient.
    fn burn(&self, coeffs: &[i64], q: usize) -> Vec<bool> {
        let n = self.vertices;
        let mut burnt = vec![false; n];
        let mut burnt_edges = vec![0i64; n];
        let mut queue = vec![q];
        burnt[q] = true;
        while let Some(u) = queue.pop() {
            for v in 0..n {
                if !burnt[v] && self.adj[u][v] > 0 {
                    burnt_edges[v] += self.adj[u][v] as i64;
                    if burnt_edges[v] > coeffs[v] {
                        burnt[v] = true;
                        queue.push(v);
                    }
                }
            }
        }
        burnt
    }

    /// Whether `divisor` is `q`-reduced: non-negative away from `q` and the
    /// fire from `q` consumes the whole graph.
    pub fn is_reduced(&self, divisor: &VertexDivisor, q: usize) -> bool {
        let c = divisor.coeffs();
        if (0..self.vertices).any(|v| v != q && c[v] < 0) {
            return false;
        }
        self.burn(c, q).into_iter().all(|b| b)
    }
}

impl Serialize for FiniteGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            vertices: self.vertices,
            edges: self.edges.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        FiniteGraph::new(repr.vertices, repr.edges).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

/// Integer-valued divisor on the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexDivisor {
    coeffs: Vec<i64>,
}

impl VertexDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        VertexDivisor { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        VertexDivisor { coeffs: vec![0; n] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn plus(&self, other: &VertexDivisor) -> VertexDivisor {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        VertexDivisor::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn minus(&self, other: &VertexDivisor) -> VertexDivisor {
        debug_assert_eq!(self.coeffs.len(), other.coeffs.len());
        VertexDivisor::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Divisor of the integer function `f`: at each vertex `v` the sum of
/// `f(v) - f(w)` over all edges from `v` to `w`.
pub fn principal_divisor(graph: &FiniteGraph, f: &[i64]) -> VertexDivisor {
    assert_eq!(f.len(), graph.vertex_count(), "function length mismatch");
    let mut coeffs = vec![0i64; graph.vertex_count()];
    for &(u, v) in graph.edges() {
        coeffs[u] += f[u] - f[v];
        coeffs[v] += f[v] - f[u];
    }
    VertexDivisor::new(coeffs)
}

/// Unique `q`-reduced divisor linearly equivalent to `divisor`.
pub fn dhar_reduce(graph: &FiniteGraph, divisor: &VertexDivisor, q: usize) -> VertexDivisor {
    dhar_reduce_with_script(graph, divisor, q).0
}

/// Like [`dhar_reduce`], but also returns how many times each vertex fired,
/// so that `result = divisor - principal_divisor(script)`.
pub fn dhar_reduce_with_script(
    graph: &FiniteGraph,
    divisor: &VertexDivisor,
    q: usize,
) -> (VertexDivisor, Vec<i64>) {
    let n = graph.vertex_count();
    assert!(q < n, "base vertex out of range");
    assert_eq!(divisor.coeffs().len(), n, "divisor length mismatch");
    let mut c = divisor.coeffs().to_vec();
    let mut script = vec![0i64; n];

    let fire_set = |c: &mut [i64], script: &mut [i64], members: &[bool], times: i64| {
        for u in 0..n {
            if !members[u] {
                continue;
            }
            script[u] += times;
            for v in 0..n {
                if !members[v] {
                    let m = graph.adj[u][v] as i64 * times;
                    c[u] -= m;
                    c[v] += m;
                }
            }
        }
    };

    // Lift negative coefficients away from q, farthest BFS level first.
    // Firing the strictly-closer set only raises the level being fixed and
    // never touches levels already fixed above it.
    let dist = graph.bfs_distances(q);
    let max_dist = *dist.iter().max().unwrap();
    for level in (1..=max_dist).rev() {
        let inside: Vec<bool> = (0..n).map(|v| dist[v] < level).collect();
        let mut times = 0i64;
        for v in 0..n {
            if dist[v] == level && c[v] < 0 {
                let feed: i64 = (0..n)
                    .filter(|&u| inside[u])
                    .map(|u| graph.adj[v][u] as i64)
                    .sum();
                times = times.max((-c[v] + feed - 1) / feed);
            }
        }
        if times > 0 {
            fire_set(&mut c, &mut script, &inside, times);
        }
    }

    // Dhar loop: fire the unburnt set until the fire consumes everything.
    loop {
        let burnt = graph.burn(&c, q);
        if burnt.iter().all(|&b| b) {
            break;
        }
        let unburnt: Vec<bool> = burnt.iter().map(|&b| !b).collect();
        fire_set(&mut c, &mut script, &unburnt, 1);
    }

    (VertexDivisor::new(c), script)
}

/// Whether the two divisors differ by a principal divisor.
pub fn linear_equivalent(graph: &FiniteGraph, a: &VertexDivisor, b: &VertexDivisor) -> bool {
    a.degree() == b.degree() && dhar_reduce(graph, a, 0) == dhar_reduce(graph, b, 0)
}

/// Baker-Norine rank: `-1` if the divisor is not equivalent to an effective
/// one, otherwise the largest `r` such that `D - E` stays equivalent to an
/// effective divisor for every effective `E` of degree `r`.
pub fn rank_baker_norine(graph: &FiniteGraph, divisor: &VertexDivisor) -> i64 {
    let deg = divisor.degree();
    if deg < 0 {
        return -1;
    }
    // Reducing once up front makes the per-E reductions near-trivial.
    let base = dhar_reduce(graph, divisor, 0);
    let mut rank = -1;
    while rank < deg {
        if !covers_all_of_degree(graph, &base, rank + 1) {
            break;
        }
        rank += 1;
    }
    rank
}

/// Whether `rank_baker_norine(divisor) >= r`, without computing the rank.
pub fn rank_at_least(graph: &FiniteGraph, divisor: &VertexDivisor, r: i64) -> bool {
    if r < 0 {
        return true;
    }
    if divisor.degree() < r {
        return false;
    }
    let base = dhar_reduce(graph, divisor, 0);
    // rank >= r requires every smaller degree to be covered as well, but
    // checking the top degree suffices: removing fewer chips only helps.
    covers_all_of_degree(graph, &base, r)
}

// Every effective E of degree `deg` leaves `base - E` equivalent to effective.
fn covers_all_of_degree(graph: &FiniteGraph, base: &VertexDivisor, deg: i64) -> bool {
    effective_divisors(graph.vertex_count(), deg)
        .par_iter()
        .all(|e| dhar_reduce(graph, &base.minus(e), 0).coeffs()[0] >= 0)
}

// Enumerates coefficient vectors of non-negative total `remaining` into
// `buf[idx..]`, calling `f` on each completion; false from `f` aborts.
fn for_each_effective(
    buf: &mut Vec<i64>,
    idx: usize,
    remaining: i64,
    f: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    if idx + 1 == buf.len() {
        buf[idx] = remaining;
        return f(buf);
    }
    for c in 0..=remaining {
        buf[idx] = c;
        if !for_each_effective(buf, idx + 1, remaining - c, f) {
            return false;
        }
    }
    true
}

/// All effective divisors of the given degree, in lexicographic order.
pub fn effective_divisors(n: usize, degree: i64) -> Vec<VertexDivisor> {
    assert!(degree >= 0);
    let mut out = Vec::new();
    let mut buf = vec![0i64; n];
    for_each_effective(&mut buf, 0, degree, &mut |e| {
        out.push(VertexDivisor::new(e.to_vec()));
        true
    });
    out
}

/// Largest `w >= 0` such that every effective divisor of degree `w + r`
/// extends to an effective divisor of degree `d` and rank at least `r`;
/// `-1` when no divisor of degree `d` has rank at least `r`.
pub fn wrd_discrete(graph: &FiniteGraph, r: i64, d: i64) -> Result<i64, Error> {
    if r < 0 {
        return Err(Error::constraint(format!("r >= 0 violated (r = {r})")));
    }
    if d < 0 {
        return Err(Error::constraint(format!("d >= 0 violated (d = {d})")));
    }
    let n = graph.vertex_count();
    let mut best = -1;
    let mut w = 0;
    while w + r <= d {
        let tails = effective_divisors(n, d - w - r);
        let ok = effective_divisors(n, w + r)
            .par_iter()
            .all(|e| tails.iter().any(|f| rank_at_least(graph, &e.plus(f), r)));
        if !ok {
            break;
        }
        best = w;
        w += 1;
    }
    Ok(best)
}
