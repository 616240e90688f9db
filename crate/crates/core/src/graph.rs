//! Simple undirected graphs, vertex orderings and the graph families used by
//! the constructions.
//!
//! Vertices are `0..n`. Every generator documents its edge order because edge
//! ids double as the positions of a coloring vector.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default vertex cap for generators.
pub const DEFAULT_VERTEX_CAP: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("graph would have {requested} vertices, above the cap of {cap}")]
    SizeCapExceeded { requested: u128, cap: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid edge {0}-{1}")]
    InvalidEdge(usize, usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("ordering is not a permutation of the vertices")]
    BadOrdering,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;
    fn try_from(g: GraphJson) -> Result<Self, GraphError> {
        Graph::new(g.n, g.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson { n: g.n, edges: g.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }
}

impl Graph {
    /// Builds a simple graph; edge ids follow the iterator order. Each edge is
    /// stored with its smaller endpoint first.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        let mut seen = HashMap::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::InvalidEdge(u, v));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key, list.len()).is_some() {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[u].push((v, list.len()));
            adj[v].push((u, list.len()));
            list.push(key);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Self { n, edges: list, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbor, edge id)` pairs sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let a = self.adj.get(u)?;
        a.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| a[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// BFS order from `root` with each vertex's BFS parent and tree edge.
    pub fn bfs(&self, root: usize) -> Vec<(usize, Option<(usize, usize)>)> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::with_capacity(self.n);
        let mut queue = VecDeque::new();
        seen[root] = true;
        queue.push_back((root, None));
        while let Some((v, parent)) = queue.pop_front() {
            out.push((v, parent));
            for &(w, e) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back((w, Some((v, e))));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).len() == self.n
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        if self.n > 0 && self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// Two-coloring of the vertices if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let sv = side[v].expect("visited");
                for &(w, _) in &self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == sv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.expect("all visited")).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Ids of cut-edges, ascending.
    pub fn bridges(&self) -> Vec<usize> {
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0; self.n];
        let mut out = Vec::new();
        let mut time = 0;
        for s in 0..self.n {
            if disc[s] != usize::MAX {
                continue;
            }
            // iterative DFS: (vertex, parent edge, next neighbor index)
            let mut stack = vec![(s, usize::MAX, 0usize)];
            disc[s] = time;
            low[s] = time;
            time += 1;
            while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
                if let Some(&(w, e)) = self.adj[v].get(*i) {
                    *i += 1;
                    if e == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(pe);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn to_dot(&self, edge_labels: Option<&[String]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            match edge_labels.and_then(|l| l.get(i)) {
                Some(label) => {
                    let _ = writeln!(out, "  {u} -- {v} [label=\"{label}\"];");
                }
                None => {
                    let _ = writeln!(out, "  {u} -- {v};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Generator families. Edge ids are in lexicographic `(i, j)`, `i < j` order
/// except for [`Family::Cycle`], whose edges run `01, 12, …, (n-1)0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    /// Parts `0..s` and `s..s+t`.
    CompleteBipartite(usize, usize),
    Path(usize),
    /// Vertices in path order, `ij` an edge iff `|i - j| <= width`.
    PathPower(usize, usize),
    /// `ij` an edge iff `|i - j| <= 2 * width` and `i - j` is odd.
    BipartitePathPower(usize, usize),
    Cycle(usize),
    /// `ij` an edge iff `i ^ j` is a power of two.
    Hypercube(usize),
}

impl Family {
    /// Parses a CLI family name with its numeric parameters.
    pub fn parse(name: &str, params: &[usize]) -> Result<Self, GraphError> {
        let want = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(GraphError::ParameterOutOfRange(format!("{name} takes {k} parameter(s)")))
            }
        };
        Ok(match name {
            "complete" => {
                want(1)?;
                Family::Complete(params[0])
            }
            "complete_bipartite" => {
                want(2)?;
                Family::CompleteBipartite(params[0], params[1])
            }
            "path" => {
                want(1)?;
                Family::Path(params[0])
            }
            "path_power" => {
                want(2)?;
                Family::PathPower(params[0], params[1])
            }
            "bip_path_power" => {
                want(2)?;
                Family::BipartitePathPower(params[0], params[1])
            }
            "cycle" => {
                want(1)?;
                Family::Cycle(params[0])
            }
            "hypercube" => {
                want(1)?;
                Family::Hypercube(params[0])
            }
            other => return Err(GraphError::ParameterOutOfRange(format!("unknown family {other}"))),
        })
    }

    fn vertex_count(&self) -> u128 {
        match *self {
            Family::Complete(n)
            | Family::Path(n)
            | Family::PathPower(n, _)
            | Family::BipartitePathPower(n, _)
            | Family::Cycle(n) => n as u128,
            Family::CompleteBipartite(s, t) => s as u128 + t as u128,
            Family::Hypercube(k) => {
                if k >= 127 {
                    u128::MAX
                } else {
                    1u128 << k
                }
            }
        }
    }
}

pub fn generate(family: Family) -> Result<Graph, GraphError> {
    generate_with_cap(family, DEFAULT_VERTEX_CAP)
}

pub fn generate_with_cap(family: Family, cap: usize) -> Result<Graph, GraphError> {
    let bad = |msg: &str| Err(GraphError::ParameterOutOfRange(msg.to_string()));
    match family {
        Family::Complete(n) | Family::Path(n) if n < 1 => return bad("n must be at least 1"),
        Family::CompleteBipartite(s, t) if s < 1 || t < 1 => return bad("part sizes must be at least 1"),
        Family::PathPower(n, w) if n < 1 || w < 1 || w > n.saturating_sub(1).max(1) => {
            return bad("path_power needs n >= 1 and 1 <= width <= n - 1")
        }
        Family::BipartitePathPower(n, w) if n < 1 || w < 1 => {
            return bad("bip_path_power needs n >= 1 and width >= 1")
        }
        Family::Cycle(n) if n < 3 => return bad("cycle needs n >= 3"),
        Family::Hypercube(k) if k < 1 => return bad("hypercube needs k >= 1"),
        _ => {}
    }
    let requested = family.vertex_count();
    if requested > cap as u128 {
        return Err(GraphError::SizeCapExceeded { requested, cap });
    }
    let n = requested as usize;
    let pairs_where = |pred: &dyn Fn(usize, usize) -> bool| {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if pred(i, j) {
                    e.push((i, j));
                }
            }
        }
        e
    };
    let edges = match family {
        Family::Complete(_) => pairs_where(&|_, _| true),
        Family::CompleteBipartite(s, _) => pairs_where(&|i, j| i < s && j >= s),
        Family::Path(_) => (1..n).map(|i| (i - 1, i)).collect(),
        Family::PathPower(_, w) => {
            let mut e = Vec::new();
            for i in 0..n {
                for j in i + 1..n.min(i + w + 1) {
                    e.push((i, j));
                }
            }
            e
        }
        Family::BipartitePathPower(_, w) => {
            let mut e = Vec::new();
            for i in 0..n {
                for j in (i + 1..n.min(i + 2 * w + 1)).step_by(2) {
                    e.push((i, j));
                }
            }
            e
        }
        Family::Cycle(_) => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        Family::Hypercube(k) => {
            let mut e = Vec::new();
            for i in 0..n {
                for b in 0..k {
                    let j = i ^ (1 << b);
                    if j > i {
                        e.push((i, j));
                    }
                }
            }
            e.sort_unstable();
            e
        }
    };
    Graph::new(n, edges)
}

/// Disjoint union of `g1` and `g2` plus the edge `u`–`v`, where `u` is a vertex
/// of `g1` and `v` of `g2`. Vertices of `g2` are shifted by `g1.n()`; edge ids
/// are those of `g1`, then `g2`, then the joining edge.
pub fn cut_edge_join(g1: &Graph, g2: &Graph, u: usize, v: usize) -> Result<Graph, GraphError> {
    g1.check_vertex(u)?;
    g2.check_vertex(v)?;
    let shift = g1.n();
    let edges = g1
        .edges()
        .iter()
        .copied()
        .chain(g2.edges().iter().map(|&(a, b)| (a + shift, b + shift)))
        .chain(std::iter::once((u, v + shift)));
    Graph::new(g1.n() + g2.n(), edges)
}

/// The two-block graph `K_{n,n}` + path on `2^n` vertices joined by a cut-edge.
#[derive(Clone, Debug)]
pub struct TwoBlockGraph {
    pub graph: Graph,
    pub n: usize,
    /// Whether `n` is an even power of two.
    pub hypothesis_holds: bool,
    /// Id of the joining cut-edge.
    pub cut_edge: usize,
}

impl TwoBlockGraph {
    /// `x1, y1, x2, y2, …, xn, yn`, then the path from the joined endpoint on.
    pub fn lower_bound_ordering(&self) -> VertexOrdering {
        let n = self.n;
        let mut order = Vec::with_capacity(self.graph.n());
        for j in 0..n {
            order.push(j);
            order.push(n + j);
        }
        order.extend(2 * n..self.graph.n());
        VertexOrdering::from_order(&self.graph, order).expect("valid permutation")
    }
}

fn is_even_power_of_two(n: usize) -> bool {
    n.is_power_of_two() && n.trailing_zeros().is_multiple_of(2)
}

/// `K_{n,n}` (X = `0..n`, Y = `n..2n`) plus a path on `2^n` vertices
/// (`2n..2n+2^n`) joined by the edge `x1`–first path vertex.
pub fn two_block_graph(n: usize) -> Result<TwoBlockGraph, GraphError> {
    two_block_graph_with_cap(n, DEFAULT_VERTEX_CAP)
}

pub fn two_block_graph_with_cap(n: usize, cap: usize) -> Result<TwoBlockGraph, GraphError> {
    if n < 2 {
        return Err(GraphError::ParameterOutOfRange("n must be at least 2".into()));
    }
    let requested = if n >= 127 { u128::MAX } else { (1u128 << n) + 2 * n as u128 };
    if requested > cap as u128 {
        return Err(GraphError::SizeCapExceeded { requested, cap });
    }
    let knn = generate_with_cap(Family::CompleteBipartite(n, n), cap)?;
    let path = generate_with_cap(Family::Path(1 << n), cap)?;
    let graph = cut_edge_join(&knn, &path, 0, 0)?;
    let cut_edge = graph.num_edges() - 1;
    Ok(TwoBlockGraph { graph, n, hypothesis_holds: is_even_power_of_two(n), cut_edge })
}

/// The union of bipartite path powers sharing a hub vertex.
#[derive(Clone, Debug)]
pub struct HubGraph {
    pub graph: Graph,
    pub k: usize,
    /// Number of components, `⌊k^{1/3}⌋`.
    pub r: usize,
    /// Vertex range of the component of width `ℓ` at index `ℓ - 1`.
    pub component_spans: Vec<Range<usize>>,
}

impl HubGraph {
    /// Vertex order is already hub first, then components of width `r` down to
    /// 1, each in path order.
    pub fn lower_bound_ordering(&self) -> VertexOrdering {
        VertexOrdering::from_order(&self.graph, (0..self.graph.n()).collect()).expect("identity order")
    }
}

pub fn integer_cube_root(k: usize) -> usize {
    let mut r = (k as f64).cbrt().round() as usize;
    while r > 0 && r.saturating_mul(r).saturating_mul(r) > k {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1).saturating_mul(r + 1) <= k {
        r += 1;
    }
    r
}

/// Hub vertex 0 joined to the first vertex of each `Z_ℓ`, where `Z_ℓ` is the
/// bipartite path power on `2^⌈k/ℓ⌉` vertices of width `ℓ`, `ℓ = 1..=r`.
/// Components are laid out `Z_r, …, Z_1` after the hub.
pub fn hub_graph(k: usize) -> Result<HubGraph, GraphError> {
    hub_graph_with_cap(k, DEFAULT_VERTEX_CAP)
}

pub fn hub_graph_with_cap(k: usize, cap: usize) -> Result<HubGraph, GraphError> {
    if k < 1 {
        return Err(GraphError::ParameterOutOfRange("k must be at least 1".into()));
    }
    let r = integer_cube_root(k);
    let mut requested: u128 = 1;
    for width in 1..=r {
        let e = k.div_ceil(width);
        requested = requested.saturating_add(if e >= 127 { u128::MAX } else { 1u128 << e });
    }
    if requested > cap as u128 {
        return Err(GraphError::SizeCapExceeded { requested, cap });
    }
    let mut spans = vec![0..0; r];
    let mut edges = Vec::new();
    let mut next = 1;
    for width in (1..=r).rev() {
        let z = generate_with_cap(Family::BipartitePathPower(1 << k.div_ceil(width), width), cap)?;
        edges.push((0, next));
        edges.extend(z.edges().iter().map(|&(a, b)| (a + next, b + next)));
        spans[width - 1] = next..next + z.n();
        next += z.n();
    }
    let graph = Graph::new(next, edges)?;
    Ok(HubGraph { graph, k, r, component_spans: spans })
}

/// A vertex order with back-degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexOrdering {
    pub order: Vec<usize>,
    /// Entry `i` counts neighbors of `order[i]` among `order[..i]`.
    pub back_degrees: Vec<usize>,
}

impl VertexOrdering {
    pub fn from_order(g: &Graph, order: Vec<usize>) -> Result<Self, GraphError> {
        if order.len() != g.n() {
            return Err(GraphError::BadOrdering);
        }
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in order.iter().enumerate() {
            if v >= g.n() || pos[v] != usize::MAX {
                return Err(GraphError::BadOrdering);
            }
            pos[v] = i;
        }
        let back_degrees = order
            .iter()
            .enumerate()
            .map(|(i, &v)| g.neighbors(v).iter().filter(|&&(w, _)| pos[w] < i).count())
            .collect();
        Ok(Self { order, back_degrees })
    }

    /// Every vertex after the first has an earlier neighbor.
    pub fn is_connected_compatible(&self) -> bool {
        self.back_degrees.iter().skip(1).all(|&d| d >= 1)
    }
}

/// BFS order from `root`.
pub fn default_ordering(g: &Graph, root: usize) -> Result<VertexOrdering, GraphError> {
    g.check_vertex(root)?;
    let order: Vec<usize> = g.bfs(root).into_iter().map(|(v, _)| v).collect();
    if order.len() != g.n() {
        return Err(GraphError::Disconnected);
    }
    VertexOrdering::from_order(g, order)
}
