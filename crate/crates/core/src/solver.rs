//! Exact search for p̂(G) and p(G) on small graphs, plus hypercube embedding.
//!
//! `exact_phat` searches canonical colorings only: labels `f(v)` in `F₂^c` with
//! `f(root) = 0`, assigned in BFS order. Labels are put in echelon form as they
//! are chosen, so a new independent label is always the next atom. `exact_p`
//! colors edges one at a time and rejects any partial coloring that already
//! contains a parity path.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{ceil_lg, saturating_min_sum, BoundsError, SaturatingInstance};
use crate::coloring::{
    canonical_from_labeling, cycle_space_image_dim, is_pec, ColoringError, EdgeColoring, Labeling,
};
use crate::gf2::Gf2Vector;
use crate::graph::{default_ordering, Graph, GraphError};

/// Largest color target the canonical search will attempt.
pub const MAX_PHAT_TARGET: usize = 24;
/// Largest color target the edge-coloring search will attempt.
pub const MAX_P_TARGET: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("search budget exhausted; value lies in [{lower}, {upper}]")]
    BudgetExceeded { lower: usize, upper: usize },
    #[error("color target {0} exceeds what the search supports")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Limits on a search. Both limits are optional; `None` means unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn time(limit: Duration) -> Self {
        Budget { time: Some(limit), nodes: None }
    }

    pub fn nodes(limit: u64) -> Self {
        Budget { time: None, nodes: Some(limit) }
    }
}

struct Meter {
    deadline: Option<Instant>,
    node_cap: Option<u64>,
    nodes: u64,
    out: bool,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter { deadline: budget.time.map(|d| Instant::now() + d), node_cap: budget.nodes, nodes: 0, out: false }
    }

    /// Counts one node; returns false once the budget is spent.
    fn tick(&mut self) -> bool {
        if self.out {
            return false;
        }
        self.nodes += 1;
        let over_nodes = self.node_cap.is_some_and(|cap| self.nodes > cap);
        let over_time = self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d);
        self.out = over_nodes || over_time;
        !self.out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution<W> {
    pub value: usize,
    pub witness: W,
    /// Search nodes visited across all targets.
    pub nodes: u64,
}

/// Lower bound shared by both solvers.
fn base_lower_bound(g: &Graph) -> usize {
    (ceil_lg(g.n() as u64) as usize).max(g.max_degree())
}

/// A cheap spec: label each vertex by its BFS position.
fn position_labeling(g: &Graph) -> Labeling {
    let mut bits = vec![0u64; g.n()];
    for (i, (v, _)) in g.bfs(0).into_iter().enumerate() {
        bits[v] = i as u64;
    }
    Labeling::from_bits(&bits).expect("positions are distinct")
}

/// Exact p̂(G) with a witness labeling.
pub fn exact_phat(g: &Graph, budget: Budget) -> Result<Solution<Labeling>, SolverError> {
    g.require_connected()?;
    if g.n() == 1 {
        return Ok(Solution { value: 0, witness: Labeling::from_bits(&[0])?, nodes: 0 });
    }
    let ordering = default_ordering(g, 0)?;
    let saturating = saturating_min_sum(&SaturatingInstance::new(ordering.back_degrees.clone()))?.value;
    let lower = base_lower_bound(g).max(saturating);

    let fallback = position_labeling(g);
    let upper = canonical_from_labeling(g, &fallback)?.num_colors();

    let mut pos = vec![0; g.n()];
    for (i, &v) in ordering.order.iter().enumerate() {
        pos[v] = i;
    }
    let back: Vec<Vec<usize>> = ordering
        .order
        .iter()
        .map(|&v| {
            let mut b: Vec<usize> = g.neighbors(v).iter().map(|&(u, _)| pos[u]).filter(|&p| p < pos[v]).collect();
            b.sort_unstable();
            b
        })
        .collect();

    let mut meter = Meter::new(budget);
    for c in lower..upper {
        if c > MAX_PHAT_TARGET {
            return Err(SolverError::TooLarge(c));
        }
        let mut search = PhatSearch::new(&back, &ordering.back_degrees, c);
        match search.run(&mut meter) {
            Some(labels) => {
                let mut bits = vec![0u64; g.n()];
                for (i, &v) in ordering.order.iter().enumerate() {
                    bits[v] = labels[i] as u64;
                }
                let witness = Labeling::from_bits(&bits)?;
                debug_assert_eq!(canonical_from_labeling(g, &witness)?.num_colors(), c);
                return Ok(Solution { value: c, witness, nodes: meter.nodes });
            }
            None if meter.out => return Err(SolverError::BudgetExceeded { lower: c, upper }),
            None => {}
        }
    }
    Ok(Solution { value: upper, witness: fallback, nodes: meter.nodes })
}

const INF: usize = usize::MAX / 4;

struct PhatSearch<'a> {
    back: &'a [Vec<usize>],
    target: usize,
    labels: Vec<u32>,
    used: Vec<bool>,
    counts: Vec<u32>,
    distinct: usize,
    /// `suffix[i][d]`: fewest new colors forced by positions `i..` at dim `d`.
    suffix: Vec<Vec<usize>>,
    dim_cap: usize,
}

impl<'a> PhatSearch<'a> {
    fn new(back: &'a [Vec<usize>], back_degrees: &[usize], target: usize) -> Self {
        let n = back.len();
        let dim_cap = ceil_lg(n as u64) as usize;
        let need = |k: usize| ceil_lg(k as u64) as usize;
        let mut suffix = vec![vec![INF; dim_cap + 1]; n + 1];
        suffix[n] = vec![0; dim_cap + 1];
        for i in (1..n).rev() {
            for d in 0..=dim_cap {
                let mut best = INF;
                if d >= need(i + 1) {
                    best = suffix[i + 1][d];
                }
                let d2 = (d + 1).min(dim_cap);
                if d2 >= need(i + 1) {
                    best = best.min(back_degrees[i].saturating_add(suffix[i + 1][d2]));
                }
                suffix[i][d] = best;
            }
        }
        PhatSearch {
            back,
            target,
            labels: vec![0; n],
            used: vec![false; 1 << target],
            counts: vec![0; 1 << target],
            distinct: 0,
            suffix,
            dim_cap,
        }
    }

    fn run(&mut self, meter: &mut Meter) -> Option<Vec<u32>> {
        self.used[0] = true;
        if self.dfs(1, 0, meter) {
            Some(self.labels.clone())
        } else {
            None
        }
    }

    fn new_colors(&self, i: usize, x: u32) -> usize {
        self.back[i].iter().filter(|&&p| self.counts[(x ^ self.labels[p]) as usize] == 0).count()
    }

    fn dfs(&mut self, i: usize, dim: usize, meter: &mut Meter) -> bool {
        if i == self.back.len() {
            return true;
        }
        if !meter.tick() {
            return false;
        }
        let mut cands: Vec<(usize, u32, usize)> = Vec::new();
        for x in 0..(1u32 << dim) {
            if !self.used[x as usize] {
                cands.push((self.new_colors(i, x), x, dim));
            }
        }
        if dim < self.target {
            cands.push((self.back[i].len(), 1 << dim, dim + 1));
        }
        cands.sort_by_key(|&(fresh, _, _)| fresh);
        for (fresh, x, d2) in cands {
            let total = self.distinct + fresh;
            if total > self.target || total + self.suffix[i + 1][d2.min(self.dim_cap)] > self.target {
                continue;
            }
            self.place(i, x, true);
            if self.dfs(i + 1, d2, meter) {
                return true;
            }
            self.place(i, x, false);
            if meter.out {
                return false;
            }
        }
        false
    }

    fn place(&mut self, i: usize, x: u32, on: bool) {
        self.used[x as usize] = on;
        if on {
            self.labels[i] = x;
        }
        for k in 0..self.back[i].len() {
            let y = (x ^ self.labels[self.back[i][k]]) as usize;
            if on {
                if self.counts[y] == 0 {
                    self.distinct += 1;
                }
                self.counts[y] += 1;
            } else {
                self.counts[y] -= 1;
                if self.counts[y] == 0 {
                    self.distinct -= 1;
                }
            }
        }
    }
}

/// Exact p(G) with a witness coloring.
pub fn exact_p(g: &Graph, budget: Budget) -> Result<Solution<EdgeColoring>, SolverError> {
    g.require_connected()?;
    if g.num_edges() == 0 {
        return Ok(Solution { value: 0, witness: EdgeColoring::new(vec![])?, nodes: 0 });
    }
    let lower = base_lower_bound(g);
    let fallback = canonical_from_labeling(g, &position_labeling(g))?;
    let upper = fallback.num_colors();

    let ordering = default_ordering(g, 0)?;
    let mut pos = vec![0; g.n()];
    for (i, &v) in ordering.order.iter().enumerate() {
        pos[v] = i;
    }
    let mut order: Vec<usize> = (0..g.num_edges()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.edges()[e];
        (pos[u].max(pos[v]), pos[u].min(pos[v]))
    });

    let mut meter = Meter::new(budget);
    for c in lower..upper {
        if c > MAX_P_TARGET {
            return Err(SolverError::TooLarge(c));
        }
        let mut search = PSearch { g, order: &order, target: c, colors: vec![0; g.num_edges()] };
        if search.dfs(0, 0, &mut meter) {
            let witness = EdgeColoring::new(search.colors)?;
            return Ok(Solution { value: c, witness, nodes: meter.nodes });
        }
        if meter.out {
            return Err(SolverError::BudgetExceeded { lower: c, upper });
        }
    }
    Ok(Solution { value: upper, witness: fallback, nodes: meter.nodes })
}

struct PSearch<'a> {
    g: &'a Graph,
    order: &'a [usize],
    target: usize,
    /// 0 marks an uncolored edge.
    colors: Vec<usize>,
}

impl PSearch<'_> {
    fn dfs(&mut self, k: usize, max_used: usize, meter: &mut Meter) -> bool {
        if k == self.order.len() {
            return true;
        }
        if !meter.tick() {
            return false;
        }
        let e = self.order[k];
        for c in 1..=(max_used + 1).min(self.target) {
            self.colors[e] = c;
            if self.proper_at(e) && !self.parity_path_through(e) && self.dfs(k + 1, max_used.max(c), meter) {
                return true;
            }
            if meter.out {
                self.colors[e] = 0;
                return false;
            }
        }
        self.colors[e] = 0;
        false
    }

    fn proper_at(&self, e: usize) -> bool {
        let (a, b) = self.g.edges()[e];
        let c = self.colors[e];
        [a, b].iter().all(|&x| self.g.neighbors(x).iter().all(|&(_, f)| f == e || self.colors[f] != c))
    }

    fn bit(&self, e: usize) -> u64 {
        1 << (self.colors[e] - 1)
    }

    /// Looks for a simple all-colored path through `e` whose color mask is zero.
    fn parity_path_through(&self, e: usize) -> bool {
        let (a, b) = self.g.edges()[e];
        let mut on_path = vec![false; self.g.n()];
        on_path[a] = true;
        on_path[b] = true;
        self.extend_b(b, a, self.bit(e), &mut on_path)
    }

    fn extend_b(&self, end: usize, a: usize, mask: u64, on_path: &mut Vec<bool>) -> bool {
        if self.extend_a(a, mask, on_path) {
            return true;
        }
        for &(w, f) in self.g.neighbors(end) {
            if on_path[w] || self.colors[f] == 0 {
                continue;
            }
            on_path[w] = true;
            let found = self.extend_b(w, a, mask ^ self.bit(f), on_path);
            on_path[w] = false;
            if found {
                return true;
            }
        }
        false
    }

    fn extend_a(&self, end: usize, mask: u64, on_path: &mut Vec<bool>) -> bool {
        if mask == 0 {
            return true;
        }
        for &(w, f) in self.g.neighbors(end) {
            if on_path[w] || self.colors[f] == 0 {
                continue;
            }
            on_path[w] = true;
            let found = self.extend_a(w, mask ^ self.bit(f), on_path);
            on_path[w] = false;
            if found {
                return true;
            }
        }
        false
    }
}

/// Coordinates of each vertex in `Q_k`, `k = ⌈lg n⌉`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypercubeEmbedding {
    pub k: usize,
    pub coords: Vec<u64>,
}

impl HypercubeEmbedding {
    /// Injective, and adjacent vertices differ in exactly one coordinate.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.coords.len() == g.n()
            && self.coords.iter().all(|&x| x >> self.k == 0 && seen.insert(x))
            && g.edges().iter().all(|&(u, v)| (self.coords[u] ^ self.coords[v]).count_ones() == 1)
    }
}

/// Embeds `g` in `Q_⌈lg n⌉` when `p̂(g) = ⌈lg n⌉`; returns `None` otherwise.
pub fn hypercube_embed(g: &Graph, budget: Budget) -> Result<Option<HypercubeEmbedding>, SolverError> {
    let k = ceil_lg(g.n() as u64) as usize;
    let sol = exact_phat(g, budget)?;
    if sol.value != k {
        return Ok(None);
    }
    let f = &sol.witness;
    // the k colors of an optimal spec are independent; rewrite labels in that basis
    let mut colors: Vec<Gf2Vector> = f.edge_vectors(g);
    colors.sort();
    colors.dedup();
    let mut rows: Vec<(Gf2Vector, u64)> = Vec::new();
    for (i, x) in colors.iter().enumerate() {
        let (r, combo) = eliminate(&rows, x, 1 << i);
        if r.is_zero() {
            return Ok(None);
        }
        rows.push((r, combo));
    }
    let mut coords = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let (r, combo) = eliminate(&rows, f.get(v), 0);
        if !r.is_zero() {
            return Ok(None);
        }
        coords.push(combo);
    }
    let emb = HypercubeEmbedding { k, coords };
    Ok(emb.verify(g).then_some(emb))
}

/// Reduces `x` by rows in insertion order, tracking which original vectors were used.
fn eliminate(rows: &[(Gf2Vector, u64)], x: &Gf2Vector, mut combo: u64) -> (Gf2Vector, u64) {
    let mut r = x.clone();
    for (row, c) in rows {
        let pivot = row.highest().expect("rows are nonzero");
        if r.get(pivot) {
            r += row;
            combo ^= c;
        }
    }
    (r, combo)
}

/// `φ` is a pec and every cycle has every color an even number of times.
pub fn verify_havel_moravek(g: &Graph, phi: &EdgeColoring) -> Result<bool, SolverError> {
    Ok(is_pec(g, phi)? && cycle_space_image_dim(g, phi)? == 0)
}
