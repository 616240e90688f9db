//! Edge-colorings and their parity structure.
//!
//! A coloring assigns an integer id to every edge. For the algebra, id `c` is
//! read as the atom `e_c`, and a walk's image is the XOR of the atoms along it.
//! A coloring is a *spec* when no open walk has image zero, and a *pec* when no
//! path of positive length has image zero.
//!
//! The spec test is polynomial: take a BFS tree from the root, let `g(v)` be the
//! image of the tree path to `v`, and let `C` be the span of the images of the
//! fundamental cycles. The walks from the root to `v` have images exactly
//! `g(v) + C`, so the coloring is a spec iff the reduced vectors
//! `reduce(C, g(v))` are pairwise distinct. The same data produces the
//! canonical coloring `uv ↦ reduce(C, e_φ(uv))` that φ refines.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{Gf2Basis, Gf2Vector};
use crate::graph::{generate, Family, Graph, GraphError};

/// Default cap on colors for the walk-state oracle.
pub const DEFAULT_ORACLE_COLOR_CAP: usize = 20;
/// The oracle refuses instances with more than this many `(vertex, parity)` states.
pub const ORACLE_STATE_CAP: u128 = 1 << 26;
/// Default vertex budget for simple-path enumeration.
pub const DEFAULT_PEC_VERTEX_BUDGET: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("coloring has {got} entries but the graph has {expected} edges")]
    EdgeCountMismatch { expected: usize, got: usize },
    #[error("color ids must be positive")]
    ZeroColor,
    #[error("labeling has {got} entries but the graph has {expected} vertices")]
    LabelCountMismatch { expected: usize, got: usize },
    #[error("labeling is not injective: vertices {0} and {1} share a label")]
    NotInjective(usize, usize),
    #[error("not a strong parity edge-coloring: vertices {0} and {1} are joined by an open parity walk")]
    NotSpec(usize, usize),
    #[error("oracle cap exceeded: {0}")]
    OracleCapExceeded(String),
    #[error("path enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid coloring list: {0}")]
    Parse(String),
}

/// Edge-id-indexed color ids, renumbered `1..=num_colors` by first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoringJson", into = "ColoringJson")]
pub struct EdgeColoring {
    colors: Vec<usize>,
    num_colors: usize,
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    colors: Vec<usize>,
}

impl TryFrom<ColoringJson> for EdgeColoring {
    type Error = ColoringError;
    fn try_from(c: ColoringJson) -> Result<Self, ColoringError> {
        EdgeColoring::new(c.colors)
    }
}

impl From<EdgeColoring> for ColoringJson {
    fn from(c: EdgeColoring) -> Self {
        ColoringJson { colors: c.colors }
    }
}

impl EdgeColoring {
    /// Normalizes arbitrary positive ids by first appearance in edge order.
    pub fn new(raw: Vec<usize>) -> Result<Self, ColoringError> {
        if raw.contains(&0) {
            return Err(ColoringError::ZeroColor);
        }
        Ok(Self::normalize(raw))
    }

    /// Normalizes any hashable color names by first appearance.
    pub fn from_names<T: Eq + std::hash::Hash>(names: &[T]) -> Self {
        let mut ids = HashMap::new();
        let colors = names
            .iter()
            .map(|n| {
                let next = ids.len() + 1;
                *ids.entry(n).or_insert(next)
            })
            .collect();
        Self { colors, num_colors: ids.len() }
    }

    fn normalize(raw: Vec<usize>) -> Self {
        Self::from_names(&raw)
    }

    /// Parses `1,2,1,3`.
    pub fn parse_list(s: &str) -> Result<Self, ColoringError> {
        let raw = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| ColoringError::Parse(format!("{x:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(raw)
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, edge: usize) -> usize {
        self.colors[edge]
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn check_graph(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() == g.num_edges() {
            Ok(())
        } else {
            Err(ColoringError::EdgeCountMismatch { expected: g.num_edges(), got: self.colors.len() })
        }
    }

    /// Incident edges always get different colors.
    pub fn is_proper(&self, g: &Graph) -> bool {
        (0..g.n()).all(|v| {
            let mut seen: Vec<usize> = g.neighbors(v).iter().map(|&(_, e)| self.colors[e]).collect();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// The atomic encoding of edge `e`.
    pub fn atom(&self, edge: usize) -> Gf2Vector {
        Gf2Vector::atom(self.colors[edge])
    }
}

/// Injective vertex labeling into F₂-vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Gf2Vector>", into = "Vec<Gf2Vector>")]
pub struct Labeling {
    labels: Vec<Gf2Vector>,
}

impl TryFrom<Vec<Gf2Vector>> for Labeling {
    type Error = ColoringError;
    fn try_from(labels: Vec<Gf2Vector>) -> Result<Self, ColoringError> {
        Labeling::new(labels)
    }
}

impl From<Labeling> for Vec<Gf2Vector> {
    fn from(l: Labeling) -> Self {
        l.labels
    }
}

impl Labeling {
    pub fn new(labels: Vec<Gf2Vector>) -> Result<Self, ColoringError> {
        let mut first = HashMap::with_capacity(labels.len());
        for (v, x) in labels.iter().enumerate() {
            if let Some(u) = first.insert(x, v) {
                return Err(ColoringError::NotInjective(u, v));
            }
        }
        Ok(Self { labels })
    }

    pub fn from_bits(bits: &[u64]) -> Result<Self, ColoringError> {
        Self::new(bits.iter().map(|&b| Gf2Vector::from_bits(b)).collect())
    }

    pub fn labels(&self) -> &[Gf2Vector] {
        &self.labels
    }

    pub fn get(&self, v: usize) -> &Gf2Vector {
        &self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Translates every label so that vertex `z` gets 0. The generated coloring
    /// is unchanged.
    pub fn normalized_at(&self, z: usize) -> Self {
        let shift = self.labels[z].clone();
        Self { labels: self.labels.iter().map(|x| x + &shift).collect() }
    }

    /// `f(u) + f(v)` for every edge, in edge-id order.
    pub fn edge_vectors(&self, g: &Graph) -> Vec<Gf2Vector> {
        g.edges().iter().map(|&(u, v)| &self.labels[u] + &self.labels[v]).collect()
    }
}

/// The coloring `uv ↦ f(u) + f(v)`, with ids by first appearance of each vector.
pub fn canonical_from_labeling(g: &Graph, f: &Labeling) -> Result<EdgeColoring, ColoringError> {
    if f.len() != g.n() {
        return Err(ColoringError::LabelCountMismatch { expected: g.n(), got: f.len() });
    }
    Ok(EdgeColoring::from_names(&f.edge_vectors(g)))
}

/// An explicit walk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkWitness {
    pub vertices: Vec<usize>,
    pub closed: bool,
}

impl WalkWitness {
    pub fn new(vertices: Vec<usize>) -> Self {
        let closed = vertices.first() == vertices.last();
        Self { vertices, closed }
    }

    /// XOR of the atoms along the walk, or `None` if consecutive vertices are
    /// not adjacent.
    pub fn image(&self, g: &Graph, phi: &EdgeColoring) -> Option<Gf2Vector> {
        let mut acc = Gf2Vector::zero();
        for w in self.vertices.windows(2) {
            acc += &phi.atom(g.edge_id(w[0], w[1])?);
        }
        Some(acc)
    }

    pub fn is_parity_walk(&self, g: &Graph, phi: &EdgeColoring) -> bool {
        self.vertices.len() >= 2 && self.image(g, phi).is_some_and(|x| x.is_zero())
    }

    pub fn reversed(&self) -> Self {
        Self { vertices: self.vertices.iter().rev().copied().collect(), closed: self.closed }
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn concat(&self, other: &Self) -> Option<Self> {
        if self.vertices.last() != other.vertices.first() {
            return None;
        }
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices[1..]);
        Some(Self::new(v))
    }
}

/// Searches `(vertex, parity)` states breadth-first from every start for an
/// open parity walk. Exponential in the number of colors; meant as an
/// independent cross-check of [`is_spec`].
pub fn parity_walk_oracle(g: &Graph, phi: &EdgeColoring) -> Result<Option<WalkWitness>, ColoringError> {
    parity_walk_oracle_with_cap(g, phi, DEFAULT_ORACLE_COLOR_CAP)
}

pub fn parity_walk_oracle_with_cap(
    g: &Graph,
    phi: &EdgeColoring,
    color_cap: usize,
) -> Result<Option<WalkWitness>, ColoringError> {
    phi.check_graph(g)?;
    g.require_connected()?;
    let c = phi.num_colors();
    if c > color_cap.min(63) {
        return Err(ColoringError::OracleCapExceeded(format!("{c} colors, cap {color_cap}")));
    }
    let states = (g.n() as u128) << c;
    if states > ORACLE_STATE_CAP {
        return Err(ColoringError::OracleCapExceeded(format!("{states} states")));
    }
    let bit = |e: usize| 1u64 << (phi.color(e) - 1);
    for start in 0..g.n() {
        let mut parent: HashMap<(usize, u64), (usize, u64)> = HashMap::new();
        let mut queue = VecDeque::from([(start, 0u64)]);
        parent.insert((start, 0), (usize::MAX, 0));
        while let Some((v, mask)) = queue.pop_front() {
            for &(w, e) in g.neighbors(v) {
                let next = (w, mask ^ bit(e));
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next, (v, mask));
                if next.1 == 0 && w != start {
                    let mut walk = vec![w];
                    let mut cur = (v, mask);
                    while cur.0 != usize::MAX {
                        walk.push(cur.0);
                        cur = parent[&cur];
                    }
                    walk.reverse();
                    return Ok(Some(WalkWitness::new(walk)));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// Tree images and the cycle-image span for a rooted connected graph.
struct CosetData {
    tree_images: Vec<Gf2Vector>,
    cycles: Gf2Basis,
}

fn coset_data(g: &Graph, phi: &EdgeColoring, root: usize) -> Result<CosetData, ColoringError> {
    phi.check_graph(g)?;
    g.check_vertex(root)?;
    let bfs = g.bfs(root);
    if bfs.len() != g.n() {
        return Err(GraphError::Disconnected.into());
    }
    let mut tree_images = vec![Gf2Vector::zero(); g.n()];
    let mut tree_edge = vec![false; g.num_edges()];
    for &(v, parent) in &bfs {
        if let Some((p, e)) = parent {
            tree_images[v] = &tree_images[p] + &phi.atom(e);
            tree_edge[e] = true;
        }
    }
    let mut cycles = Gf2Basis::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if !tree_edge[e] {
            let mut img = &tree_images[u] + &tree_images[v];
            img += &phi.atom(e);
            cycles.insert(&img);
        }
    }
    Ok(CosetData { tree_images, cycles })
}

impl CosetData {
    fn reduced_labels(&self) -> Vec<Gf2Vector> {
        self.tree_images.iter().map(|x| self.cycles.reduce(x)).collect()
    }

    fn first_collision(labels: &[Gf2Vector]) -> Option<(usize, usize)> {
        let mut first = HashMap::with_capacity(labels.len());
        labels.iter().enumerate().find_map(|(v, x)| first.insert(x, v).map(|u| (u, v)))
    }
}

/// The canonical coloring that a spec refines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalizationResult {
    /// Coset representatives of the walk-image sets, one per vertex.
    pub labeling: Labeling,
    pub coloring_star: EdgeColoring,
    /// Representative vector naming each color of `coloring_star` (index `id - 1`).
    pub star_names: Vec<Gf2Vector>,
    /// `refinement_map[c - 1]` is the id in `coloring_star` of φ's color `c`.
    pub refinement_map: Vec<usize>,
    /// Span of the cycle images, equal to the closed-walk images at the root.
    pub s_r_basis: Gf2Basis,
}

#[derive(Serialize)]
struct CanonicalizationJson<'a> {
    labeling: Vec<String>,
    coloring_star: &'a [usize],
    star_names: Vec<String>,
    num_colors_star: usize,
    refinement_map: HashMap<usize, usize>,
    dim_cycle_space_image: usize,
}

impl CanonicalizationResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CanonicalizationJson {
            labeling: self.labeling.labels().iter().map(Gf2Vector::to_hex).collect(),
            coloring_star: self.coloring_star.colors(),
            star_names: self.star_names.iter().map(Gf2Vector::to_hex).collect(),
            num_colors_star: self.coloring_star.num_colors(),
            refinement_map: self.refinement_map.iter().enumerate().map(|(i, &s)| (i + 1, s)).collect(),
            dim_cycle_space_image: self.s_r_basis.dim(),
        })
        .expect("plain data serializes")
    }
}

/// Canonicalizes a spec. Returns [`ColoringError::NotSpec`] with two vertices
/// joined by an open parity walk when φ is not a spec.
pub fn canonicalize(g: &Graph, phi: &EdgeColoring, root: usize) -> Result<CanonicalizationResult, ColoringError> {
    let data = coset_data(g, phi, root)?;
    let labels = data.reduced_labels();
    if let Some((u, v)) = CosetData::first_collision(&labels) {
        return Err(ColoringError::NotSpec(u, v));
    }
    // reduce is linear, so f(u) + f(v) = reduce(e_φ(uv))
    let reps: Vec<Gf2Vector> = (1..=phi.num_colors()).map(|c| data.cycles.reduce(&Gf2Vector::atom(c))).collect();
    let edge_names: Vec<&Gf2Vector> = phi.colors().iter().map(|&c| &reps[c - 1]).collect();
    let coloring_star = EdgeColoring::from_names(&edge_names);
    let mut star_names = vec![Gf2Vector::zero(); coloring_star.num_colors()];
    let mut refinement_map = vec![0; phi.num_colors()];
    for (e, &c) in phi.colors().iter().enumerate() {
        let s = coloring_star.color(e);
        refinement_map[c - 1] = s;
        star_names[s - 1] = reps[c - 1].clone();
    }
    Ok(CanonicalizationResult {
        labeling: Labeling::new(labels).expect("checked injective"),
        coloring_star,
        star_names,
        refinement_map,
        s_r_basis: data.cycles,
    })
}

/// Two vertices joined by an open parity walk, if any.
pub fn spec_violation(g: &Graph, phi: &EdgeColoring, root: usize) -> Result<Option<(usize, usize)>, ColoringError> {
    let data = coset_data(g, phi, root)?;
    Ok(CosetData::first_collision(&data.reduced_labels()))
}

pub fn is_spec(g: &Graph, phi: &EdgeColoring, root: usize) -> Result<bool, ColoringError> {
    Ok(spec_violation(g, phi, root)?.is_none())
}

/// Dimension of the span of the cycle images.
pub fn cycle_space_image_dim(g: &Graph, phi: &EdgeColoring) -> Result<usize, ColoringError> {
    Ok(coset_data(g, phi, 0)?.cycles.dim())
}

/// Every color class of `phi` lies inside one class of `phi_star`.
pub fn is_refinement(phi: &EdgeColoring, phi_star: &EdgeColoring) -> Result<bool, ColoringError> {
    if phi.len() != phi_star.len() {
        return Err(ColoringError::EdgeCountMismatch { expected: phi.len(), got: phi_star.len() });
    }
    let mut image = vec![0usize; phi.num_colors()];
    for (&c, &s) in phi.colors().iter().zip(phi_star.colors()) {
        match image[c - 1] {
            0 => image[c - 1] = s,
            prev if prev != s => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// Limits for simple-path enumeration.
#[derive(Clone, Copy, Debug)]
pub struct PathBudget {
    pub max_vertices: usize,
    /// Cap on DFS extensions; `None` for unlimited.
    pub max_steps: Option<u64>,
}

impl Default for PathBudget {
    fn default() -> Self {
        Self { max_vertices: DEFAULT_PEC_VERTEX_BUDGET, max_steps: None }
    }
}

impl PathBudget {
    pub fn vertices(max_vertices: usize) -> Self {
        Self { max_vertices, max_steps: None }
    }
}

pub fn is_pec(g: &Graph, phi: &EdgeColoring) -> Result<bool, ColoringError> {
    is_pec_with_budget(g, phi, PathBudget::default())
}

/// Backtracking over simple paths. Along a path every prefix image must be
/// distinct, since two equal prefix images bound a parity subpath.
pub fn is_pec_with_budget(g: &Graph, phi: &EdgeColoring, budget: PathBudget) -> Result<bool, ColoringError> {
    Ok(find_parity_path(g, phi, budget)?.is_none())
}

/// A parity path, if one exists.
pub fn find_parity_path(g: &Graph, phi: &EdgeColoring, budget: PathBudget) -> Result<Option<Vec<usize>>, ColoringError> {
    phi.check_graph(g)?;
    if g.n() > budget.max_vertices {
        return Err(ColoringError::BudgetExceeded(format!(
            "{} vertices, budget {}",
            g.n(),
            budget.max_vertices
        )));
    }
    if phi.num_colors() > 128 {
        return Err(ColoringError::BudgetExceeded(format!("{} colors, at most 128 supported", phi.num_colors())));
    }
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &(a, e)) in nb.iter().enumerate() {
            if let Some(&(b, _)) = nb[i + 1..].iter().find(|&&(_, f)| phi.color(f) == phi.color(e)) {
                return Ok(Some(vec![a, v, b]));
            }
        }
    }
    let mut search = PathSearch {
        g,
        bits: phi.colors().iter().map(|&c| 1u128 << (c - 1)).collect(),
        on_path: vec![false; g.n()],
        path: Vec::new(),
        prefix: Vec::new(),
        steps: 0,
        max_steps: budget.max_steps,
    };
    for s in 0..g.n() {
        if search.from(s, 0)? {
            return Ok(Some(search.path));
        }
    }
    Ok(None)
}

struct PathSearch<'a> {
    g: &'a Graph,
    bits: Vec<u128>,
    on_path: Vec<bool>,
    path: Vec<usize>,
    prefix: Vec<u128>,
    steps: u64,
    max_steps: Option<u64>,
}

impl PathSearch<'_> {
    fn from(&mut self, v: usize, mask: u128) -> Result<bool, ColoringError> {
        self.steps += 1;
        if self.max_steps.is_some_and(|m| self.steps > m) {
            return Err(ColoringError::BudgetExceeded(format!("more than {} path steps", self.steps - 1)));
        }
        if let Some(i) = self.prefix.iter().position(|&p| p == mask) {
            self.path.drain(..i);
            self.path.push(v);
            return Ok(true);
        }
        self.on_path[v] = true;
        self.path.push(v);
        self.prefix.push(mask);
        for &(w, e) in self.g.neighbors(v) {
            if !self.on_path[w] && self.from(w, mask ^ self.bits[e])? {
                return Ok(true);
            }
        }
        self.prefix.pop();
        self.path.pop();
        self.on_path[v] = false;
        Ok(false)
    }
}

/// Lifts a spec of `K_n` to `K_{n,n}`: `x_i y_j` and `x_j y_i` take the color of
/// `v_i v_j`, and every `x_i y_i` gets one new color.
pub fn lift_kn_to_knn(n: usize, phi: &EdgeColoring) -> Result<(Graph, EdgeColoring), ColoringError> {
    let kn = generate(Family::Complete(n))?;
    if !is_spec(&kn, phi, 0)? {
        let (u, v) = spec_violation(&kn, phi, 0)?.expect("not a spec");
        return Err(ColoringError::NotSpec(u, v));
    }
    let knn = generate(Family::CompleteBipartite(n, n))?;
    let fresh = phi.num_colors() + 1;
    let raw = knn
        .edges()
        .iter()
        .map(|&(x, y)| {
            let (i, j) = (x, y - n);
            if i == j {
                fresh
            } else {
                phi.color(kn.edge_id(i, j).expect("complete graph"))
            }
        })
        .collect();
    Ok((knn, EdgeColoring::new(raw)?))
}

/// Colors two graphs joined by a cut-edge: both sides keep their ids and the
/// cut-edge gets a color used nowhere else. The result is a pec whenever both
/// inputs are.
pub fn compose_cut_edge(
    g1: &Graph,
    phi1: &EdgeColoring,
    g2: &Graph,
    phi2: &EdgeColoring,
    u: usize,
    v: usize,
) -> Result<(Graph, EdgeColoring), ColoringError> {
    phi1.check_graph(g1)?;
    phi2.check_graph(g2)?;
    let joined = crate::graph::cut_edge_join(g1, g2, u, v)?;
    let fresh = phi1.num_colors().max(phi2.num_colors()) + 1;
    let raw = phi1.colors().iter().chain(phi2.colors()).copied().chain(std::iter::once(fresh)).collect();
    Ok((joined, EdgeColoring::new(raw)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn c4() -> Graph {
        generate(Family::Cycle(4)).unwrap()
    }

    fn col(raw: &[usize]) -> EdgeColoring {
        EdgeColoring::new(raw.to_vec()).unwrap()
    }

    #[test]
    fn normalization() {
        let c = col(&[5, 3, 5, 9]);
        assert_eq!(c.colors(), &[1, 2, 1, 3]);
        assert_eq!(c.num_colors(), 3);
        assert_eq!(EdgeColoring::new(vec![1, 0]), Err(ColoringError::ZeroColor));
        assert_eq!(EdgeColoring::parse_list("1, 2,1,3").unwrap(), col(&[1, 2, 1, 3]));
        assert!(EdgeColoring::parse_list("1,x").is_err());
    }

    #[test]
    fn canonical_examples() {
        let f = Labeling::from_bits(&[0b00, 0b01, 0b11, 0b10]).unwrap();
        let phi = canonical_from_labeling(&c4(), &f).unwrap();
        assert_eq!(phi.num_colors(), 2);
        assert_eq!(phi.colors(), &[1, 2, 1, 2]);

        let k4 = generate(Family::Complete(4)).unwrap();
        let f = Labeling::from_bits(&[0, 1, 2, 3]).unwrap();
        assert_eq!(canonical_from_labeling(&k4, &f).unwrap().num_colors(), 3);

        let k2 = generate(Family::Complete(2)).unwrap();
        let f = Labeling::from_bits(&[0, 1]).unwrap();
        assert_eq!(canonical_from_labeling(&k2, &f).unwrap().num_colors(), 1);

        assert_eq!(Labeling::from_bits(&[0, 1, 1]), Err(ColoringError::NotInjective(1, 2)));
        let f = Labeling::from_bits(&[0, 1]).unwrap();
        assert!(canonical_from_labeling(&c4(), &f).is_err());
    }

    #[test]
    fn oracle_examples() {
        let k2 = generate(Family::Complete(2)).unwrap();
        assert_eq!(parity_walk_oracle(&k2, &col(&[1])).unwrap(), None);

        let p3 = generate(Family::Path(3)).unwrap();
        let phi = col(&[1, 1]);
        let w = parity_walk_oracle(&p3, &phi).unwrap().expect("walk");
        assert!(w.is_parity_walk(&p3, &phi));
        assert!(!w.closed);
        assert_eq!(w.vertices, vec![0, 1, 2]);

        assert_eq!(parity_walk_oracle(&c4(), &col(&[1, 2, 1, 3])).unwrap(), None);
    }

    #[test]
    fn oracle_caps() {
        let p = generate(Family::Path(30)).unwrap();
        let phi = EdgeColoring::new((1..30).collect()).unwrap();
        assert!(matches!(parity_walk_oracle(&p, &phi), Err(ColoringError::OracleCapExceeded(_))));
        let disc = Graph::new(3, [(0, 1)]).unwrap();
        assert!(parity_walk_oracle(&disc, &col(&[1])).is_err());
    }

    #[test]
    fn is_spec_examples() {
        assert!(is_spec(&c4(), &col(&[1, 2, 1, 3]), 0).unwrap());
        let k3 = generate(Family::Complete(3)).unwrap();
        assert!(is_spec(&k3, &col(&[1, 2, 3]), 0).unwrap());
        assert_eq!(parity_walk_oracle(&k3, &col(&[1, 2, 3])).unwrap(), None);

        let c6 = generate(Family::Cycle(6)).unwrap();
        for raw in [[1, 2, 1, 2, 1, 2], [1, 2, 3, 1, 2, 3]] {
            let phi = col(&raw);
            let oracle = parity_walk_oracle(&c6, &phi).unwrap().is_none();
            assert_eq!(is_spec(&c6, &phi, 0).unwrap(), oracle, "{raw:?}");
        }
        // 1,2,1,2 along a path of length 4 is a parity path
        assert!(!is_spec(&c6, &col(&[1, 2, 1, 2, 1, 2]), 0).unwrap());
        // canonical: vertex labels e1, e1+e2, e1+e2+e3, e2+e3, e3, 0
        assert!(is_spec(&c6, &col(&[1, 2, 3, 1, 2, 3]), 0).unwrap());

        let disc = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(is_spec(&disc, &col(&[1]), 0), Err(ColoringError::Graph(GraphError::Disconnected))));
    }

    #[test]
    fn is_pec_examples() {
        let p3 = generate(Family::Path(3)).unwrap();
        assert!(!is_pec(&p3, &col(&[1, 1])).unwrap());
        assert!(is_pec(&c4(), &col(&[1, 2, 1, 3])).unwrap());

        // 3 colors are too few on C5: 4-0-1-2-3 reads 2,1,2,1
        let c5 = generate(Family::Cycle(5)).unwrap();
        assert!(!is_pec(&c5, &col(&[1, 2, 1, 3, 2])).unwrap());
        let phi = col(&[1, 2, 1, 3, 4]);
        assert!(is_pec(&c5, &phi).unwrap());

        let big = generate(Family::Path(25)).unwrap();
        let phi = EdgeColoring::new((1..25).collect()).unwrap();
        assert!(matches!(is_pec(&big, &phi), Err(ColoringError::BudgetExceeded(_))));
        assert!(is_pec_with_budget(&big, &phi, PathBudget::vertices(25)).unwrap());

        let k4 = generate(Family::Complete(4)).unwrap();
        let phi = col(&[1, 2, 3, 3, 2, 1]);
        let budget = PathBudget { max_vertices: 24, max_steps: Some(2) };
        assert!(matches!(is_pec_with_budget(&k4, &phi, budget), Err(ColoringError::BudgetExceeded(_))));
    }

    #[test]
    fn parity_path_witness_is_a_parity_path() {
        // 1,2,1,2 on P5 is a parity path of length 4
        let p5 = generate(Family::Path(5)).unwrap();
        let phi = col(&[1, 2, 1, 2]);
        let path = find_parity_path(&p5, &phi, PathBudget::default()).unwrap().unwrap();
        let w = WalkWitness::new(path.clone());
        assert!(w.is_parity_walk(&p5, &phi));
        let mut sorted = path.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), path.len());
    }

    #[test]
    fn four_cycle_canonicalization() {
        let phi = col(&[1, 2, 1, 3]);
        let res = canonicalize(&c4(), &phi, 0).unwrap();
        assert_eq!(res.coloring_star.num_colors(), 2);
        assert_eq!(res.refinement_map, vec![1, 2, 2]);
        assert_eq!(res.coloring_star.colors(), &[1, 2, 1, 2]);
        // S_r = {0, e2 + e3}
        assert_eq!(res.s_r_basis.rows(), &[Gf2Vector::from_coords([2, 3])]);
        assert!(is_refinement(&phi, &res.coloring_star).unwrap());
        let regenerated = canonical_from_labeling(&c4(), &res.labeling).unwrap();
        assert_eq!(regenerated, res.coloring_star);
        assert_eq!(cycle_space_image_dim(&c4(), &phi).unwrap(), 1);
    }

    #[test]
    fn canonical_input_is_fixed() {
        let g = generate(Family::Hypercube(3)).unwrap();
        let f = Labeling::from_bits(&[0, 1, 2, 3, 4, 5, 6, 7]).unwrap();
        let phi = canonical_from_labeling(&g, &f).unwrap();
        let res = canonicalize(&g, &phi, 0).unwrap();
        assert_eq!(res.coloring_star.num_colors(), phi.num_colors());
        let mut pi = res.refinement_map.clone();
        pi.sort_unstable();
        pi.dedup();
        assert_eq!(pi.len(), phi.num_colors());
    }

    #[test]
    fn canonicalize_reports_collision() {
        let p3 = generate(Family::Path(3)).unwrap();
        assert_eq!(canonicalize(&p3, &col(&[1, 1]), 0), Err(ColoringError::NotSpec(0, 2)));
    }

    #[test]
    fn refinement_examples() {
        let phi = col(&[1, 2, 1]);
        assert!(is_refinement(&phi, &phi).unwrap());
        // e1 and e3 share a φ class but land in different φ* classes
        let star = col(&[1, 2, 2]);
        assert!(!is_refinement(&phi, &star).unwrap());
        assert!(is_refinement(&col(&[1, 2, 3]), &star).unwrap());
        assert!(is_refinement(&phi, &col(&[1, 2])).is_err());
    }

    #[test]
    fn lift_examples() {
        let (g, phi) = lift_kn_to_knn(2, &col(&[1])).unwrap();
        assert_eq!(phi.num_colors(), 2);
        assert!(is_spec(&g, &phi, 0).unwrap());

        let (g, phi) = lift_kn_to_knn(3, &col(&[1, 2, 3])).unwrap();
        assert_eq!(phi.num_colors(), 4);
        assert!(is_spec(&g, &phi, 0).unwrap());

        let k4 = generate(Family::Complete(4)).unwrap();
        let spec = canonical_from_labeling(&k4, &Labeling::from_bits(&[0, 1, 2, 3]).unwrap()).unwrap();
        let (g, phi) = lift_kn_to_knn(4, &spec).unwrap();
        assert_eq!(phi.num_colors(), 4);
        assert!(is_spec(&g, &phi, 0).unwrap());

        let k3 = generate(Family::Complete(3)).unwrap();
        assert_eq!(k3.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert!(matches!(lift_kn_to_knn(3, &col(&[1, 1, 2])), Err(ColoringError::NotSpec(..))));
    }

    #[test]
    fn cycle_image_dims() {
        let t = Graph::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(cycle_space_image_dim(&t, &col(&[1, 1, 1, 1])).unwrap(), 0);
        let k3 = generate(Family::Complete(3)).unwrap();
        assert_eq!(cycle_space_image_dim(&k3, &col(&[1, 2, 3])).unwrap(), 1);
        let q2 = generate(Family::Hypercube(2)).unwrap();
        let f = Labeling::from_bits(&[0, 1, 2, 3]).unwrap();
        let phi = canonical_from_labeling(&q2, &f).unwrap();
        assert_eq!(cycle_space_image_dim(&q2, &phi).unwrap(), 0);
    }

    #[test]
    fn walk_helpers() {
        let g = c4();
        let phi = col(&[1, 2, 1, 3]);
        let a = WalkWitness::new(vec![0, 1, 2]);
        let b = WalkWitness::new(vec![2, 3, 0]);
        let cyc = a.concat(&b).unwrap();
        assert!(cyc.closed);
        assert_eq!(cyc.image(&g, &phi).unwrap(), Gf2Vector::from_coords([2, 3]));
        assert_eq!(a.reversed().vertices, vec![2, 1, 0]);
        assert!(a.concat(&a).is_none());
        assert!(WalkWitness::new(vec![0, 2]).image(&g, &phi).is_none());
    }

    #[test]
    fn compose_cut_edge_keeps_pec() {
        let p4 = generate(Family::Path(4)).unwrap();
        let phi = col(&[1, 2, 1]);
        let (g, psi) = compose_cut_edge(&p4, &phi, &p4, &phi, 3, 0).unwrap();
        assert_eq!(psi.num_colors(), 3);
        assert_eq!(psi.color(g.num_edges() - 1), 3);
        assert!(is_pec(&g, &psi).unwrap());
    }

    #[test]
    fn json_shapes() {
        let phi = col(&[1, 2, 1, 3]);
        assert_eq!(serde_json::to_string(&phi).unwrap(), r#"{"colors":[1,2,1,3]}"#);
        let f = Labeling::from_bits(&[0, 1, 3]).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"["0","1","3"]"#);
        let res = canonicalize(&c4(), &phi, 0).unwrap();
        let j = res.to_json();
        assert_eq!(j["num_colors_star"], 2);
        assert_eq!(j["dim_cycle_space_image"], 1);
        assert_eq!(j["labeling"][0], "0");
    }
}
