//! Explicit colorings of the two-block graph and the hub graph, assembled from
//! component specs joined by cut-edges.

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{ceil_lg, saturating_min_sum, BoundsError, SaturatingInstance, SaturatingOptimum};
use crate::coloring::{canonical_from_labeling, compose_cut_edge, is_spec, ColoringError, EdgeColoring, Labeling};
use crate::gf2::{min_sumset, Gf2Error, Gf2Vector};
use crate::graph::{generate, two_block_graph, Family, Graph, GraphError, HubGraph};
use crate::gray::{gray_coloring, gray_labels, GrayError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Gray(#[from] GrayError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("component coloring failed verification: {0}")]
    Verification(String),
}

/// Spec of `K_{n,n}` from a smallest sumset `A + B` in `F₂^⌈lg n⌉`: `x_i` gets
/// `a_i`, `y_j` gets `b_j` plus one extra coordinate.
pub fn knn_sumset_spec(n: usize) -> Result<(Graph, Labeling, EdgeColoring), ConstructionError> {
    let dim = ceil_lg(n as u64) as usize;
    let w = min_sumset(n, n, dim)?;
    let side = Gf2Vector::atom(dim + 1);
    let labels: Vec<Gf2Vector> = w.a.iter().cloned().chain(w.b.iter().map(|b| b + &side)).collect();
    let g = generate(Family::CompleteBipartite(n, n))?;
    let f = Labeling::new(labels)?;
    let phi = canonical_from_labeling(&g, &f)?;
    if phi.num_colors() != w.size {
        return Err(ConstructionError::Verification(format!(
            "K_{{{n},{n}}} coloring has {} colors, sumset has {}",
            phi.num_colors(),
            w.size
        )));
    }
    Ok((g, f, phi))
}

/// Explicit pec of the two-block graph together with the lower bounds that
/// pin down its parity edge chromatic number.
#[derive(Clone, Debug, Serialize)]
pub struct TwoBlockCertificate {
    pub n: usize,
    pub vertices: usize,
    pub knn_colors: usize,
    pub path_colors: usize,
    /// Colors of the composed pec; an upper bound on p.
    pub upper: usize,
    /// `⌈lg |V|⌉`, a lower bound on p.
    pub lower: usize,
    /// Minimum saturating sum on the block ordering; a lower bound on p̂.
    pub saturating: SaturatingOptimum,
    #[serde(skip)]
    pub graph: Graph,
    #[serde(skip)]
    pub coloring: EdgeColoring,
}

impl TwoBlockCertificate {
    /// `Some(p)` when the two bounds meet.
    pub fn p(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

pub fn two_block_certificate(n: usize) -> Result<TwoBlockCertificate, ConstructionError> {
    let block = two_block_graph(n)?;
    let (knn, _, knn_phi) = knn_sumset_spec(n)?;
    let path = gray_coloring(1 << n, 1)?;
    if !is_spec(&knn, &knn_phi, 0)? || !is_spec(&path.graph, &path.coloring, 0)? {
        return Err(ConstructionError::Verification("component is not a spec".into()));
    }
    let (graph, coloring) = compose_cut_edge(&knn, &knn_phi, &path.graph, &path.coloring, 0, 0)?;
    if graph != block.graph {
        return Err(ConstructionError::Verification("composed graph differs from the two-block graph".into()));
    }
    let saturating = saturating_min_sum(&SaturatingInstance::new(block.lower_bound_ordering().back_degrees))?;
    Ok(TwoBlockCertificate {
        n,
        vertices: graph.n(),
        knn_colors: knn_phi.num_colors(),
        path_colors: path.coloring.num_colors(),
        upper: coloring.num_colors(),
        lower: ceil_lg(graph.n() as u64) as usize,
        saturating,
        graph,
        coloring,
    })
}

/// Per-component summary of the hub graph coloring.
#[derive(Clone, Debug, Serialize)]
pub struct HubComponent {
    pub width: usize,
    pub vertices: usize,
    pub colors: usize,
    pub is_spec: bool,
}

/// Pec of the hub graph: each component keeps a Gray-label canonical coloring
/// and each hub edge gets its own fresh color.
#[derive(Clone, Debug, Serialize)]
pub struct HubColoring {
    pub k: usize,
    pub components: Vec<HubComponent>,
    pub num_colors: usize,
    #[serde(skip)]
    pub coloring: EdgeColoring,
}

pub fn hub_coloring(hub: &HubGraph) -> Result<HubColoring, ConstructionError> {
    let g = &hub.graph;
    let mut local = Vec::with_capacity(hub.r);
    let mut components = Vec::with_capacity(hub.r);
    for (idx, span) in hub.component_spans.iter().enumerate() {
        let width = idx + 1;
        let z = generate(Family::BipartitePathPower(span.len(), width))?;
        let f = gray_labels(span.len() - 1).into_labeling();
        let phi = canonical_from_labeling(&z, &f)?;
        let spec = is_spec(&z, &phi, 0)?;
        components.push(HubComponent { width, vertices: z.n(), colors: phi.num_colors(), is_spec: spec });
        local.push((z, phi));
    }
    let shared = components.iter().map(|c| c.colors).max().unwrap_or(0);
    let raw = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            let idx = hub.component_spans.iter().position(|s| s.contains(&b)).expect("every edge meets a component");
            if a == 0 {
                shared + idx + 1
            } else {
                let start = hub.component_spans[idx].start;
                let (z, phi) = &local[idx];
                phi.color(z.edge_id(a - start, b - start).expect("component edge"))
            }
        })
        .collect();
    let coloring = EdgeColoring::new(raw)?;
    Ok(HubColoring { k: hub.k, num_colors: coloring.num_colors(), components, coloring })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{is_pec, is_pec_with_budget, PathBudget};
    use crate::graph::hub_graph;

    #[test]
    fn knn_specs_use_hopf_stiefel_many_colors() {
        for n in 1..=6 {
            let (g, _, phi) = knn_sumset_spec(n).unwrap();
            assert!(is_spec(&g, &phi, 0).unwrap());
            assert_eq!(phi.num_colors(), 1 << ceil_lg(n as u64));
        }
    }

    #[test]
    fn two_block_small() {
        let c = two_block_certificate(2).unwrap();
        assert_eq!(c.vertices, 8);
        assert_eq!(c.upper, 3);
        assert_eq!(c.p(), Some(3));
        assert!(is_pec(&c.graph, &c.coloring).unwrap());
    }

    #[test]
    fn two_block_four() {
        let c = two_block_certificate(4).unwrap();
        assert_eq!((c.knn_colors, c.path_colors), (4, 4));
        assert_eq!(c.vertices, 24);
        assert_eq!(c.p(), Some(5));
        assert_eq!(c.saturating.value, 6);
        assert!(is_pec_with_budget(&c.graph, &c.coloring, PathBudget::vertices(24)).unwrap());
    }

    #[test]
    fn hub_small() {
        for k in 1..=8 {
            let hub = hub_graph(k).unwrap();
            let h = hub_coloring(&hub).unwrap();
            assert!(h.components.iter().all(|c| c.is_spec));
            assert_eq!(h.coloring.len(), hub.graph.num_edges());
            assert!(h.coloring.is_proper(&hub.graph));
            if hub.graph.n() <= 24 {
                assert!(is_pec(&hub.graph, &h.coloring).unwrap());
            }
        }
        let h = hub_coloring(&hub_graph(8).unwrap()).unwrap();
        assert!(h.num_colors < 18, "{}", h.num_colors);
    }
}
