//! The ruler sequence, reflected Gray code labels and the canonical coloring
//! of path powers they generate.
//!
//! Positions of the ruler sequence are 1-based (`c_1 = 1, c_2 = 2, c_3 = 1, …`)
//! while vertices of the path power are `0..n`; vertex `i` gets label `s_i`, the
//! XOR of the atoms `e_{c_1}, …, e_{c_i}`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::ceil_lg;
use crate::coloring::{canonical_from_labeling, ColoringError, EdgeColoring, Labeling};
use crate::gf2::Gf2Vector;
use crate::graph::{generate_with_cap, Family, Graph, GraphError, DEFAULT_VERTEX_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrayError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("width {width} is outside 1..=ceil(lg {n})")]
    OutsideRegime { n: usize, width: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// `c_i = 1 + v₂(i)` for `i >= 1`.
pub fn ruler(i: u64) -> u32 {
    assert!(i >= 1, "ruler positions start at 1");
    i.trailing_zeros() + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RulerSequence {
    entries: Vec<u32>,
}

impl RulerSequence {
    /// Entry at 1-based position `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.entries[i - 1]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn ruler_sequence(m: usize) -> RulerSequence {
    RulerSequence { entries: (1..=m as u64).map(ruler).collect() }
}

/// `s_0, …, s_m` with `s_i = s_{i-1} + e_{c_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrayLabels {
    labels: Vec<Gf2Vector>,
}

impl GrayLabels {
    pub fn get(&self, i: usize) -> &Gf2Vector {
        &self.labels[i]
    }

    pub fn as_slice(&self) -> &[Gf2Vector] {
        &self.labels
    }

    pub fn into_labeling(self) -> Labeling {
        Labeling::new(self.labels).expect("Gray code labels are distinct below 2^64")
    }
}

pub fn gray_labels(m: usize) -> GrayLabels {
    let mut labels = Vec::with_capacity(m + 1);
    let mut acc = Gf2Vector::zero();
    labels.push(acc.clone());
    for i in 1..=m as u64 {
        acc.flip(ruler(i) as usize);
        labels.push(acc.clone());
    }
    GrayLabels { labels }
}

/// The canonical coloring of the path power generated by Gray code labels.
#[derive(Clone, Debug)]
pub struct GrayColoring {
    pub n: usize,
    pub width: usize,
    pub graph: Graph,
    pub labeling: Labeling,
    pub coloring: EdgeColoring,
    /// `1 <= width <= ⌈lg n⌉`, where the census guarantees apply.
    pub in_regime: bool,
}

impl GrayColoring {
    /// Distinct edge colors as vectors.
    pub fn color_vectors(&self) -> Vec<Gf2Vector> {
        let mut names = vec![Gf2Vector::zero(); self.coloring.num_colors()];
        for (e, x) in self.labeling.edge_vectors(&self.graph).into_iter().enumerate() {
            names[self.coloring.color(e) - 1] = x;
        }
        names
    }

    /// Number of colors whose largest coordinate is `k`, for each `k`.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for x in self.color_vectors() {
            *out.entry(x.highest().expect("colors are nonzero")).or_insert(0) += 1;
        }
        out
    }
}

pub fn gray_coloring(n: usize, width: usize) -> Result<GrayColoring, GrayError> {
    gray_coloring_with_cap(n, width, DEFAULT_VERTEX_CAP)
}

pub fn gray_coloring_with_cap(n: usize, width: usize, cap: usize) -> Result<GrayColoring, GrayError> {
    if n < 2 || width < 1 || width >= n {
        return Err(GrayError::ParameterOutOfRange(format!("need n >= 2 and 1 <= width < n, got n = {n}, width = {width}")));
    }
    let graph = generate_with_cap(Family::PathPower(n, width), cap)?;
    let labeling = gray_labels(n - 1).into_labeling();
    let coloring = canonical_from_labeling(&graph, &labeling)?;
    let in_regime = width <= ceil_lg(n as u64) as usize;
    Ok(GrayColoring { n, width, graph, labeling, coloring, in_regime })
}

/// Census of the Gray coloring; only defined inside the regime.
pub fn color_census(n: usize, width: usize) -> Result<BTreeMap<usize, usize>, GrayError> {
    if n < 2 || width < 1 || width > ceil_lg(n as u64) as usize {
        return Err(GrayError::OutsideRegime { n, width });
    }
    Ok(gray_coloring(n, width)?.census())
}

/// The color of window `(c_{i+1}, …, c_j)`: the XOR of its atoms.
pub fn window_color(i: usize, j: usize) -> Gf2Vector {
    assert!(i < j, "windows are nonempty");
    let mut acc = Gf2Vector::zero();
    for p in i + 1..=j {
        acc.flip(ruler(p as u64) as usize);
    }
    acc
}

/// Largest entry of the window `(c_{i+1}, …, c_j)`.
pub fn window_max(i: usize, j: usize) -> u32 {
    (i + 1..=j).map(|p| ruler(p as u64)).max().expect("nonempty window")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TrimOutcome {
    /// The trimmed sum equals `s_index`.
    Member { index: usize },
    NotMember,
    HypothesisViolation,
}

impl TrimOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, TrimOutcome::Member { .. })
    }
}

fn trim_hypothesis(q: usize, r: usize, m: usize) -> bool {
    2 * r <= m && (r == q || r == q + 1) && q + r <= m
}

/// Tests whether `a_{q+1} + … + a_{m−r}` is among `s_0, …, s_m`.
pub fn trim_check(q: usize, r: usize, m: usize) -> TrimOutcome {
    if !trim_hypothesis(q, r, m) {
        return TrimOutcome::HypothesisViolation;
    }
    let labels = gray_labels(m);
    trim_against(q, r, m, labels.as_slice())
}

fn trim_against(q: usize, r: usize, m: usize, labels: &[Gf2Vector]) -> TrimOutcome {
    let sum = if q < m - r { window_color(q, m - r) } else { Gf2Vector::zero() };
    match labels[..=m].iter().position(|s| *s == sum) {
        Some(index) => TrimOutcome::Member { index },
        None => TrimOutcome::NotMember,
    }
}

/// Runs [`trim_check`] over every valid triple with `m <= max_m`. Returns the
/// number of triples checked, or the first failing triple.
pub fn trim_sweep(max_m: usize) -> Result<usize, (usize, usize, usize)> {
    let labels = gray_labels(max_m);
    let mut count = 0;
    for m in 0..=max_m {
        for r in 0..=m / 2 {
            for q in [r.wrapping_sub(1), r] {
                if q > r || !trim_hypothesis(q, r, m) {
                    continue;
                }
                if !trim_against(q, r, m, labels.as_slice()).holds() {
                    return Err((q, r, m));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

/// For a window `(i, j]` of length at most `width` with largest entry `k`,
/// finds `i'` with `2^{k-1} - width <= i' < 2^{k-1}` such that the window
/// `(i', 2^{k-1}]` has the same color. Scans candidates nearest first.
pub fn largest_element_window_reduction(i: usize, j: usize, width: usize) -> Option<(usize, usize)> {
    if i >= j || j - i > width {
        return None;
    }
    let k = window_max(i, j);
    let target = window_color(i, j);
    let end = 1usize << (k - 1);
    let lo = end.saturating_sub(width);
    let mut acc = Gf2Vector::zero();
    for start in (lo..end).rev() {
        acc.flip(ruler(start as u64 + 1) as usize);
        if acc == target {
            return Some((start, end));
        }
    }
    None
}
