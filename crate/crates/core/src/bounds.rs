//! Lower and upper bounds on the strong parity edge chromatic number.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{canonicalize, ColoringError, EdgeColoring};
use crate::gf2::binomial;
use crate::graph::{hub_graph_with_cap, Graph, GraphError, DEFAULT_VERTEX_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("vertex {0} has no earlier neighbor in the ordering")]
    NoEarlierNeighbor(usize),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `⌈lg n⌉` in integer arithmetic; `ceil_lg(1) = 0`.
pub fn ceil_lg(n: u64) -> u32 {
    assert!(n >= 1, "ceil_lg of zero");
    u64::BITS - (n - 1).leading_zeros()
}

/// `⌊lg n⌋` for `n >= 1`.
pub fn floor_lg(n: u64) -> u32 {
    assert!(n >= 1, "floor_lg of zero");
    u64::BITS - 1 - n.leading_zeros()
}

/// The Hopf–Stiefel function via the closed form
/// `min_j 2^j (⌈s/2^j⌉ + ⌈t/2^j⌉ − 1)`.
///
/// Terms with `j > ⌈lg(s+t)⌉` are at least `2^j > s + t − 1`, the `j = 0` term,
/// so the loop stops there.
pub fn hopf_stiefel(s: u64, t: u64) -> u64 {
    assert!(s >= 1 && t >= 1, "hopf_stiefel needs positive arguments");
    (0..=ceil_lg(s + t))
        .map(|j| {
            let p = 1u64 << j;
            p * (s.div_ceil(p) + t.div_ceil(p) - 1)
        })
        .min()
        .expect("nonempty range")
}

/// Largest `s + t` accepted by [`hopf_stiefel_binomial`].
pub const BINOMIAL_GUARD: u64 = 10_000;

/// The Hopf–Stiefel function as the least `n` for which `C(n, k)` is even for
/// every `n − t < k < s`. Parity comes from Lucas: `C(n, k)` is odd iff the
/// binary digits of `k` are a subset of those of `n`.
pub fn hopf_stiefel_binomial(s: u64, t: u64) -> Result<u64, BoundsError> {
    if s == 0 || t == 0 {
        return Err(BoundsError::ParameterOutOfRange("s and t must be positive".into()));
    }
    if s + t > BINOMIAL_GUARD {
        return Err(BoundsError::ParameterOutOfRange(format!("s + t above {BINOMIAL_GUARD}")));
    }
    let odd = |n: u64, k: u64| k <= n && k & !n == 0;
    let mut n = s.max(t);
    loop {
        let lo = (n + 1).saturating_sub(t);
        if (lo..s).all(|k| !odd(n, k)) {
            return Ok(n);
        }
        n += 1;
    }
}

/// Back-degrees of an ordering, `back_degrees[0]` belonging to the first vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatingInstance {
    pub back_degrees: Vec<usize>,
}

impl SaturatingInstance {
    pub fn new(back_degrees: Vec<usize>) -> Self {
        Self { back_degrees }
    }

    pub fn n(&self) -> usize {
        self.back_degrees.len()
    }

    /// The first `len` vertices of the ordering.
    pub fn truncated(&self, len: usize) -> Self {
        Self { back_degrees: self.back_degrees[..len.min(self.n())].to_vec() }
    }

    /// `⌈lg k⌉`: how many chosen vertices the prefix of length `k` needs.
    pub fn threshold(k: usize) -> usize {
        ceil_lg(k as u64) as usize
    }

    fn check(&self) -> Result<(), BoundsError> {
        if self.back_degrees.is_empty() {
            return Err(BoundsError::ParameterOutOfRange("empty ordering".into()));
        }
        match self.back_degrees.iter().skip(1).position(|&d| d == 0) {
            Some(i) => Err(BoundsError::NoEarlierNeighbor(i + 1)),
            None => Ok(()),
        }
    }
}

/// Minimum-weight saturating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturatingOptimum {
    pub value: usize,
    /// Positions in the ordering (0-based), ascending.
    pub witness: Vec<usize>,
}

/// Exact minimum of `Σ_{v∈T} d⁻(v)` over saturating sets `T`.
///
/// Dynamic program over (position, number chosen so far). Counts are clamped at
/// `⌈lg n⌉`, the largest threshold, so the table is `n × (⌈lg n⌉ + 1)`.
pub fn saturating_min_sum(inst: &SaturatingInstance) -> Result<SaturatingOptimum, BoundsError> {
    inst.check()?;
    let n = inst.n();
    let cap = SaturatingInstance::threshold(n);
    const INF: usize = usize::MAX;
    let mut dp = vec![INF; cap + 1];
    dp[0] = 0;
    // from[i][c] = (count before position i, whether position i was chosen)
    let mut from = vec![vec![(0usize, false); cap + 1]; n];
    for (i, &d) in inst.back_degrees.iter().enumerate().skip(1) {
        let mut next = vec![INF; cap + 1];
        for c in 0..=cap {
            if dp[c] == INF {
                continue;
            }
            if dp[c] < next[c] {
                next[c] = dp[c];
                from[i][c] = (c, false);
            }
            let c2 = (c + 1).min(cap);
            if dp[c] + d < next[c2] {
                next[c2] = dp[c] + d;
                from[i][c2] = (c, true);
            }
        }
        let need = SaturatingInstance::threshold(i + 1);
        next.iter_mut().take(need).for_each(|x| *x = INF);
        dp = next;
    }
    let value = dp[cap];
    debug_assert!(value != INF, "choosing every vertex is always saturating");
    let mut witness = Vec::new();
    let mut c = cap;
    for i in (1..n).rev() {
        let (prev, chosen) = from[i][c];
        if chosen {
            witness.push(i);
        }
        c = prev;
    }
    witness.reverse();
    Ok(SaturatingOptimum { value, witness })
}

/// Checks the prefix thresholds for a set of positions.
pub fn is_saturating(inst: &SaturatingInstance, positions: &[usize]) -> bool {
    let mut chosen = vec![false; inst.n()];
    for &p in positions {
        if p == 0 || p >= inst.n() {
            return false;
        }
        chosen[p] = true;
    }
    let mut count = 0;
    (1..inst.n()).all(|i| {
        count += usize::from(chosen[i]);
        count >= SaturatingInstance::threshold(i + 1)
    })
}

/// `lg n + dim C_φ`, the coset-counting lower bound on the colors of a spec.
pub fn sr_bound(g: &Graph, phi: &EdgeColoring, root: usize) -> Result<f64, BoundsError> {
    let res = canonicalize(g, phi, root)?;
    Ok((g.n() as f64).log2() + res.s_r_basis.dim() as f64)
}

/// `(ℓ⌈lg n⌉ − C(ℓ+1, 2), ℓ⌈lg n⌉ − ℓ(⌊lg ℓ⌋ − 1))`, strict lower and upper
/// bounds for the ℓ-th power of the path on `n` vertices.
pub fn pathpower_bounds(n: u64, width: u64) -> Result<(i64, i64), BoundsError> {
    if n < 2 || width < 1 || width > ceil_lg(n) as u64 {
        return Err(BoundsError::ParameterOutOfRange(format!(
            "need 1 <= width <= ceil(lg n), got n = {n}, width = {width}"
        )));
    }
    let base = (width * ceil_lg(n) as u64) as i64;
    let lower = base - binomial(width as u128 + 1, 2) as i64;
    let upper = base - width as i64 * (floor_lg(width) as i64 - 1);
    Ok((lower, upper))
}

/// `ℓ⌈lg n⌉ − ℓ⌊lg ℓ⌋ + ℓ − 1`, the explicit count bound for the Gray
/// construction.
pub fn gray_count_bound(n: u64, width: u64) -> i64 {
    let w = width as i64;
    w * ceil_lg(n) as i64 - w * floor_lg(width) as i64 + w - 1
}

/// Exact minimum saturating sum for the hub graph's natural ordering: a
/// certified lower bound on its strong parity edge chromatic number.
pub fn hub_lower_bound_certificate(k: usize) -> Result<SaturatingOptimum, BoundsError> {
    hub_lower_bound_certificate_with_cap(k, DEFAULT_VERTEX_CAP)
}

pub fn hub_lower_bound_certificate_with_cap(k: usize, cap: usize) -> Result<SaturatingOptimum, BoundsError> {
    let hub = hub_graph_with_cap(k, cap)?;
    let ord = hub.lower_bound_ordering();
    saturating_min_sum(&SaturatingInstance::new(ord.back_degrees))
}
