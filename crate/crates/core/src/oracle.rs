//! Brute-force reference computations used to cross-check the fast paths.
//!
//! Nothing here shares code with the routines it checks.

use crate::bounds::{BoundsError, SaturatingInstance};
use crate::graph::Graph;

/// Largest ordering accepted by [`saturating_min_sum_exhaustive`].
pub const EXHAUSTIVE_SATURATING_MAX_N: usize = 20;

/// Minimum saturating sum by trying every subset of `{v2, …, vn}`.
pub fn saturating_min_sum_exhaustive(inst: &SaturatingInstance) -> Result<usize, BoundsError> {
    let n = inst.back_degrees.len();
    if n == 0 || n > EXHAUSTIVE_SATURATING_MAX_N {
        return Err(BoundsError::ParameterOutOfRange(format!(
            "exhaustive search needs 1 <= n <= {EXHAUSTIVE_SATURATING_MAX_N}, got {n}"
        )));
    }
    let m = n - 1;
    let mut best = usize::MAX;
    for mask in 0u32..(1u32 << m) {
        let mut ok = true;
        for k in 2..=n {
            // positions v2..vk are bits 0..k-2
            let chosen = (mask & ((1u32 << (k - 1)) - 1)).count_ones() as f64;
            if chosen < (k as f64).log2() - 1e-9 {
                ok = false;
                break;
            }
        }
        if ok {
            let sum = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| inst.back_degrees[b + 1]).sum();
            best = best.min(sum);
        }
    }
    Ok(best)
}

/// The binary reflected Gray code of `i` as a coordinate bitmask.
pub fn reflected_gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Whether `g` is a subgraph of `Q_k`, by backtracking over injective maps
/// `V → {0,1}^k` that send edges to pairs at Hamming distance one.
pub fn embeds_in_hypercube(g: &Graph, k: usize) -> bool {
    if g.n() > 1 << k {
        return false;
    }
    let mut image = vec![None; g.n()];
    let mut used = vec![false; 1 << k];
    place(g, k, 0, &mut image, &mut used)
}

fn place(g: &Graph, k: usize, v: usize, image: &mut Vec<Option<u64>>, used: &mut Vec<bool>) -> bool {
    if v == g.n() {
        return true;
    }
    for x in 0..(1u64 << k) {
        if used[x as usize] {
            continue;
        }
        let fits = g
            .neighbors(v)
            .iter()
            .all(|&(u, _)| image[u].is_none_or(|y| (x ^ y).count_ones() == 1));
        if !fits {
            continue;
        }
        image[v] = Some(x);
        used[x as usize] = true;
        if place(g, k, v + 1, image, used) {
            return true;
        }
        image[v] = None;
        used[x as usize] = false;
    }
    false
}

/// Every edge coloring of `g` up to renaming colors, as restricted growth strings.
fn for_each_partition(m: usize, f: &mut impl FnMut(&[usize])) {
    fn go(i: usize, max: usize, cur: &mut Vec<usize>, m: usize, f: &mut impl FnMut(&[usize])) {
        if i == m {
            f(cur);
            return;
        }
        for c in 1..=max + 1 {
            cur.push(c);
            go(i + 1, max.max(c), cur, m, f);
            cur.pop();
        }
    }
    go(0, 0, &mut Vec::with_capacity(m), m, f);
}

/// Whether some simple path (at least one edge) uses every color an even
/// number of times.
pub fn has_parity_path(g: &Graph, colors: &[usize]) -> bool {
    fn go(g: &Graph, colors: &[usize], v: usize, mask: u64, seen: &mut Vec<bool>, len: usize) -> bool {
        if len > 0 && mask == 0 {
            return true;
        }
        for &(w, e) in g.neighbors(v) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            let found = go(g, colors, w, mask ^ (1 << (colors[e] - 1)), seen, len + 1);
            seen[w] = false;
            if found {
                return true;
            }
        }
        false
    }
    (0..g.n()).any(|s| {
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        go(g, colors, s, 0, &mut seen, 0)
    })
}

/// Whether some walk between two distinct vertices uses every color an even
/// number of times, by search over (vertex, parity) states.
pub fn has_open_parity_walk(g: &Graph, colors: &[usize]) -> bool {
    let k = colors.iter().copied().max().unwrap_or(0);
    (0..g.n()).any(|s| {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(s, 0u64)];
        seen.insert((s, 0u64));
        while let Some((v, mask)) = stack.pop() {
            for &(w, e) in g.neighbors(v) {
                let next = (w, mask ^ (1 << (colors[e] - 1)));
                if next.1 == 0 && w != s {
                    return true;
                }
                if next.1 >> k == 0 && seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        false
    })
}

/// Fewest colors in a pec and in a spec of `g`, by trying every coloring.
pub fn min_colors_exhaustive(g: &Graph) -> (usize, usize) {
    let mut best_p = usize::MAX;
    let mut best_phat = usize::MAX;
    for_each_partition(g.num_edges(), &mut |colors| {
        let c = colors.iter().copied().max().unwrap_or(0);
        if c < best_p && !has_parity_path(g, colors) {
            best_p = c;
        }
        if c < best_phat && !has_open_parity_walk(g, colors) {
            best_phat = c;
        }
    });
    (best_p, best_phat)
}
