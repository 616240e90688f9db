use parcol::bounds::{ceil_lg, saturating_min_sum, sr_bound, SaturatingInstance};
use parcol::coloring::{
    canonical_from_labeling, canonicalize, is_pec, is_refinement, is_spec, parity_walk_oracle, EdgeColoring,
    Labeling,
};
use parcol::experiment::random_connected_graph;
use parcol::graph::{default_ordering, Graph};
use parcol::gray::{ruler, window_max};
use parcol::oracle::has_parity_path;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_labels(rng: &mut ChaCha8Rng, n: usize) -> Labeling {
    let mut bits: Vec<u64> = Vec::new();
    while bits.len() < n {
        let x = rng.gen_range(0..64);
        if !bits.contains(&x) {
            bits.push(x);
        }
    }
    Labeling::from_bits(&bits).unwrap()
}

fn lower_bounds_hold(g: &Graph, phi: &EdgeColoring) {
    let sat = saturating_min_sum(&SaturatingInstance::new(default_ordering(g, 0).unwrap().back_degrees)).unwrap();
    assert!(phi.num_colors() >= sat.value);
    assert!(sat.value >= ceil_lg(g.n() as u64) as usize);
    assert!(phi.num_colors() as f64 + 1e-9 >= sr_bound(g, phi, 0).unwrap());
}

#[test]
fn canonical_colorings_are_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let g = random_connected_graph(&mut rng, n, 0.3);
        let f = random_labels(&mut rng, n);
        let phi = canonical_from_labeling(&g, &f).unwrap();
        assert!(is_spec(&g, &phi, 0).unwrap());
        lower_bounds_hold(&g, &phi);
    }
}

#[test]
fn spec_test_matches_walk_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut specs = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=8);
        let g = random_connected_graph(&mut rng, n, 0.3);
        let k = rng.gen_range(1..=6);
        let phi = EdgeColoring::new((0..g.num_edges()).map(|_| rng.gen_range(1..=k)).collect()).unwrap();
        let spec = is_spec(&g, &phi, 0).unwrap();
        assert_eq!(spec, parity_walk_oracle(&g, &phi).unwrap().is_none());
        specs += spec as usize;
    }
    assert!(specs > 0);
}

#[test]
fn specs_refine_their_canonical_form_from_any_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let n = rng.gen_range(2..=9);
        let g = random_connected_graph(&mut rng, n, 0.35);
        let base = canonical_from_labeling(&g, &random_labels(&mut rng, n)).unwrap();
        // splitting color classes of a spec keeps it a spec
        let phi = EdgeColoring::new(
            base.colors().iter().map(|&c| if rng.gen_bool(0.4) { c + 100 } else { c }).collect(),
        )
        .unwrap();
        assert!(is_spec(&g, &phi, 0).unwrap());
        let star = canonicalize(&g, &phi, 0).unwrap();
        assert!(is_refinement(&phi, &star.coloring_star).unwrap());
        assert!(star.coloring_star.num_colors() <= phi.num_colors());
        assert!(is_spec(&g, &star.coloring_star, 0).unwrap());
        for r in 1..n {
            let other = canonicalize(&g, &phi, r).unwrap();
            assert_eq!(other.coloring_star.num_colors(), star.coloring_star.num_colors());
        }
        lower_bounds_hold(&g, &phi);
    }
}

#[test]
fn specs_are_pecs_and_pecs_are_proper() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=8);
        let g = random_connected_graph(&mut rng, n, 0.3);
        let k = rng.gen_range(2..=7);
        let phi = EdgeColoring::new((0..g.num_edges()).map(|_| rng.gen_range(1..=k)).collect()).unwrap();
        let pec = is_pec(&g, &phi).unwrap();
        assert_eq!(pec, !has_parity_path(&g, phi.colors()));
        if is_spec(&g, &phi, 0).unwrap() {
            assert!(pec);
        }
        if pec {
            assert!(phi.is_proper(&g));
        }
    }
}

#[test]
fn largest_window_entry_occurs_once() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = 1usize << 16;
    for _ in 0..100_000 {
        let i = rng.gen_range(0..m - 1);
        let j = rng.gen_range(i + 1..=(i + 1024).min(m));
        let k = window_max(i, j);
        assert_eq!((i + 1..=j).filter(|&p| ruler(p as u64) == k).count(), 1, "({i}, {j}]");
    }
}

proptest! {
    #[test]
    fn canonical_coloring_is_translation_invariant(seed in any::<u64>(), shift in 0u64..64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=8);
        let g = random_connected_graph(&mut rng, n, 0.4);
        let f = random_labels(&mut rng, n);
        let moved: Vec<u64> = f.labels().iter().map(|x| x.to_bits().unwrap() ^ shift).collect();
        let a = canonical_from_labeling(&g, &f).unwrap();
        let b = canonical_from_labeling(&g, &Labeling::from_bits(&moved).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
