use rado_core::colorings::{block_coloring, BlockSpec};
use rado_core::search::{improve_coloring, local_search, FlipState, SearchConfig, SolutionIndex};
use rado_core::{count_stats, exact_min_mu, Color, Coloring, Domain, LinearEquation};
use std::sync::Arc;

fn eq(c: &[i64]) -> LinearEquation {
    LinearEquation::new(c.to_vec()).unwrap()
}

#[test]
fn schur_search_approaches_block_value() {
    let r = local_search(&eq(&[1, 1, -1]), &SearchConfig::new(1000, 0)).unwrap();
    assert!(r.proportion_f64() <= 2.0 / 11.0 + 0.01, "{}", r.proportion_f64());
    assert_eq!(r.trace.len(), 20);
}

#[test]
fn three_block_search_value() {
    let r = local_search(&eq(&[2, -1, 2]), &SearchConfig::new(1000, 0)).unwrap();
    assert!(r.proportion_f64() <= 1.0 / 64.0 + 0.01, "{}", r.proportion_f64());
}

#[test]
fn search_never_beats_the_exact_minimum() {
    for c in [[1, 1, -1], [1, 2, -3], [2, -1, 2]] {
        let e = eq(&c);
        let exact = exact_min_mu(&e, Domain::Interval(14), u64::MAX).unwrap();
        for seed in 0..5 {
            let r = local_search(&e, &SearchConfig::new(14, seed)).unwrap();
            assert!(r.monochromatic >= exact.monochromatic);
        }
    }
}

#[test]
fn schur_blocks_are_nearly_locally_optimal() {
    let e = eq(&[1, 1, -1]);
    let start = block_coloring(1100, &BlockSpec::schur());
    let r = improve_coloring(&e, &start, &SearchConfig::new(1100, 0)).unwrap();
    let drop = (r.before - r.after) as f64 / r.total as f64;
    assert!(drop < 0.005, "improvement {drop}");
}

#[test]
fn search_is_deterministic() {
    let e = eq(&[1, 2, -3]);
    let cfg = SearchConfig::new(120, 42);
    assert_eq!(local_search(&e, &cfg).unwrap(), local_search(&e, &cfg).unwrap());
}

#[test]
fn incremental_counts_survive_a_flip_fuzz() {
    let e = eq(&[3, -1, -1]);
    let d = Domain::Interval(150);
    let index = Arc::new(SolutionIndex::build(&e, d).unwrap());
    let mut state = FlipState::new(index, &Coloring::constant(d, Color::Red)).unwrap();
    for step in 0..200usize {
        state.flip(step * 37 % 150);
        let f = state.coloring();
        assert_eq!(state.monochromatic(), count_stats(&e, &f).unwrap().monochromatic);
    }
}
