//! Exact minimum of the monochromatic proportion by scanning every coloring.

use std::collections::HashMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{Coloring, Domain};
use crate::equation::LinearEquation;
use crate::error::{Error, Result};
use crate::solutions::for_each_solution;

/// Largest domain the bitmask scan accepts.
pub const MAX_EXHAUSTIVE_SIZE: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactMin {
    pub proportion: Ratio<u64>,
    pub monochromatic: u64,
    pub total: u64,
    pub witness: Coloring,
    /// False when the budget cut the scan short; the other fields then hold
    /// the best coloring among those evaluated.
    pub exhaustive: bool,
    pub evaluated: u64,
}

/// Solutions as element bitmasks, merged with multiplicities.
pub(crate) fn solution_masks(eq: &LinearEquation, domain: Domain) -> (Vec<(u64, u64)>, u64) {
    let mut counts: HashMap<u64, u64> = HashMap::new();
    let mut total = 0;
    for_each_solution(eq, domain, |x| {
        let mask = x.iter().fold(0u64, |m, &v| m | 1 << domain.index(v));
        *counts.entry(mask).or_default() += 1;
        total += 1;
    });
    let mut masks: Vec<_> = counts.into_iter().collect();
    masks.sort_unstable();
    (masks, total)
}

#[inline]
pub(crate) fn monochromatic_under(masks: &[(u64, u64)], red: u64) -> u64 {
    masks
        .iter()
        .filter(|&&(m, _)| red & m == m || red & m == 0)
        .map(|&(_, c)| c)
        .sum()
}

/// Orders colorings as sequences `(f(first), f(first+1), ...)` with blue
/// before red.
#[inline]
fn lex_key(red: u64, size: usize) -> u64 {
    red.reverse_bits() >> (64 - size)
}

/// Global minimum of `mu_E(f)` over all two-colorings of `domain`.
///
/// Colorings and their complements have the same count, so the first element
/// is fixed red and `2^(size-1)` colorings are scanned, at most `budget` of
/// them. Ties go to the lexicographically smallest witness.
pub fn exact_min_mu(eq: &LinearEquation, domain: Domain, budget: u64) -> Result<ExactMin> {
    let size = domain.size();
    if size == 0 || size > MAX_EXHAUSTIVE_SIZE {
        return Err(Error::TooLarge(size));
    }
    let (masks, total) = solution_masks(eq, domain);
    if total == 0 {
        return Err(Error::NoSolutions(domain));
    }
    let space = 1u64 << (size - 1);
    let limit = space.min(budget.max(1));

    const CHUNK: u64 = 1 << 12;
    let chunks = limit.div_ceil(CHUNK);
    let (mono, key) = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(limit);
            (start..end)
                .map(|r| {
                    let red = 1 | r << 1;
                    (monochromatic_under(&masks, red), lex_key(red, size))
                })
                .min()
                .unwrap()
        })
        .min()
        .unwrap();
    let red = key.reverse_bits() >> (64 - size);
    Ok(ExactMin {
        proportion: Ratio::new(mono, total),
        monochromatic: mono,
        total,
        witness: Coloring::from_red_mask(domain, red),
        exhaustive: limit == space,
        evaluated: limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::random_coloring;
    use crate::domain::Color;
    use crate::equation::parse_equation;
    use crate::solutions::count_stats;

    fn eq(text: &str) -> LinearEquation {
        parse_equation(text).unwrap()
    }

    /// Plain scan over all 2^size colorings, no symmetry, no masks.
    fn brute_min(e: &LinearEquation, domain: Domain) -> (u64, u64) {
        let size = domain.size();
        let mut best = u64::MAX;
        let mut total = 0;
        for bits in 0..1u64 << size {
            let f = Coloring::from_fn(domain, |x| {
                if bits >> domain.index(x) & 1 == 1 {
                    Color::Red
                } else {
                    Color::Blue
                }
            });
            let s = count_stats(e, &f).unwrap();
            best = best.min(s.monochromatic);
            total = s.total;
        }
        (best, total)
    }

    #[test]
    fn schur_mod_two() {
        let e = eq("[1,1,-1]");
        let r = exact_min_mu(&e, Domain::Cyclic(2), u64::MAX).unwrap();
        assert_eq!(r.total, 4);
        assert_eq!(brute_min(&e, Domain::Cyclic(2)), (r.monochromatic, 4));
        assert!(r.exhaustive);
        assert_eq!(r.evaluated, 2);
    }

    #[test]
    fn agrees_with_full_scan() {
        for (text, domain) in [
            ("[1,1,-1]", Domain::Interval(9)),
            ("[2,-1,2]", Domain::Interval(10)),
            ("[1,1,-1,-1]", Domain::Interval(7)),
            ("[1,2,-3]", Domain::Cyclic(7)),
        ] {
            let e = eq(text);
            let r = exact_min_mu(&e, domain, u64::MAX).unwrap();
            assert_eq!(
                (r.monochromatic, r.total),
                brute_min(&e, domain),
                "{text} over {domain}"
            );
            assert_eq!(count_stats(&e, &r.witness).unwrap().monochromatic, r.monochromatic);
            assert_eq!(r.witness.get(domain.first()), Color::Red);
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        let e = eq("[1,1,-1]");
        let domain = Domain::Interval(8);
        let r = exact_min_mu(&e, domain, u64::MAX).unwrap();
        let mut best: Option<Vec<Color>> = None;
        for bits in 0..1u64 << 7 {
            let f = Coloring::from_red_mask(domain, 1 | bits << 1);
            if count_stats(&e, &f).unwrap().monochromatic == r.monochromatic {
                let v = f.values().to_vec();
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
        assert_eq!(r.witness.values(), best.unwrap().as_slice());
    }

    #[test]
    fn budget_flags_partial_results() {
        let e = eq("[1,1,-1]");
        let r = exact_min_mu(&e, Domain::Interval(12), 100).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.evaluated, 100);
        let full = exact_min_mu(&e, Domain::Interval(12), u64::MAX).unwrap();
        assert!(full.exhaustive);
        assert!(full.monochromatic <= r.monochromatic);
    }

    #[test]
    fn degenerate_domains() {
        assert!(matches!(
            exact_min_mu(&eq("[1,1,-1]"), Domain::Interval(1), 10),
            Err(Error::NoSolutions(_))
        ));
        let r = exact_min_mu(&eq("[1,-1]"), Domain::Interval(1), 10).unwrap();
        assert_eq!(r.proportion, Ratio::from_integer(1));
        assert!(matches!(
            exact_min_mu(&eq("[1,1,-1]"), Domain::Interval(64), 10),
            Err(Error::TooLarge(64))
        ));
    }

    #[test]
    fn minimum_below_random_colorings() {
        let e = eq("[1,1,-1]");
        let domain = Domain::Interval(14);
        let r = exact_min_mu(&e, domain, u64::MAX).unwrap();
        for seed in 0..100 {
            let f = random_coloring(domain, seed);
            assert!(r.proportion <= count_stats(&e, &f).unwrap().proportion);
        }
    }

    #[test]
    fn additive_tuple_is_common_at_eight() {
        let r = exact_min_mu(&eq("[1,1,-1,-1]"), Domain::Interval(8), u64::MAX).unwrap();
        assert!(r.proportion >= Ratio::new(1, 8));
    }
}
