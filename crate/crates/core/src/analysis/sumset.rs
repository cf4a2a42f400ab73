use std::collections::{BTreeMap, BTreeSet};

/// Number of ordered pairs `(a1, a2)` in `A x A` with each sum.
pub fn representation_counts(set: &BTreeSet<i64>) -> BTreeMap<i64, u64> {
    let mut reps = BTreeMap::new();
    for &a in set {
        for &b in set {
            *reps.entry(a + b).or_insert(0) += 1;
        }
    }
    reps
}

/// Sums with at least `threshold` ordered representations.
pub fn robust_sum_set(set: &BTreeSet<i64>, threshold: u64) -> BTreeSet<i64> {
    representation_counts(set)
        .into_iter()
        .filter(|&(_, r)| r >= threshold)
        .map(|(s, _)| s)
        .collect()
}

/// `A + A`.
pub fn sumset(set: &BTreeSet<i64>) -> BTreeSet<i64> {
    set.iter().flat_map(|a| set.iter().map(move |b| a + b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn interval_threshold_five() {
        let a: BTreeSet<i64> = (0..10).collect();
        for s in 0..=18 {
            assert_eq!(representation_counts(&a)[&s], (s + 1).min(19 - s) as u64);
        }
        assert_eq!(robust_sum_set(&a, 5), (4..=14).collect());
    }

    #[test]
    fn empty_and_single() {
        assert!(robust_sum_set(&BTreeSet::new(), 1).is_empty());
        let one: BTreeSet<i64> = [3].into();
        assert_eq!(robust_sum_set(&one, 1), [6].into());
        assert!(robust_sum_set(&one, 2).is_empty());
    }

    proptest! {
        #[test]
        fn threshold_one_is_the_sumset(a in proptest::collection::btree_set(1i64..=50, 0..30)) {
            prop_assert_eq!(robust_sum_set(&a, 1), sumset(&a));
        }

        #[test]
        fn even_sets_stay_even(a in proptest::collection::btree_set(0i64..40, 1..20), t in 1u64..6) {
            let evens: BTreeSet<i64> = a.iter().map(|x| 2 * x).collect();
            prop_assert!(robust_sum_set(&evens, t).iter().all(|s| s % 2 == 0));
        }

        #[test]
        fn thresholds_are_nested(a in proptest::collection::btree_set(-20i64..20, 1..20), t in 1u64..8) {
            let hi = robust_sum_set(&a, t + 1);
            prop_assert!(hi.is_subset(&robust_sum_set(&a, t)));
        }
    }
}
