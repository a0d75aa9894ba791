use crate::scalar::Scalar;

/// Pareto dominance in maximization sense: `a` dominates `b` iff `a` is at
/// least as good everywhere and strictly better somewhere.
#[inline]
pub fn dominates<S: Scalar>(a: &[S], b: &[S]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut strictly_better = false;
    for (&x, &y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Pareto dominance in minimization sense (used by the indicator pipeline).
#[inline]
pub fn dominates_min<S: Scalar>(a: &[S], b: &[S]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut strictly_better = false;
    for (&x, &y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Fast non-dominated sorting (maximization sense).
///
/// Partitions indices `0..objectives.len()` into fronts: front 0 holds the
/// non-dominated points, front `k+1` the points only dominated by fronts
/// `<= k`. Every index appears in exactly one front; indices inside a front
/// stay in ascending order.
///
/// Reference: Deb, Pratap, Agarwal & Meyarivan, "A fast and elitist
/// multiobjective genetic algorithm: NSGA-II" (2002).
pub fn fast_nondominated_sort<S: Scalar>(objectives: &[Vec<S>]) -> Vec<Vec<usize>> {
    let n = objectives.len();
    if n == 0 {
        return Vec::new();
    }
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for p in 0..n {
        for q in (p + 1)..n {
            if dominates(&objectives[p], &objectives[q]) {
                dominated_by[p].push(q);
                domination_count[q] += 1;
            } else if dominates(&objectives[q], &objectives[p]) {
                dominated_by[q].push(p);
                domination_count[p] += 1;
            }
        }
    }
    let mut fronts: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::take(&mut current));
        current = next;
    }
    fronts
}

/// Indices of the non-dominated points (maximization sense), in input order.
pub fn nondominated_indices<S: Scalar>(objectives: &[Vec<S>]) -> Vec<usize> {
    (0..objectives.len())
        .filter(|&i| {
            !objectives
                .iter()
                .any(|other| dominates(other, &objectives[i]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance_basics() {
        assert!(dominates(&[2.0, 3.0], &[2.0, 2.0]));
        assert!(dominates(&[3.0, 3.0], &[2.0, 2.0]));
        assert!(!dominates(&[2.0, 2.0], &[2.0, 2.0])); // irreflexive on equals
        assert!(!dominates(&[3.0, 1.0], &[1.0, 3.0])); // incomparable
        assert!(!dominates(&[1.0, 3.0], &[3.0, 1.0]));
    }

    #[test]
    fn min_sense_mirrors_max_sense() {
        let a = [0.2, 0.4];
        let b = [0.3, 0.4];
        assert!(dominates_min(&a, &b));
        assert!(!dominates_min(&b, &a));
        let na: Vec<f64> = a.iter().map(|v| -v).collect();
        let nb: Vec<f64> = b.iter().map(|v| -v).collect();
        assert!(dominates(&na, &nb));
    }

    #[test]
    fn dominance_is_asymmetric_and_transitive_on_samples() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let v: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..4).map(|_| rng.random::<f64>()).collect())
                .collect();
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            assert!(!(dominates(a, b) && dominates(b, a)));
            if dominates(a, b) && dominates(b, c) {
                assert!(dominates(a, c));
            }
        }
    }

    #[test]
    fn sort_of_incomparable_points_is_one_front() {
        let objs = vec![
            vec![4.0, 1.0],
            vec![3.0, 2.0],
            vec![2.0, 3.0],
            vec![1.0, 4.0],
        ];
        assert_eq!(fast_nondominated_sort(&objs), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn sort_of_dominance_chain_is_singleton_fronts() {
        let objs: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, i as f64]).collect();
        assert_eq!(
            fast_nondominated_sort(&objs),
            vec![vec![4], vec![3], vec![2], vec![1], vec![0]]
        );
    }

    /// Peel-off oracle: repeatedly strip the non-dominated subset.
    fn peel_off_fronts(objectives: &[Vec<f64>]) -> Vec<Vec<usize>> {
        let mut remaining: Vec<usize> = (0..objectives.len()).collect();
        let mut fronts = Vec::new();
        while !remaining.is_empty() {
            let front: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&i| {
                    !remaining
                        .iter()
                        .any(|&j| dominates(&objectives[j], &objectives[i]))
                })
                .collect();
            remaining.retain(|i| !front.contains(i));
            fronts.push(front);
        }
        fronts
    }

    #[test]
    fn sort_matches_peel_off_oracle() {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let objs: Vec<Vec<f64>> = (0..50)
                .map(|_| (0..3).map(|_| (rng.random::<f64>() * 4.0).floor()).collect())
                .collect();
            assert_eq!(fast_nondominated_sort(&objs), peel_off_fronts(&objs));
        }
    }

    #[test]
    fn sort_handles_empty_and_duplicates() {
        assert!(fast_nondominated_sort::<f64>(&[]).is_empty());
        let objs = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        assert_eq!(fast_nondominated_sort(&objs), vec![vec![0, 1]]);
    }

    #[test]
    fn nondominated_indices_is_first_front_in_order() {
        let objs = vec![
            vec![1.0, 4.0],
            vec![0.5, 0.5],
            vec![4.0, 1.0],
            vec![1.0, 4.0], // duplicate of 0 stays
        ];
        assert_eq!(nondominated_indices(&objs), vec![0, 2, 3]);
    }
}
