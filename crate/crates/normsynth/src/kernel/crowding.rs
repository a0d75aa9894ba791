use crate::scalar::Scalar;

/// Crowding distance of the front members `members` (indices into
/// `objectives`), returned in the same order as `members`.
///
/// Boundary points of every objective get infinite distance; interior points
/// accumulate the normalized gap between their neighbours per objective.
/// Objectives with zero range contribute nothing. Fronts of one or two
/// points are all-infinite.
pub fn crowding_distance<S: Scalar>(objectives: &[Vec<S>], members: &[usize]) -> Vec<S> {
    let n = members.len();
    if n == 0 {
        return Vec::new();
    }
    if n <= 2 {
        return vec![S::infinity(); n];
    }
    let num_objectives = objectives[members[0]].len();
    let mut distance = vec![S::zero(); n];
    // positions[k] indexes into `members`/`distance`.
    let mut positions: Vec<usize> = (0..n).collect();
    for m in 0..num_objectives {
        positions.sort_by(|&a, &b| {
            objectives[members[a]][m]
                .partial_cmp(&objectives[members[b]][m])
                .expect("objective values must not be NaN")
                .then(members[a].cmp(&members[b]))
        });
        let low = objectives[members[positions[0]]][m];
        let high = objectives[members[positions[n - 1]]][m];
        distance[positions[0]] = S::infinity();
        distance[positions[n - 1]] = S::infinity();
        let range = high - low;
        if range <= S::zero() {
            continue;
        }
        for k in 1..n - 1 {
            let below = objectives[members[positions[k - 1]]][m];
            let above = objectives[members[positions[k + 1]]][m];
            distance[positions[k]] = distance[positions[k]] + (above - below) / range;
        }
    }
    distance
}
