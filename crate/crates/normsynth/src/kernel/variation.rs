use rand::Rng;

use crate::scalar::{lit, Scalar};

/// Parents closer than this are copied through unchanged by SBX.
const SBX_EPS: f64 = 1e-14;

#[inline]
fn clip<S: Scalar>(value: S, (low, high): (S, S)) -> S {
    value.max(low).min(high)
}

/// Simulated binary crossover (Deb & Agrawal, 1995) with distribution index
/// `eta`.
///
/// The whole pair is crossed with probability `prob`; each variable is then
/// crossed with probability 0.5 (otherwise copied from the parents). Children
/// are clipped to `bounds` and keep their parents' orientation (`child1`
/// follows `p1`).
///
/// Draw order per call: one gate draw for the pair; per crossed variable one
/// gate draw and, if the parents differ by more than `1e-14`, one spread
/// draw.
pub fn sbx_crossover<S: Scalar, R: Rng>(
    p1: &[S],
    p2: &[S],
    eta: S,
    prob: S,
    bounds: &[(S, S)],
    rng: &mut R,
) -> (Vec<S>, Vec<S>) {
    debug_assert_eq!(p1.len(), p2.len());
    debug_assert_eq!(p1.len(), bounds.len());
    let mut c1: Vec<S> = p1.to_vec();
    let mut c2: Vec<S> = p2.to_vec();
    let gate: S = lit(rng.random::<f64>());
    if gate >= prob {
        return (c1, c2);
    }
    let one = S::one();
    let half = lit::<S>(0.5);
    let two = lit::<S>(2.0);
    for i in 0..p1.len() {
        let var_gate: S = lit(rng.random::<f64>());
        if var_gate > half {
            continue;
        }
        let (x1, x2) = (p1[i], p2[i]);
        if (x1 - x2).abs() <= lit(SBX_EPS) {
            continue;
        }
        let (low, high) = (x1.min(x2), x1.max(x2));
        let u: S = lit(rng.random::<f64>());
        let exponent = one / (eta + one);
        let beta_q = if u <= half {
            (two * u).powf(exponent)
        } else {
            (one / (two * (one - u))).powf(exponent)
        };
        let sum = low + high;
        let diff = high - low;
        let child_low = clip(half * (sum - beta_q * diff), bounds[i]);
        let child_high = clip(half * (sum + beta_q * diff), bounds[i]);
        if x1 <= x2 {
            c1[i] = child_low;
            c2[i] = child_high;
        } else {
            c1[i] = child_high;
            c2[i] = child_low;
        }
    }
    (c1, c2)
}

/// Bounded polynomial mutation (Deb & Goyal, 1996) with distribution index
/// `eta`, applied in place to each gene independently with probability
/// `prob`.
///
/// Draw order: one gate draw per gene and, when the gate passes and the
/// gene's bounds are non-degenerate, one shape draw.
pub fn polynomial_mutation<S: Scalar, R: Rng>(
    genes: &mut [S],
    eta: S,
    prob: S,
    bounds: &[(S, S)],
    rng: &mut R,
) {
    debug_assert_eq!(genes.len(), bounds.len());
    let one = S::one();
    let half = lit::<S>(0.5);
    let two = lit::<S>(2.0);
    for i in 0..genes.len() {
        let gate: S = lit(rng.random::<f64>());
        if gate >= prob {
            continue;
        }
        let (low, high) = bounds[i];
        let range = high - low;
        if range <= S::zero() {
            genes[i] = low;
            continue;
        }
        let y = genes[i];
        let u: S = lit(rng.random::<f64>());
        let mut_pow = one / (eta + one);
        let delta_q = if u <= half {
            let xy = one - (y - low) / range;
            let val = two * u + (one - two * u) * xy.powf(eta + one);
            val.powf(mut_pow) - one
        } else {
            let xy = one - (high - y) / range;
            let val = two * (one - u) + two * (u - half) * xy.powf(eta + one);
            one - val.powf(mut_pow)
        };
        genes[i] = clip(y + delta_q * range, bounds[i]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// RngCore stub replaying a fixed sequence of uniform draws.
    struct SeqRng {
        raw: Vec<u64>,
        at: usize,
    }

    impl SeqRng {
        /// Builds a stub whose successive `random::<f64>()` calls yield
        /// (approximately, to 2^-53) the given values.
        fn from_uniforms(values: &[f64]) -> Self {
            SeqRng {
                raw: values
                    .iter()
                    .map(|&v| ((v * (1u64 << 53) as f64) as u64) << 11)
                    .collect(),
                at: 0,
            }
        }
    }

    impl rand::RngCore for SeqRng {
        fn next_u32(&mut self) -> u32 {
            self.next_u64() as u32
        }
        fn next_u64(&mut self) -> u64 {
            let v = self.raw[self.at];
            self.at += 1;
            v
        }
        fn fill_bytes(&mut self, _dest: &mut [u8]) {
            unimplemented!("not used by uniform draws")
        }
    }

    const UNIT: (f64, f64) = (0.0, 1.0);

    #[test]
    fn sbx_matches_hand_computed_spread() {
        // Draws: pair gate, variable gate, spread.
        let mut rng = SeqRng::from_uniforms(&[0.0, 0.3, 0.3]);
        let (c1, c2) = sbx_crossover(&[0.2], &[0.7], 20.0, 1.0, &[UNIT], &mut rng);
        assert!((c1[0] - 0.20600789013314702).abs() <= 1e-12, "c1 = {}", c1[0]);
        assert!((c2[0] - 0.6939921098668529).abs() <= 1e-12, "c2 = {}", c2[0]);

        let mut rng = SeqRng::from_uniforms(&[0.0, 0.3, 0.8]);
        let (c1, c2) = sbx_crossover(&[0.2], &[0.7], 20.0, 1.0, &[UNIT], &mut rng);
        assert!((c1[0] - 0.1888502990233828).abs() <= 1e-12);
        assert!((c2[0] - 0.7111497009766171).abs() <= 1e-12);
    }

    #[test]
    fn sbx_children_follow_parent_orientation() {
        let mut rng = SeqRng::from_uniforms(&[0.0, 0.3, 0.3]);
        let (c1, c2) = sbx_crossover(&[0.7], &[0.2], 20.0, 1.0, &[UNIT], &mut rng);
        assert!((c1[0] - 0.6939921098668529).abs() <= 1e-12);
        assert!((c2[0] - 0.20600789013314702).abs() <= 1e-12);
    }

    #[test]
    fn sbx_pair_gate_copies_parents() {
        // Gate draw 0.95 >= prob 0.9: exactly one draw consumed.
        let mut rng = SeqRng::from_uniforms(&[0.95]);
        let (c1, c2) = sbx_crossover(&[0.2, 0.4], &[0.7, 0.1], 20.0, 0.9, &[UNIT; 2], &mut rng);
        assert_eq!(c1, vec![0.2, 0.4]);
        assert_eq!(c2, vec![0.7, 0.1]);
    }

    #[test]
    fn sbx_variable_gate_copies_variable() {
        let mut rng = SeqRng::from_uniforms(&[0.0, 0.7]);
        let (c1, c2) = sbx_crossover(&[0.2], &[0.7], 20.0, 1.0, &[UNIT], &mut rng);
        assert_eq!((c1[0], c2[0]), (0.2, 0.7));
    }

    #[test]
    fn sbx_identical_parents_yield_identical_children() {
        // Equal parents never consume a spread draw.
        let mut rng = SeqRng::from_uniforms(&[0.0, 0.2, 0.0, 0.2]);
        let (c1, c2) = sbx_crossover(&[0.5], &[0.5], 20.0, 1.0, &[UNIT], &mut rng);
        assert_eq!((c1[0], c2[0]), (0.5, 0.5));
        let (c1, c2) = sbx_crossover(&[0.5], &[0.5 + 1e-15], 20.0, 1.0, &[UNIT], &mut rng);
        assert_eq!(c1[0], 0.5);
        assert_eq!(c2[0], 0.5 + 1e-15);
    }

    #[test]
    fn sbx_respects_bounds_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let bounds = [(0.0, 1.0), (0.0, 0.5), (2.0, 3.0)];
        for _ in 0..2000 {
            let p1: Vec<f64> = bounds
                .iter()
                .map(|&(lo, hi)| lo + rng.random::<f64>() * (hi - lo))
                .collect();
            let p2: Vec<f64> = bounds
                .iter()
                .map(|&(lo, hi)| lo + rng.random::<f64>() * (hi - lo))
                .collect();
            let (c1, c2) = sbx_crossover(&p1, &p2, 20.0, 0.9, &bounds, &mut rng);
            for (child, &(lo, hi)) in [&c1, &c2].iter().flat_map(|c| c.iter().zip(&bounds)) {
                assert!((lo..=hi).contains(child), "{child} outside [{lo}, {hi}]");
            }
        }
    }

    #[test]
    fn pm_matches_hand_computed_values() {
        let mut genes = vec![0.4];
        let mut rng = SeqRng::from_uniforms(&[0.0, 0.3]);
        polynomial_mutation(&mut genes, 20.0, 1.0, &[UNIT], &mut rng);
        assert!((genes[0] - 0.3759691191379637).abs() <= 1e-12, "{}", genes[0]);

        let mut genes = vec![0.9];
        let mut rng = SeqRng::from_uniforms(&[0.0, 0.95]);
        polynomial_mutation(&mut genes, 20.0, 1.0, &[UNIT], &mut rng);
        assert!((genes[0] - 0.9741137441313891).abs() <= 1e-12, "{}", genes[0]);

        // The central shape draw leaves the gene untouched.
        let mut genes = vec![0.5];
        let mut rng = SeqRng::from_uniforms(&[0.0, 0.5]);
        polynomial_mutation(&mut genes, 20.0, 1.0, &[UNIT], &mut rng);
        assert_eq!(genes[0], 0.5);
    }

    #[test]
    fn pm_zero_probability_is_identity() {
        let mut genes = vec![0.1, 0.9, 0.4];
        // One gate draw per gene, no shape draws.
        let mut rng = SeqRng::from_uniforms(&[0.7, 0.2, 0.9]);
        polynomial_mutation(&mut genes, 20.0, 0.0, &[UNIT; 3], &mut rng);
        assert_eq!(genes, vec![0.1, 0.9, 0.4]);
    }

    #[test]
    fn pm_degenerate_bounds_pin_gene() {
        let mut genes = vec![0.3];
        let mut rng = SeqRng::from_uniforms(&[0.0]);
        polynomial_mutation(&mut genes, 20.0, 1.0, &[(0.25, 0.25)], &mut rng);
        assert_eq!(genes[0], 0.25);
    }

    #[test]
    fn pm_respects_bounds_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let bounds = [(0.0, 1.0), (0.0, 0.5), (-1.0, 1.0)];
        for _ in 0..2000 {
            let mut genes: Vec<f64> = bounds
                .iter()
                .map(|&(lo, hi)| lo + rng.random::<f64>() * (hi - lo))
                .collect();
            polynomial_mutation(&mut genes, 20.0, 0.5, &bounds, &mut rng);
            for (g, &(lo, hi)) in genes.iter().zip(&bounds) {
                assert!((lo..=hi).contains(g), "{g} outside [{lo}, {hi}]");
            }
        }
    }
}
