//! Deterministic seed derivation.
//!
//! Every stochastic component receives its seed through [`derive`], a
//! SplitMix64-based mixer. For a fixed `base`, `derive(base, salt)` is
//! injective in `salt` (the salt is folded in through multiplication by an
//! odd constant followed by a bijective mix), so sibling streams never
//! collide. Campaign run seeds additionally hash the algorithm name with
//! FNV-1a.

/// Advances a SplitMix64 state and returns the next output.
///
/// Reference: Steele, Lea & Flood, "Fast splittable pseudorandom number
/// generators" (the public-domain `splitmix64` reference implementation).
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from `base` and `salt`.
///
/// Injective in `salt` for fixed `base`: distinct salts always yield
/// distinct seeds.
pub fn derive(base: u64, salt: u64) -> u64 {
    let mut state = base ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    splitmix64(&mut state)
}

/// FNV-1a 64-bit hash (used to fold algorithm names into seed material and
/// to fingerprint parameter sets).
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

/// Seed for execution `execution` of `algorithm` within a campaign.
pub fn run_seed(master_seed: u64, algorithm: &str, execution: u64) -> u64 {
    derive(derive(master_seed, fnv1a64(algorithm.as_bytes())), execution)
}

/// Salts for the independent streams inside one algorithm run.
pub(crate) const SALT_OPERATOR_RNG: u64 = 1;
pub(crate) const SALT_EVALUATION: u64 = 2;
pub(crate) const SALT_REVALIDATE: u64 = 3;
