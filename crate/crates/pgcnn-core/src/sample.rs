//! Deterministic sampling: every random draw in the crate flows through a
//! seed derived from the user's master seed by a splitmix64 chain, so runs
//! with the same seed are reproducible bit for bit regardless of thread
//! scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::Error;
use crate::filter::Filter;
use crate::group::Group;
use crate::ring::{Field, Ring};
use crate::Result;

/// Stream labels for seed derivation, one per driver component.
pub mod streams {
    pub const DIM: u64 = 1;
    pub const FIBER: u64 = 2;
    pub const IDENTITY: u64 = 3;
    pub const COLLISION: u64 = 4;
    pub const TABLE: u64 = 5;
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a child seed from a master seed and a path of stream labels
/// (component id, trial index, ...). Changing any part changes the seed;
/// distinct paths give independent streams.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    let mut h = mix(master.wrapping_add(0x9E37_79B9_7F4A_7C15));
    for &p in parts {
        h = mix(h ^ p.wrapping_mul(0xD6E8_FEB8_6659_FD93));
    }
    h
}

/// A ChaCha generator seeded along a derivation path.
pub fn rng_for(master: u64, parts: &[u64]) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(derive_seed(master, parts))
}

/// A filter with coefficients sampled as integers in `[-bound, bound]`.
pub fn sample_filter<R: Ring>(
    ring: &R,
    group: &Group,
    rng: &mut impl Rng,
    bound: u32,
) -> Filter<R> {
    Filter::from_fn(group.clone(), |_| ring.sample(rng, bound))
}

/// A nonzero ring element sampled as an integer in `[-bound, bound]`.
pub fn sample_nonzero<R: Ring>(ring: &R, rng: &mut impl Rng, bound: u32) -> R::Elem {
    loop {
        let v = ring.sample(rng, bound);
        if !ring.is_zero(&v) {
            return v;
        }
    }
}

/// A uniformly random group element index.
pub fn sample_group_element(group: &Group, rng: &mut impl Rng) -> usize {
    rng.gen_range(0..group.order())
}

/// A filter whose circulant matrix is invertible, found by rejection;
/// errors after `attempts` consecutive singular draws.
pub fn sample_invertible_filter<F: Field>(
    field: &F,
    group: &Group,
    rng: &mut impl Rng,
    bound: u32,
    attempts: usize,
) -> Result<Filter<F>> {
    for _ in 0..attempts {
        let f = sample_filter(field, group, rng, bound);
        if crate::filter::filter_inverse(field, &f).is_some() {
            return Ok(f);
        }
    }
    Err(Error::Config(format!(
        "no invertible filter on {group} after {attempts} draws"
    )))
}

/// A tuple of `layers` filters on the same group, e.g. network parameters.
pub fn sample_tuple<R: Ring>(
    ring: &R,
    group: &Group,
    layers: usize,
    rng: &mut impl Rng,
    bound: u32,
) -> Vec<Filter<R>> {
    (0..layers).map(|_| sample_filter(ring, group, rng, bound)).collect()
}
