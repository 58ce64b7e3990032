//! Fibers of the parameter maps: which parameter tuples produce the same
//! network? A generic fiber is swept out by two families —
//!
//! * translations: `(th_1 * d_g1, d_g1^-1 * th_2 * d_g2, ..., d_g_{L-1}^-1 * th_L)`
//!   for `(g_1, ..., g_{L-1})` in `G^(L-1)`, giving `|G|^(L-1)` discrete
//!   members, and
//! * layer rescalings: `(l_1 th_1, l_1^-r l_2 th_2, ..., l_{L-1}^-r th_L)`
//!   for nonzero scalars, which leave the map unchanged because the map has
//!   multidegree `(r^(L-1), ..., r, 1)`.
//!
//! This module constructs both families, verifies exact membership,
//! classifies tuple pairs up to translation-and-rescaling, and probes for
//! unexplained collisions at random points.

use serde::Serialize;
use std::collections::HashMap;

use rand::Rng;

use crate::error::Error;
use crate::filter::Filter;
use crate::group::Group;
use crate::network::{phi_map, Architecture};
use crate::ring::{Field, PrimeField, Rationals, Ring};
use crate::sample::{rng_for, sample_nonzero, streams};
use crate::Result;

/// Translate a tuple by `(g_1, ..., g_{L-1})`: layer 1 is translated on
/// the right, inner layers on both sides, the last layer on the left —
/// `psi_1(x) = th_1(x g_1^-1)`, `psi_l(x) = th_l(g_{l-1} x g_l^-1)`,
/// `psi_L(x) = th_L(g_{L-1} x)`. All the inserted deltas cancel through
/// the layers, so the network map is unchanged exactly.
pub fn translate_tuple<R: Ring>(tuple: &[Filter<R>], gs: &[usize]) -> Result<Vec<Filter<R>>> {
    let layers = tuple.len();
    if gs.len() + 1 != layers {
        return Err(Error::DimMismatch(format!(
            "{} layers need {} translation elements, got {}",
            layers,
            layers - 1,
            gs.len()
        )));
    }
    Ok(tuple
        .iter()
        .enumerate()
        .map(|(l, theta)| {
            let group = theta.group().clone();
            let left = if l > 0 { Some(gs[l - 1]) } else { None };
            let right = if l + 1 < layers { Some(group.inv(gs[l])) } else { None };
            Filter::from_fn(group.clone(), |x| {
                let mut idx = x;
                if let Some(r) = right {
                    idx = group.mul(idx, r);
                }
                if let Some(g) = left {
                    idx = group.mul(g, idx);
                }
                theta.coeff(idx).clone()
            })
        })
        .collect())
}

/// Rescale a tuple by `(l_1, ..., l_{L-1})`: layer 1 by `l_1`, layer `l`
/// by `l_{l-1}^-r l_l`, the last layer by `l_{L-1}^-r`. Every scalar must
/// be nonzero.
pub fn rescale_tuple<F: Field>(
    field: &F,
    arch: &Architecture,
    tuple: &[Filter<F>],
    lambdas: &[F::Elem],
) -> Result<Vec<Filter<F>>> {
    let layers = tuple.len();
    if lambdas.len() + 1 != layers {
        return Err(Error::DimMismatch(format!(
            "{} layers need {} scalars, got {}",
            layers,
            layers - 1,
            lambdas.len()
        )));
    }
    if lambdas.iter().any(|l| field.is_zero(l)) {
        return Err(Error::ZeroScalar);
    }
    let r = arch.degree() as u64;
    Ok(tuple
        .iter()
        .enumerate()
        .map(|(l, theta)| {
            let mut c = field.one();
            if l + 1 < layers {
                c = field.mul(&c, &lambdas[l]);
            }
            if l > 0 {
                let prev_r = field.pow(&lambdas[l - 1], r);
                c = field.mul(&c, &field.inv(&prev_r).expect("scalars are nonzero"));
            }
            crate::filter::scale(field, &c, theta)
        })
        .collect())
}

/// Number of discrete fiber members, `|G|^(L-1)`; `None` past the budget.
pub fn predicted_fiber_count(arch: &Architecture) -> Option<u128> {
    (arch.group().order() as u128)
        .checked_pow(arch.layers() as u32 - 1)
        .filter(|&c| c <= arch.power_budget())
}

/// All `|G|^(L-1)` translates of a tuple, in mixed-radix order of the
/// translation vector.
pub fn enumerate_translates<R: Ring>(
    arch: &Architecture,
    tuple: &[Filter<R>],
) -> Result<Vec<Vec<Filter<R>>>> {
    let n = arch.group().order();
    let count = predicted_fiber_count(arch).ok_or(Error::Budget {
        what: "fiber enumeration",
        requested: u128::MAX,
        budget: arch.power_budget(),
    })?;
    (0..count as usize)
        .map(|idx| {
            let gs = Group::digits_of(idx, n, arch.layers() - 1);
            translate_tuple(tuple, &gs)
        })
        .collect()
}

/// The scalar `c` with `b = c a` coefficient-wise, when one exists.
/// Both zero gives `Some(one)`.
fn proportionality<F: Field>(field: &F, a: &Filter<F>, b: &Filter<F>) -> Option<F::Elem> {
    let mut ratio: Option<F::Elem> = None;
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        match (field.is_zero(x), field.is_zero(y)) {
            (true, true) => continue,
            (true, false) | (false, true) => return None,
            (false, false) => {
                let c = field.div(y, x).expect("x is nonzero");
                match &ratio {
                    None => ratio = Some(c),
                    Some(r) if *r == c => {}
                    Some(_) => return None,
                }
            }
        }
    }
    Some(ratio.unwrap_or_else(|| field.one()))
}

/// Projective equivalence: `b` is a layer rescaling of `a`, i.e. each layer
/// is proportional and the proportionality constants `c_l` satisfy
/// `prod c_l^(r^(L-l)) = 1`. Layers that are zero in both tuples make the
/// scalar condition vacuous and are accepted.
pub fn tuples_equivalent<F: Field>(
    field: &F,
    arch: &Architecture,
    a: &[Filter<F>],
    b: &[Filter<F>],
) -> Result<bool> {
    if a.len() != b.len() || a.len() != arch.layers() {
        return Err(Error::DimMismatch(format!(
            "expected two tuples of {} layers, got {} and {}",
            arch.layers(),
            a.len(),
            b.len()
        )));
    }
    let degrees = arch.multidegree();
    let mut product = field.one();
    let mut free_scalar = false;
    for (l, (fa, fb)) in a.iter().zip(b).enumerate() {
        if fa.is_zero(field) && fb.is_zero(field) {
            free_scalar = true;
            continue;
        }
        match proportionality(field, fa, fb) {
            None => return Ok(false),
            Some(c) => product = field.mul(&product, &field.pow(&c, degrees[l])),
        }
    }
    Ok(free_scalar || product == field.one())
}

/// `true` when `b` lies in the predicted fiber of `a`: some translate of
/// `a` is projectively equivalent to `b`.
pub fn in_predicted_fiber<F: Field>(
    field: &F,
    arch: &Architecture,
    a: &[Filter<F>],
    b: &[Filter<F>],
) -> Result<bool> {
    for t in enumerate_translates(arch, a)? {
        if tuples_equivalent(field, arch, &t, b)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Outcome of one fiber trial at a sampled generic parameter tuple.
#[derive(Clone, Debug, Serialize)]
pub struct FiberTrial {
    pub trial: usize,
    /// `|G|^(L-1)`.
    pub predicted_count: u128,
    /// Every translate maps to the same `phi` value, exactly.
    pub forward_ok: bool,
    /// Random layer rescalings (of the tuple and of a translate) map to
    /// the same `phi` value, exactly.
    pub scaling_ok: bool,
    /// Number of pairwise inequivalent translates.
    pub distinct_count: usize,
    pub distinct_ok: bool,
    /// A perturbed tuple leaves the fiber (the check has teeth).
    pub perturbation_ok: bool,
    pub pass: bool,
}

/// Sample a tuple over `Q` and verify the predicted fiber of `phi` at it:
/// exact forward membership of all translates and rescalings, pairwise
/// distinctness of the translates, and non-membership of a perturbation.
pub fn run_fiber_trial(
    arch: &Architecture,
    master_seed: u64,
    trial: usize,
    bound: u32,
    scaling_samples: usize,
) -> Result<FiberTrial> {
    let q = Rationals;
    let mut rng = rng_for(master_seed, &[streams::FIBER, trial as u64]);
    let tuple = crate::sample::sample_tuple(&q, arch.group(), arch.layers(), &mut rng, bound);
    let phi_ref = phi_map(&q, arch, &tuple)?;

    let translates = enumerate_translates(arch, &tuple)?;
    let predicted_count = translates.len() as u128;
    let mut forward_ok = true;
    for t in &translates {
        if phi_map(&q, arch, t)? != phi_ref {
            forward_ok = false;
            break;
        }
    }

    let mut scaling_ok = true;
    for s in 0..scaling_samples {
        let lambdas: Vec<_> = (0..arch.layers() - 1)
            .map(|_| sample_nonzero(&q, &mut rng, bound))
            .collect();
        let base = &translates[s % translates.len()];
        let rescaled = rescale_tuple(&q, arch, base, &lambdas)?;
        if phi_map(&q, arch, &rescaled)? != phi_ref {
            scaling_ok = false;
            break;
        }
        if !tuples_equivalent(&q, arch, base, &rescaled)? {
            scaling_ok = false;
            break;
        }
    }

    let mut distinct_count = 0usize;
    for (i, a) in translates.iter().enumerate() {
        let mut fresh = true;
        for b in translates.iter().take(i) {
            if tuples_equivalent(&q, arch, b, a)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            distinct_count += 1;
        }
    }
    let distinct_ok = distinct_count as u128 == predicted_count;

    // nudge one coefficient; a generic point leaves the fiber
    let mut perturbed = tuple.clone();
    perturbed[0] = Filter::from_fn(arch.group().clone(), |g| {
        let v = tuple[0].coeff(g).clone();
        if g == 0 {
            q.add(&v, &q.one())
        } else {
            v
        }
    });
    let perturbation_ok = phi_map(&q, arch, &perturbed)? != phi_ref;

    let pass = forward_ok && scaling_ok && distinct_ok && perturbation_ok;
    Ok(FiberTrial {
        trial,
        predicted_count,
        forward_ok,
        scaling_ok,
        distinct_count,
        distinct_ok,
        perturbation_ok,
        pass,
    })
}

/// Outcome of a random collision probe over a prime field.
#[derive(Clone, Debug, Serialize)]
pub struct CollisionProbe {
    pub prime: u64,
    pub samples: usize,
    /// Colliding pairs of distinct sampled tuples with equal `phi`.
    pub collision_pairs: usize,
    /// Pairs explained by translation and rescaling.
    pub predicted_pairs: usize,
    /// Unexplained collisions — findings to report, not crashes.
    pub unpredicted_pairs: usize,
    /// The deliberately injected fiber members collided with their source
    /// and were classified as predicted.
    pub injected_ok: bool,
}

/// Sample `samples` random tuples over `F_p`, plus two injected fiber
/// members of the first tuple (a translate and a rescaling), evaluate
/// `phi` on all of them, and classify every collision as predicted
/// (translation + rescaling) or unpredicted.
pub fn run_collision_probe(
    arch: &Architecture,
    prime: u64,
    master_seed: u64,
    config_id: u64,
    samples: usize,
) -> Result<CollisionProbe> {
    if samples < 1 {
        return Err(Error::Config("collision probe needs at least one sample".into()));
    }
    let f = PrimeField::new(prime)?;
    let mut rng = rng_for(master_seed, &[streams::COLLISION, config_id]);
    let n = arch.group().order();
    let layers = arch.layers();

    let mut tuples: Vec<Vec<Filter<PrimeField>>> = (0..samples)
        .map(|_| {
            (0..layers)
                .map(|_| Filter::from_fn(arch.group().clone(), |_| f.sample_uniform(&mut rng)))
                .collect()
        })
        .collect();

    // inject known fiber members of tuple 0
    let mut injected = Vec::new();
    if layers > 1 {
        let gs: Vec<usize> = (0..layers - 1).map(|_| rng.gen_range(0..n)).collect();
        tuples.push(translate_tuple(&tuples[0], &gs)?);
        injected.push(tuples.len() - 1);
        let lambdas: Vec<u64> = (0..layers - 1)
            .map(|_| rng.gen_range(1..f.modulus()))
            .collect();
        tuples.push(rescale_tuple(&f, arch, &tuples[0], &lambdas)?);
        injected.push(tuples.len() - 1);
    } else {
        // a single-layer fiber is a singleton; inject an exact copy
        tuples.push(tuples[0].clone());
        injected.push(tuples.len() - 1);
    }

    let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    for (i, t) in tuples.iter().enumerate() {
        let key = phi_map(&f, arch, t)?.coeffs().to_vec();
        buckets.entry(key).or_default().push(i);
    }

    let mut collision_pairs = 0usize;
    let mut predicted_pairs = 0usize;
    let mut injected_hits = 0usize;
    for members in buckets.values() {
        for (a_pos, &i) in members.iter().enumerate() {
            for &j in &members[a_pos + 1..] {
                collision_pairs += 1;
                let predicted = in_predicted_fiber(&f, arch, &tuples[i], &tuples[j])?;
                if predicted {
                    predicted_pairs += 1;
                }
                let is_injected_pair = (i == 0 && injected.contains(&j))
                    || (j == 0 && injected.contains(&i));
                if is_injected_pair && predicted {
                    injected_hits += 1;
                }
            }
        }
    }
    let injected_ok = injected_hits >= injected.len();
    Ok(CollisionProbe {
        prime,
        samples,
        collision_pairs,
        predicted_pairs,
        unpredicted_pairs: collision_pairs - predicted_pairs,
        injected_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::{convolve, scale};
    use crate::network::big_phi_at_identity;
    use crate::ring::DEFAULT_PRIMES;
    use crate::sample::sample_tuple;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn translate_matches_its_delta_convolution_definition() {
        let s3 = Group::symmetric(3).unwrap();
        let mut rng = rng_for(61, &[]);
        let tuple = sample_tuple(&q(), &s3, 3, &mut rng, 9);
        for gs in [[1usize, 4], [2, 0], [5, 5]] {
            let fast = translate_tuple(&tuple, &gs).unwrap();
            let d = |g: usize| Filter::delta(&q(), s3.clone(), g);
            let slow = vec![
                convolve(&q(), &tuple[0], &d(gs[0])).unwrap(),
                convolve(
                    &q(),
                    &convolve(&q(), &d(s3.inv(gs[0])), &tuple[1]).unwrap(),
                    &d(gs[1]),
                )
                .unwrap(),
                convolve(&q(), &d(s3.inv(gs[1])), &tuple[2]).unwrap(),
            ];
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn translates_preserve_phi_and_big_phi_exactly() {
        for (group, layers) in [
            (Group::cyclic(3).unwrap(), 2usize),
            (Group::cyclic(2).unwrap(), 3),
            (Group::symmetric(3).unwrap(), 2),
        ] {
            let arch = Architecture::new(group.clone(), layers, 2).unwrap();
            let mut rng = rng_for(62, &[group.order() as u64, layers as u64]);
            let tuple = sample_tuple(&q(), &group, layers, &mut rng, 9);
            let phi_ref = phi_map(&q(), &arch, &tuple).unwrap();
            let big_ref = big_phi_at_identity(&q(), &arch, &tuple).unwrap();
            for t in enumerate_translates(&arch, &tuple).unwrap() {
                assert_eq!(phi_map(&q(), &arch, &t).unwrap(), phi_ref, "on {group}");
                assert_eq!(big_phi_at_identity(&q(), &arch, &t).unwrap(), big_ref);
            }
        }
    }

    #[test]
    fn rescaling_preserves_phi_and_zero_scalars_are_rejected() {
        let c3 = Group::cyclic(3).unwrap();
        let arch = Architecture::new(c3.clone(), 3, 2).unwrap();
        let mut rng = rng_for(63, &[]);
        let tuple = sample_tuple(&q(), &c3, 3, &mut rng, 9);
        let phi_ref = phi_map(&q(), &arch, &tuple).unwrap();
        let lambdas = vec![q().from_i64(3), crate::ring::parse_rational("-5/2").unwrap()];
        let rescaled = rescale_tuple(&q(), &arch, &tuple, &lambdas).unwrap();
        assert_eq!(phi_map(&q(), &arch, &rescaled).unwrap(), phi_ref);
        let bad = vec![q().zero(), q().one()];
        assert!(matches!(
            rescale_tuple(&q(), &arch, &tuple, &bad),
            Err(Error::ZeroScalar)
        ));
    }

    #[test]
    fn translate_enumeration_counts_group_power() {
        let c4 = Group::cyclic(4).unwrap();
        let arch = Architecture::new(c4.clone(), 3, 2).unwrap();
        assert_eq!(predicted_fiber_count(&arch), Some(16));
        let mut rng = rng_for(64, &[]);
        let tuple = sample_tuple(&q(), &c4, 3, &mut rng, 9);
        let all = enumerate_translates(&arch, &tuple).unwrap();
        assert_eq!(all.len(), 16);
        // identity translation reproduces the tuple
        assert_eq!(all[0], tuple);
    }

    #[test]
    fn equivalence_accepts_rescalings_and_rejects_translates() {
        let c3 = Group::cyclic(3).unwrap();
        let arch = Architecture::new(c3.clone(), 2, 2).unwrap();
        let mut rng = rng_for(65, &[]);
        let tuple = sample_tuple(&q(), &c3, 2, &mut rng, 9);
        let rescaled =
            rescale_tuple(&q(), &arch, &tuple, &[q().from_i64(7)]).unwrap();
        assert!(tuples_equivalent(&q(), &arch, &tuple, &rescaled).unwrap());
        assert!(tuples_equivalent(&q(), &arch, &rescaled, &tuple).unwrap());
        let translated = translate_tuple(&tuple, &[1]).unwrap();
        assert!(!tuples_equivalent(&q(), &arch, &tuple, &translated).unwrap());
        assert!(in_predicted_fiber(&q(), &arch, &tuple, &translated).unwrap());
    }

    #[test]
    fn proportional_but_wrongly_weighted_scaling_is_not_equivalent() {
        // scaling a single layer changes phi by a power of the scalar, so
        // the tuple is proportional layerwise but outside the fiber
        let c2 = Group::cyclic(2).unwrap();
        let arch = Architecture::new(c2.clone(), 2, 2).unwrap();
        let mut rng = rng_for(66, &[]);
        let tuple = sample_tuple(&q(), &c2, 2, &mut rng, 9);
        let mut scaled = tuple.clone();
        scaled[0] = scale(&q(), &q().from_i64(2), &scaled[0]);
        assert!(!tuples_equivalent(&q(), &arch, &tuple, &scaled).unwrap());
        assert_ne!(
            phi_map(&q(), &arch, &scaled).unwrap(),
            phi_map(&q(), &arch, &tuple).unwrap()
        );
    }

    #[test]
    fn fiber_trials_pass_on_small_configurations() {
        for (group, layers) in [
            (Group::cyclic(3).unwrap(), 2usize),
            (Group::cyclic(2).unwrap(), 3),
            (Group::symmetric(3).unwrap(), 2),
        ] {
            let arch = Architecture::new(group.clone(), layers, 2).unwrap();
            let trial = run_fiber_trial(&arch, 17, 0, 1000, 3).unwrap();
            assert!(trial.pass, "{group} L={layers}: {trial:?}");
            assert_eq!(trial.distinct_count as u128, trial.predicted_count);
        }
    }

    #[test]
    fn single_layer_fiber_is_a_singleton() {
        let c4 = Group::cyclic(4).unwrap();
        let arch = Architecture::new(c4, 1, 2).unwrap();
        assert_eq!(predicted_fiber_count(&arch), Some(1));
        let trial = run_fiber_trial(&arch, 19, 0, 1000, 0).unwrap();
        assert!(trial.pass);
        assert_eq!(trial.distinct_count, 1);
    }

    #[test]
    fn collision_probe_classifies_injected_members() {
        let c2 = Group::cyclic(2).unwrap();
        let arch = Architecture::new(c2, 2, 2).unwrap();
        let probe = run_collision_probe(&arch, DEFAULT_PRIMES[0], 23, 0, 200).unwrap();
        assert!(probe.injected_ok, "{probe:?}");
        assert_eq!(probe.unpredicted_pairs, 0);
        assert!(probe.collision_pairs >= 2);
        assert_eq!(probe.samples, 200);
    }

    #[test]
    fn collision_probe_on_single_layer() {
        let c3 = Group::cyclic(3).unwrap();
        let arch = Architecture::new(c3, 1, 2).unwrap();
        let probe = run_collision_probe(&arch, DEFAULT_PRIMES[1], 29, 1, 100).unwrap();
        assert!(probe.injected_ok);
        assert_eq!(probe.unpredicted_pairs, 0);
    }

    #[test]
    fn probe_is_deterministic_for_a_seed() {
        let c2 = Group::cyclic(2).unwrap();
        let arch = Architecture::new(c2, 2, 2).unwrap();
        let a = run_collision_probe(&arch, DEFAULT_PRIMES[0], 31, 5, 100).unwrap();
        let b = run_collision_probe(&arch, DEFAULT_PRIMES[0], 31, 5, 100).unwrap();
        assert_eq!(a.collision_pairs, b.collision_pairs);
        assert_eq!(a.predicted_pairs, b.predicted_pairs);
    }
}
