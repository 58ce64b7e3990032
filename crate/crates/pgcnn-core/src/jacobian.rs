//! Exact Jacobians of the parameter maps via dual numbers, and the
//! dimension certificate: the rank of either Jacobian at a generic
//! parameter tuple is `L(n-1) + 1` (for pointwise degree `r >= 2`), with
//! kernel dimension `L - 1` spanned by layer-rescaling directions.
//!
//! Ranks are certified by sampling an integer parameter point, measuring
//! the rank modulo several independent primes, and (optionally) confirming
//! over `Q` with fraction-free elimination; kernel, Euler, and chain-rule
//! identities are checked exactly over `Q`.

use serde::Serialize;
use rand::Rng;

use crate::error::Error;
use crate::filter::Filter;
use crate::matrix::{
    kernel_basis, mat_mul, mat_vec, rank, rank_rational, zero_matrix, Matrix,
};
use crate::network::{big_phi_at_identity, lambda_matrix, phi_map, Architecture};
use crate::ring::{DualRing, PrimeField, Rationals, Ring};
use crate::sample::{rng_for, streams};
use crate::Result;

/// Predicted generic rank of both Jacobians: `L(n-1) + 1` for `r >= 2`,
/// and `n` in the linear case `r = 1`.
pub fn predicted_rank(arch: &Architecture) -> usize {
    let n = arch.group().order();
    if arch.degree() == 1 {
        n
    } else {
        arch.layers() * (n - 1) + 1
    }
}

/// Predicted generic kernel dimension, `nL - rank` (`L - 1` for `r >= 2`).
pub fn predicted_kernel_dim(arch: &Architecture) -> usize {
    arch.param_count() - predicted_rank(arch)
}

/// The constant `k` in the Euler identity `J_phi(theta) . theta = k phi(theta)`:
/// the total weight `sum_l r^(L-l)` of the multihomogeneous map.
pub fn euler_constant(arch: &Architecture) -> u64 {
    arch.multidegree().iter().sum()
}

/// Flatten a tuple layer-major: entry `l * n + g` is layer `l`, element `g`.
pub fn flatten_tuple<R: Ring>(tuple: &[Filter<R>]) -> Vec<R::Elem> {
    tuple.iter().flat_map(|f| f.coeffs().iter().cloned()).collect()
}

fn dual_tuple_with_variable<R: Ring>(
    dual: &DualRing<R>,
    tuple: &[Filter<R>],
    layer: usize,
    element: usize,
) -> Vec<Filter<DualRing<R>>> {
    tuple
        .iter()
        .enumerate()
        .map(|(l, f)| {
            Filter::from_fn(f.group().clone(), |g| {
                let v = f.coeff(g).clone();
                if l == layer && g == element {
                    dual.variable(v)
                } else {
                    dual.constant(v)
                }
            })
        })
        .collect()
}

/// Jacobian of the Kronecker-form map `phi` at `tuple`: rows are the
/// `|G|^d` coefficients of `phi`, columns the `nL` parameters in
/// layer-major order, computed one column at a time with dual numbers.
pub fn jac_phi<R: Ring>(ring: &R, arch: &Architecture, tuple: &[Filter<R>]) -> Result<Matrix<R::Elem>> {
    let dual = DualRing::new(ring.clone());
    let n = arch.group().order();
    let rows = arch.phi_group()?.order();
    let mut out = zero_matrix(ring, rows, arch.param_count());
    for layer in 0..arch.layers() {
        for element in 0..n {
            let col = layer * n + element;
            let lifted = dual_tuple_with_variable(&dual, tuple, layer, element);
            let phi = phi_map(&dual, arch, &lifted)?;
            for (row, c) in phi.coeffs().iter().enumerate() {
                out.set(row, col, c.der.clone());
            }
        }
    }
    Ok(out)
}

/// Jacobian of the network map `Phi` at `tuple`: rows are the degree-`d`
/// monomial coefficients of `Phi(e)` in ascending monomial order, columns
/// as in [`jac_phi`].
pub fn jac_big_phi<R: Ring>(
    ring: &R,
    arch: &Architecture,
    tuple: &[Filter<R>],
) -> Result<Matrix<R::Elem>> {
    let dual = DualRing::new(ring.clone());
    let n = arch.group().order();
    let basis = arch.monomial_basis();
    let mut out = zero_matrix(ring, basis.len(), arch.param_count());
    for layer in 0..arch.layers() {
        for element in 0..n {
            let col = layer * n + element;
            let lifted = dual_tuple_with_variable(&dual, tuple, layer, element);
            let poly = big_phi_at_identity(&dual, arch, &lifted)?;
            for (row, m) in basis.iter().enumerate() {
                out.set(row, col, poly.coefficient(&dual, m).der);
            }
        }
    }
    Ok(out)
}

/// The `L - 1` layer-rescaling kernel directions at `tuple`: vector `k`
/// has `theta_{k+1}` in layer `k` and `-r theta_{k+2}` in layer `k + 1`.
/// These annihilate both Jacobians for every `r >= 1`.
pub fn predicted_kernel_vectors<R: Ring>(
    ring: &R,
    arch: &Architecture,
    tuple: &[Filter<R>],
) -> Vec<Vec<R::Elem>> {
    let n = arch.group().order();
    let minus_r = ring.from_i64(-(arch.degree() as i64));
    (0..arch.layers().saturating_sub(1))
        .map(|k| {
            let mut v = vec![ring.zero(); arch.param_count()];
            for g in 0..n {
                v[k * n + g] = tuple[k].coeff(g).clone();
                v[(k + 1) * n + g] = ring.mul(&minus_r, tuple[k + 1].coeff(g));
            }
            v
        })
        .collect()
}

/// `true` when `J v = 0`.
pub fn annihilates<R: Ring>(ring: &R, jac: &Matrix<R::Elem>, v: &[R::Elem]) -> Result<bool> {
    Ok(mat_vec(ring, jac, v)?.iter().all(|x| ring.is_zero(x)))
}

/// Rank measurements for one prime.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeRanks {
    pub prime: u64,
    pub rank_phi: usize,
    pub rank_big_phi: usize,
}

/// Outcome of one dimension trial at a sampled integer parameter point.
#[derive(Clone, Debug, Serialize)]
pub struct DimTrial {
    pub trial: usize,
    /// Sampling attempts consumed (1 unless degenerate points forced retries).
    pub attempts: u32,
    pub predicted_rank: usize,
    pub predicted_kernel_dim: usize,
    pub prime_ranks: Vec<PrimeRanks>,
    /// Exact ranks over `Q` when rational confirmation is enabled.
    pub rational_ranks: Option<(usize, usize)>,
    /// Consensus rank of `J phi` / `J Phi` across all measurements, when
    /// they agree.
    pub observed_rank_phi: Option<usize>,
    pub observed_rank_big_phi: Option<usize>,
    /// Every predicted kernel vector annihilates both Jacobians (exact).
    pub kernel_membership_ok: bool,
    /// The predicted kernel vectors are linearly independent (exact).
    pub kernel_independent_ok: bool,
    /// The exact kernel dimension equals the prediction.
    pub kernel_dim_ok: bool,
    /// `J_phi . theta = k phi(theta)` with `k` the multidegree weight (exact).
    pub euler_ok: bool,
    /// `J_Phi = Lambda . J_phi` (exact).
    pub chain_ok: bool,
    pub pass: bool,
}

/// Run one dimension trial: sample an integer tuple, measure both Jacobian
/// ranks modulo every prime in `primes` (and over `Q` when `rational`),
/// and check the kernel, Euler, and chain-rule identities exactly.
///
/// A random point can be non-generic (measured rank below predicted); in
/// that case the point is redrawn, up to `max_retries` extra attempts.
pub fn run_dim_trial(
    arch: &Architecture,
    master_seed: u64,
    trial: usize,
    primes: &[u64],
    bound: u32,
    rational: bool,
    max_retries: u32,
) -> Result<DimTrial> {
    let fields = primes
        .iter()
        .map(|&p| PrimeField::new(p))
        .collect::<Result<Vec<_>>>()?;
    let q = Rationals;
    let n = arch.group().order();
    let mut outcome = None;
    for attempt in 0..=max_retries {
        let mut rng = rng_for(
            master_seed,
            &[streams::DIM, trial as u64, attempt as u64],
        );
        let ints: Vec<i64> = (0..arch.param_count())
            .map(|_| rng.gen_range(-(bound as i64)..=bound as i64))
            .collect();
        let tuple_q: Vec<Filter<Rationals>> = ints
            .chunks(n)
            .map(|chunk| {
                Filter::new(
                    arch.group().clone(),
                    chunk.iter().map(|&v| q.from_i64(v)).collect(),
                )
                .expect("chunk length is the group order")
            })
            .collect();
        let jphi_q = jac_phi(&q, arch, &tuple_q)?;
        let jbig_q = jac_big_phi(&q, arch, &tuple_q)?;

        let mut prime_ranks = Vec::with_capacity(fields.len());
        for f in &fields {
            let tuple_f: Vec<Filter<PrimeField>> = ints
                .chunks(n)
                .map(|chunk| {
                    Filter::new(
                        arch.group().clone(),
                        chunk.iter().map(|&v| f.from_i64(v)).collect(),
                    )
                    .expect("chunk length is the group order")
                })
                .collect();
            prime_ranks.push(PrimeRanks {
                prime: f.modulus(),
                rank_phi: rank(f, &jac_phi(f, arch, &tuple_f)?),
                rank_big_phi: rank(f, &jac_big_phi(f, arch, &tuple_f)?),
            });
        }
        let rational_ranks =
            rational.then(|| (rank_rational(&jphi_q), rank_rational(&jbig_q)));

        let consensus = |of_prime: &dyn Fn(&PrimeRanks) -> usize,
                         of_rat: &dyn Fn(&(usize, usize)) -> usize|
         -> Option<usize> {
            let mut all = prime_ranks.iter().map(of_prime).collect::<Vec<_>>();
            if let Some(r) = &rational_ranks {
                all.push(of_rat(r));
            }
            let first = *all.first()?;
            all.iter().all(|&v| v == first).then_some(first)
        };
        let observed_rank_phi = consensus(&|p| p.rank_phi, &|r| r.0);
        let observed_rank_big_phi = consensus(&|p| p.rank_big_phi, &|r| r.1);

        let kernel_vectors = predicted_kernel_vectors(&q, arch, &tuple_q);
        let kernel_membership_ok = kernel_vectors
            .iter()
            .map(|v| Ok(annihilates(&q, &jphi_q, v)? && annihilates(&q, &jbig_q, v)?))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|ok| ok);
        let kernel_independent_ok = if kernel_vectors.is_empty() {
            true
        } else {
            let m = Matrix::new(
                kernel_vectors.len(),
                arch.param_count(),
                kernel_vectors.iter().flatten().cloned().collect(),
            )?;
            rank(&q, &m) == kernel_vectors.len()
        };
        let kernel_dim_ok =
            kernel_basis(&q, &jphi_q).len() == predicted_kernel_dim(arch);

        let theta_flat = flatten_tuple(&tuple_q);
        let phi_q = phi_map(&q, arch, &tuple_q)?;
        let k = q.from_i64(euler_constant(arch) as i64);
        let euler_ok = mat_vec(&q, &jphi_q, &theta_flat)?
            .iter()
            .zip(phi_q.coeffs())
            .all(|(lhs, c)| *lhs == q.mul(&k, c));

        let lambda = lambda_matrix(&q, arch)?;
        let chain_ok = mat_mul(&q, &lambda, &jphi_q)? == jbig_q;

        let predicted = predicted_rank(arch);
        let rank_ok = observed_rank_phi == Some(predicted)
            && observed_rank_big_phi == Some(predicted);
        let pass = rank_ok
            && kernel_membership_ok
            && kernel_independent_ok
            && kernel_dim_ok
            && euler_ok
            && chain_ok;

        let trial_result = DimTrial {
            trial,
            attempts: attempt + 1,
            predicted_rank: predicted,
            predicted_kernel_dim: predicted_kernel_dim(arch),
            prime_ranks,
            rational_ranks,
            observed_rank_phi,
            observed_rank_big_phi,
            kernel_membership_ok,
            kernel_independent_ok,
            kernel_dim_ok,
            euler_ok,
            chain_ok,
            pass,
        };
        // identities hold everywhere; only a non-generic point (low rank)
        // justifies a redraw
        let degenerate_only = !pass
            && kernel_membership_ok
            && euler_ok
            && chain_ok
            && observed_rank_phi.map_or(false, |r| r < predicted);
        if pass || !degenerate_only {
            return Ok(trial_result);
        }
        outcome = Some(trial_result);
    }
    outcome.ok_or_else(|| Error::Config("dimension trial needs max_retries >= 0".into()))
}
