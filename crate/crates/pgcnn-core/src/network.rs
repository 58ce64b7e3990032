//! Polynomial group convolutional networks: the architecture description,
//! the Kronecker-form parameter map `phi` on `K[G^d]`, the Hadamard-form
//! network map `Phi` (a polynomial filter in the input signal), the linear
//! collapse `Lambda` connecting them, and plain numeric evaluation.
//!
//! For a group `G` of order `n`, `L` layers, and pointwise degree `r`, the
//! network computes `x -> sigma_r(...sigma_r(x * th_1) * th_2 ...) * th_L`,
//! a homogeneous polynomial map of total degree `d = r^(L-1)`.

use crate::error::Error;
use crate::filter::{
    convolve, extend_diagonal, hadamard_power, kron_power, Filter,
};
use crate::group::{Group, DEFAULT_POWER_BUDGET};
use crate::matrix::{zero_matrix, Matrix};
use crate::poly::{
    monomial_count, monomials_of_degree, polyfilter_convolve, polyfilter_hadamard_power,
    Monomial, Poly, PolyFilter,
};
use crate::ring::Ring;
use crate::Result;

/// Default cap on the number of degree-`d` monomials in `n` variables.
pub const DEFAULT_MONOMIAL_BUDGET: u128 = 1 << 20;

/// A network shape: group, layer count `L >= 1`, and pointwise degree
/// `r >= 1`. Construction validates that the order of `G^d` and the size of
/// the degree-`d` monomial basis stay within budget.
#[derive(Clone, Debug, PartialEq)]
pub struct Architecture {
    group: Group,
    layers: usize,
    degree: usize,
    total_degree: u32,
    power_budget: u128,
    monomial_budget: u128,
}

impl Architecture {
    pub fn new(group: Group, layers: usize, degree: usize) -> Result<Self> {
        Architecture::with_budgets(group, layers, degree, DEFAULT_POWER_BUDGET, DEFAULT_MONOMIAL_BUDGET)
    }

    pub fn with_budgets(
        group: Group,
        layers: usize,
        degree: usize,
        power_budget: u128,
        monomial_budget: u128,
    ) -> Result<Self> {
        if layers == 0 {
            return Err(Error::Config("a network needs at least one layer".into()));
        }
        if degree == 0 {
            return Err(Error::Config("pointwise degree must be at least 1".into()));
        }
        let d = (degree as u128)
            .checked_pow(layers as u32 - 1)
            .filter(|&d| d <= u16::MAX as u128)
            .ok_or(Error::SizeLimit {
                what: "total degree r^(L-1)",
                requested: u128::MAX,
                limit: u16::MAX as u128,
            })?;
        let n = group.order() as u128;
        let order = n.checked_pow(d as u32).ok_or(Error::Budget {
            what: "order of G^d",
            requested: u128::MAX,
            budget: power_budget,
        })?;
        if order > power_budget {
            return Err(Error::Budget {
                what: "order of G^d",
                requested: order,
                budget: power_budget,
            });
        }
        let monomials = monomial_count(group.order(), d as u32).ok_or(Error::Budget {
            what: "degree-d monomial basis",
            requested: u128::MAX,
            budget: monomial_budget,
        })?;
        if monomials > monomial_budget {
            return Err(Error::Budget {
                what: "degree-d monomial basis",
                requested: monomials,
                budget: monomial_budget,
            });
        }
        Ok(Architecture {
            group,
            layers,
            degree,
            total_degree: d as u32,
            power_budget,
            monomial_budget,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Total polynomial degree `d = r^(L-1)` of the network in its input.
    pub fn total_degree(&self) -> u32 {
        self.total_degree
    }

    /// The group `G^d` that the Kronecker-form parameters live on.
    pub fn phi_group(&self) -> Result<Group> {
        Group::power(&self.group, self.total_degree as usize, self.power_budget)
    }

    pub fn power_budget(&self) -> u128 {
        self.power_budget
    }

    /// Number of scalar parameters, `n * L`.
    pub fn param_count(&self) -> usize {
        self.group.order() * self.layers
    }

    /// Degrees of the map in each layer's parameters:
    /// `(r^(L-1), r^(L-2), ..., r, 1)`.
    pub fn multidegree(&self) -> Vec<u64> {
        (0..self.layers)
            .map(|l| (self.degree as u64).pow((self.layers - 1 - l) as u32))
            .collect()
    }

    /// The degree-`d` monomial basis of the target space, ascending.
    pub fn monomial_basis(&self) -> Vec<Monomial> {
        monomials_of_degree(self.group.order(), self.total_degree)
    }

    fn check_tuple<R: Ring>(&self, tuple: &[Filter<R>]) -> Result<()> {
        if tuple.len() != self.layers {
            return Err(Error::DimMismatch(format!(
                "architecture has {} layers but tuple has {}",
                self.layers,
                tuple.len()
            )));
        }
        if tuple.iter().any(|f| f.group() != &self.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }
}

/// The Kronecker-form parameter map `phi` on `K[G^d]`, computed by the
/// recursion `phi_k = (phi_{k-1})^{⊗r} * (th_k extended to the diagonal of
/// G^(r^(k-1)))`, starting from `phi_1 = th_1`.
pub fn phi_map<R: Ring>(ring: &R, arch: &Architecture, tuple: &[Filter<R>]) -> Result<Filter<R>> {
    arch.check_tuple(tuple)?;
    let r = arch.degree;
    let budget = arch.power_budget;
    let mut acc = tuple[0].clone();
    let mut diag_copies = 1usize;
    for theta in &tuple[1..] {
        diag_copies *= r;
        acc = convolve(
            ring,
            &kron_power(ring, &acc, r, budget)?,
            &extend_diagonal(ring, theta, diag_copies, budget)?,
        )?;
    }
    Ok(acc)
}

/// The network map `Phi` in symbolic form: a filter on `G` whose entries
/// are degree-`d` polynomials in the signal variables, computed by the
/// layer recursion `P -> sigma_r(P) * th_k`.
pub fn big_phi_map<R: Ring>(
    ring: &R,
    arch: &Architecture,
    tuple: &[Filter<R>],
) -> Result<PolyFilter<R>> {
    arch.check_tuple(tuple)?;
    let x = PolyFilter::generic(ring, arch.group.clone());
    let mut acc = polyfilter_convolve(ring, &x, &tuple[0])?;
    for theta in &tuple[1..] {
        acc = polyfilter_hadamard_power(ring, &acc, arch.degree as u32);
        acc = polyfilter_convolve(ring, &acc, theta)?;
    }
    Ok(acc)
}

/// `Phi` evaluated at the identity: the single symmetric polynomial that
/// determines the whole equivariant map.
pub fn big_phi_at_identity<R: Ring>(
    ring: &R,
    arch: &Architecture,
    tuple: &[Filter<R>],
) -> Result<Poly<R>> {
    Ok(big_phi_map(ring, arch, tuple)?.at(arch.group.identity()).clone())
}

/// The linear collapse `Lambda: K[G^d] -> Sym_d`, sending `Theta` to
/// `sum_h x_{h_1} ... x_{h_d} Theta(h^-1)`.
pub fn lambda_map<R: Ring>(ring: &R, arch: &Architecture, theta: &Filter<R>) -> Result<Poly<R>> {
    let big_group = arch.phi_group()?;
    if theta.group() != &big_group {
        return Err(Error::GroupMismatch);
    }
    let n = arch.group.order();
    let d = arch.total_degree as usize;
    let terms = theta.coeffs().iter().enumerate().filter_map(|(j, c)| {
        if ring.is_zero(c) {
            return None;
        }
        let digits = Group::digits_of(big_group.inv(j), n, d);
        Some((Monomial::from_indices(n, &digits), c.clone()))
    });
    Ok(Poly::from_terms(ring, n, terms))
}

/// The matrix of [`lambda_map`] in the monomial basis (rows, ascending
/// order) and group-element basis (columns): a 0/1 matrix with exactly one
/// 1 per column.
pub fn lambda_matrix<R: Ring>(ring: &R, arch: &Architecture) -> Result<Matrix<R::Elem>> {
    let big_group = arch.phi_group()?;
    let n = arch.group.order();
    let d = arch.total_degree as usize;
    let basis = arch.monomial_basis();
    let row_of: std::collections::HashMap<&Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = zero_matrix(ring, basis.len(), big_group.order());
    for j in 0..big_group.order() {
        let digits = Group::digits_of(big_group.inv(j), n, d);
        let m = Monomial::from_indices(n, &digits);
        let row = row_of[&m];
        mat.set(row, j, ring.one());
    }
    Ok(mat)
}

/// Check the commuting triangle `Lambda(phi(tuple)) = Phi(tuple)(e)`
/// exactly; returns the two polynomials on mismatch.
pub fn check_commute<R: Ring>(
    ring: &R,
    arch: &Architecture,
    tuple: &[Filter<R>],
) -> Result<std::result::Result<(), Box<(Poly<R>, Poly<R>)>>> {
    let via_lambda = lambda_map(ring, arch, &phi_map(ring, arch, tuple)?)?;
    let direct = big_phi_at_identity(ring, arch, tuple)?;
    if via_lambda == direct {
        Ok(Ok(()))
    } else {
        Ok(Err(Box::new((via_lambda, direct))))
    }
}

/// Run the network on a concrete signal by the layer recursion — plain
/// filter arithmetic, no polynomial expansion.
pub fn evaluate_network<R: Ring>(
    ring: &R,
    arch: &Architecture,
    tuple: &[Filter<R>],
    signal: &Filter<R>,
) -> Result<Filter<R>> {
    arch.check_tuple(tuple)?;
    if signal.group() != &arch.group {
        return Err(Error::GroupMismatch);
    }
    let mut acc = convolve(ring, signal, &tuple[0])?;
    for theta in &tuple[1..] {
        acc = hadamard_power(ring, &acc, arch.degree as u64);
        acc = convolve(ring, &acc, theta)?;
    }
    Ok(acc)
}
