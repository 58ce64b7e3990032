//! Filters: elements of the group algebra `K[G]`, stored as coefficient
//! vectors in the group's element order, together with the operations the
//! rest of the crate is built from — convolution, circulant matrices,
//! Kronecker and Hadamard products, and diagonal extension/restriction.

use serde_json::{json, Value};

use crate::error::Error;
use crate::group::{Group, DEFAULT_POWER_BUDGET};
use crate::matrix::Matrix;
use crate::ring::{parse_rational, Field, Rationals, Ring};
use crate::Result;

/// An element of `K[G]`: one coefficient per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct Filter<R: Ring> {
    group: Group,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> Filter<R> {
    pub fn new(group: Group, coeffs: Vec<R::Elem>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimMismatch(format!(
                "group {} has order {} but got {} coefficients",
                group,
                group.order(),
                coeffs.len()
            )));
        }
        Ok(Filter { group, coeffs })
    }

    /// The zero filter.
    pub fn zero(ring: &R, group: Group) -> Self {
        let n = group.order();
        Filter { group, coeffs: vec![ring.zero(); n] }
    }

    /// The indicator of a single element; `delta(e)` is the convolution
    /// identity.
    pub fn delta(ring: &R, group: Group, g: usize) -> Self {
        let mut f = Filter::zero(ring, group);
        f.coeffs[g] = ring.one();
        f
    }

    pub fn from_fn(group: Group, mut f: impl FnMut(usize) -> R::Elem) -> Self {
        let coeffs = (0..group.order()).map(&mut f).collect();
        Filter { group, coeffs }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &R::Elem {
        &self.coeffs[g]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_size(&self, ring: &R) -> usize {
        self.coeffs.iter().filter(|c| !ring.is_zero(c)).count()
    }

    pub fn is_zero(&self, ring: &R) -> bool {
        self.coeffs.iter().all(|c| ring.is_zero(c))
    }

    /// Serialize as `{group, ring, coeffs}` with coefficients rendered by
    /// the ring.
    pub fn to_json(&self, ring: &R) -> Value {
        json!({
            "group": self.group.label(),
            "ring": ring.name(),
            "coeffs": self.coeffs.iter().map(|c| ring.format(c)).collect::<Vec<_>>(),
        })
    }
}

/// Parse a group label as produced by [`Group::label`]: a product of atoms,
/// optionally raised to a power (`C2`, `C2xC3`, `S3^2`).
pub fn parse_group_label(label: &str) -> Result<Group> {
    match label.rsplit_once('^') {
        None => Group::parse(label),
        Some((base, exp)) => {
            let base = Group::parse(base)?;
            let m: usize = exp.parse().map_err(|_| Error::Parse {
                pos: label.len() - exp.len(),
                msg: format!("invalid power exponent {exp:?}"),
            })?;
            Group::power_default(&base, m)
        }
    }
}

/// Deserialize a rational filter from the [`Filter::to_json`] layout.
pub fn filter_from_json(v: &Value) -> Result<Filter<Rationals>> {
    let obj = v.as_object().ok_or_else(|| Error::Config("filter JSON must be an object".into()))?;
    let group_label = obj
        .get("group")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Config("filter JSON needs a string `group`".into()))?;
    let ring_name = obj
        .get("ring")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Config("filter JSON needs a string `ring`".into()))?;
    if ring_name != "Q" {
        return Err(Error::Config(format!("cannot deserialize coefficients over {ring_name}")));
    }
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Config("filter JSON needs an array `coeffs`".into()))?;
    let group = parse_group_label(group_label)?;
    let parsed = coeffs
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| Error::Config("coefficients must be strings".into()))
                .and_then(parse_rational)
        })
        .collect::<Result<Vec<_>>>()?;
    Filter::new(group, parsed)
}

fn check_same_group<R: Ring>(a: &Filter<R>, b: &Filter<R>) -> Result<()> {
    if a.group != b.group {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

pub fn add<R: Ring>(ring: &R, a: &Filter<R>, b: &Filter<R>) -> Result<Filter<R>> {
    check_same_group(a, b)?;
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| ring.add(x, y)).collect();
    Ok(Filter { group: a.group.clone(), coeffs })
}

pub fn sub<R: Ring>(ring: &R, a: &Filter<R>, b: &Filter<R>) -> Result<Filter<R>> {
    check_same_group(a, b)?;
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| ring.sub(x, y)).collect();
    Ok(Filter { group: a.group.clone(), coeffs })
}

pub fn scale<R: Ring>(ring: &R, c: &R::Elem, a: &Filter<R>) -> Filter<R> {
    let coeffs = a.coeffs.iter().map(|x| ring.mul(c, x)).collect();
    Filter { group: a.group.clone(), coeffs }
}

/// Convolution `(a * b)(g) = sum_h a(g h^-1) b(h)`.
///
/// Runs in `O(|G| * |supp b|)`: zero coefficients of `b` are skipped, so
/// convolving against a diagonally supported filter costs only the support.
pub fn convolve<R: Ring>(ring: &R, a: &Filter<R>, b: &Filter<R>) -> Result<Filter<R>> {
    check_same_group(a, b)?;
    let group = &a.group;
    let n = group.order();
    let mut out = vec![ring.zero(); n];
    for (h, bh) in b.coeffs.iter().enumerate() {
        if ring.is_zero(bh) {
            continue;
        }
        let h_inv = group.inv(h);
        for g in 0..n {
            let ag = &a.coeffs[group.mul(g, h_inv)];
            if ring.is_zero(ag) {
                continue;
            }
            out[g] = ring.add(&out[g], &ring.mul(ag, bh));
        }
    }
    Ok(Filter { group: group.clone(), coeffs: out })
}

/// Convolve a sequence left to right; errors on an empty sequence.
pub fn convolve_all<R: Ring>(ring: &R, filters: &[Filter<R>]) -> Result<Filter<R>> {
    let (first, rest) = filters
        .split_first()
        .ok_or_else(|| Error::Config("cannot convolve an empty sequence".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| convolve(ring, &acc, f))
}

/// The circulant matrix `(Mat_a)_{ij} = a(g_i g_j^-1)`; applying it to a
/// coefficient vector is convolution by `a` on the left.
pub fn circulant<R: Ring>(ring: &R, a: &Filter<R>) -> Matrix<R::Elem> {
    let group = &a.group;
    let n = group.order();
    let mut m = crate::matrix::zero_matrix(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, a.coeffs[group.mul(i, group.inv(j))].clone());
        }
    }
    m
}

/// The involution `a^*(g) = a(g^-1)`.
pub fn involution<R: Ring>(a: &Filter<R>) -> Filter<R> {
    let group = a.group.clone();
    let coeffs = (0..group.order()).map(|g| a.coeffs[group.inv(g)].clone()).collect();
    Filter { group, coeffs }
}

/// Cross-correlation `(a ⋆ b)(g) = sum_k a(gk) b(k)`, which equals
/// convolution with the involution of `b`; the two conventions are
/// interchangeable.
pub fn cross_correlate<R: Ring>(ring: &R, a: &Filter<R>, b: &Filter<R>) -> Result<Filter<R>> {
    convolve(ring, a, &involution(b))
}

/// Kronecker product `(a ⊗ b)(g, h) = a(g) b(h)` on the product group with
/// row-major indexing. When both groups are powers of the same base the
/// result stays an implicit power group; otherwise the product table is
/// materialized.
pub fn kron<R: Ring>(ring: &R, a: &Filter<R>, b: &Filter<R>, budget: u128) -> Result<Filter<R>> {
    let (base_a, copies_a) = a.group.power_base();
    let (base_b, copies_b) = b.group.power_base();
    let group = if base_a == base_b {
        Group::power(&base_a, copies_a + copies_b, budget)?
    } else {
        Group::direct_product(&a.group, &b.group)?
    };
    let mut coeffs = Vec::with_capacity(a.len() * b.len());
    for x in &a.coeffs {
        for y in &b.coeffs {
            coeffs.push(ring.mul(x, y));
        }
    }
    Filter::new(group, coeffs)
}

/// Iterated Kronecker power `a^{⊗r}` on `G^r` (`r >= 1`).
pub fn kron_power<R: Ring>(ring: &R, a: &Filter<R>, r: usize, budget: u128) -> Result<Filter<R>> {
    if r == 0 {
        return Err(Error::Config("Kronecker power needs r >= 1".into()));
    }
    let mut out = a.clone();
    for _ in 1..r {
        out = kron(ring, &out, a, budget)?;
    }
    Ok(out)
}

/// Hadamard (pointwise) product on a common group.
pub fn hadamard<R: Ring>(ring: &R, a: &Filter<R>, b: &Filter<R>) -> Result<Filter<R>> {
    check_same_group(a, b)?;
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| ring.mul(x, y)).collect();
    Ok(Filter { group: a.group.clone(), coeffs })
}

/// Hadamard power `σ_r(a)(g) = a(g)^r`, the pointwise `r`-th power.
pub fn hadamard_power<R: Ring>(ring: &R, a: &Filter<R>, r: u64) -> Filter<R> {
    let coeffs = a.coeffs.iter().map(|x| ring.pow(x, r)).collect();
    Filter { group: a.group.clone(), coeffs }
}

/// Extension by zero along the diagonal: `a^{G^r}(g_1, ..., g_r)` is
/// `a(g)` when all components equal `g` and zero otherwise. `r = 1` is the
/// identity.
pub fn extend_diagonal<R: Ring>(ring: &R, a: &Filter<R>, r: usize, budget: u128) -> Result<Filter<R>> {
    let group = Group::power(&a.group, r, budget)?;
    if r == 1 {
        return Ok(a.clone());
    }
    let mut out = Filter::zero(ring, group);
    for (g, c) in a.coeffs.iter().enumerate() {
        out.coeffs[a.group.diagonal_index(r, g)] = c.clone();
    }
    Ok(out)
}

/// Restriction to the diagonal copy of `base` inside `base^r`: the inverse
/// direction of [`extend_diagonal`], `(a|_G)(g) = a(g, ..., g)`.
pub fn restrict_diagonal<R: Ring>(a: &Filter<R>, base: &Group, r: usize) -> Result<Filter<R>> {
    let expected = Group::power(base, r, a.group.order() as u128)?;
    if a.group != expected {
        return Err(Error::GroupMismatch);
    }
    let coeffs = (0..base.order())
        .map(|g| a.coeffs[base.diagonal_index(r, g)].clone())
        .collect();
    Ok(Filter { group: base.clone(), coeffs })
}

/// Determinant of the circulant matrix of `a`.
pub fn filter_det<F: Field>(field: &F, a: &Filter<F>) -> F::Elem {
    crate::matrix::det(field, &circulant(field, a)).expect("circulant is square")
}

/// Exact rational circulant determinant via fraction-free elimination.
pub fn filter_det_rational(a: &Filter<Rationals>) -> num::rational::BigRational {
    crate::matrix::det_rational(&circulant(&Rationals, a)).expect("circulant is square")
}

/// Convolutional inverse: the filter `b` with `a * b = b * a = delta(e)`,
/// or `None` when the circulant matrix is singular. The inverse of a
/// circulant is again a circulant, which is exactly this statement.
pub fn filter_inverse<F: Field>(field: &F, a: &Filter<F>) -> Option<Filter<F>> {
    let mat = circulant(field, a);
    let e = Filter::delta(field, a.group.clone(), a.group.identity());
    let sol = crate::matrix::solve(field, &mat, e.coeffs()).expect("shapes agree");
    sol.map(|coeffs| Filter { group: a.group.clone(), coeffs })
}

/// Convenience: Kronecker/diagonal ops with the default power budget.
pub fn kron_default<R: Ring>(ring: &R, a: &Filter<R>, b: &Filter<R>) -> Result<Filter<R>> {
    kron(ring, a, b, DEFAULT_POWER_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};
    use crate::sample::sample_filter;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn qfilter(group: &Group, ints: &[i64]) -> Filter<Rationals> {
        Filter::new(group.clone(), ints.iter().map(|&v| Rationals.from_i64(v)).collect())
            .unwrap()
    }

    #[test]
    fn convolution_on_cyclic_three_matches_hand_formula() {
        let q = Rationals;
        let c3 = Group::cyclic(3).unwrap();
        let theta = qfilter(&c3, &[2, 3, 5]);
        let psi = qfilter(&c3, &[7, 11, 13]);
        // (theta * psi)(0) = t(0)p(0) + t(2)p(1) + t(1)p(2)
        let conv = convolve(&q, &theta, &psi).unwrap();
        assert_eq!(conv, qfilter(&c3, &[2 * 7 + 5 * 11 + 3 * 13, 3 * 7 + 2 * 11 + 5 * 13, 5 * 7 + 3 * 11 + 2 * 13]));
    }

    #[test]
    fn delta_at_identity_is_convolution_identity() {
        let q = Rationals;
        let s3 = Group::symmetric(3).unwrap();
        let theta = qfilter(&s3, &[1, -2, 3, 0, 5, 7]);
        let e = Filter::delta(&q, s3.clone(), 0);
        assert_eq!(convolve(&q, &theta, &e).unwrap(), theta);
        assert_eq!(convolve(&q, &e, &theta).unwrap(), theta);
    }

    #[test]
    fn convolving_with_delta_translates() {
        let q = Rationals;
        let c4 = Group::cyclic(4).unwrap();
        let theta = qfilter(&c4, &[1, 2, 3, 4]);
        let d1 = Filter::delta(&q, c4.clone(), 1);
        // (theta * d_h)(g) = theta(g h^-1): right translation by h
        let right = convolve(&q, &theta, &d1).unwrap();
        assert_eq!(right, qfilter(&c4, &[4, 1, 2, 3]));
    }

    #[test]
    fn circulant_of_delta_identity_is_identity_matrix() {
        let q = Rationals;
        let c4 = Group::cyclic(4).unwrap();
        let e = Filter::delta(&q, c4, 0);
        assert_eq!(circulant(&q, &e), crate::matrix::identity_matrix(&q, 4));
    }

    #[test]
    fn circulant_rows_and_columns_permute_the_coefficients() {
        let q = Rationals;
        let d4 = Group::dihedral(4).unwrap();
        let theta = qfilter(&d4, &[1, 2, 3, 4, 5, 6, 7, 8]);
        let m = circulant(&q, &theta);
        let mut expected: Vec<_> = theta.coeffs().to_vec();
        expected.sort_by_key(|v| v.to_string());
        for i in 0..8 {
            let mut row: Vec<_> = (0..8).map(|j| m.get(i, j).clone()).collect();
            row.sort_by_key(|v| v.to_string());
            assert_eq!(row, expected);
            let mut col: Vec<_> = (0..8).map(|j| m.get(j, i).clone()).collect();
            col.sort_by_key(|v| v.to_string());
            assert_eq!(col, expected);
        }
    }

    #[test]
    fn circulant_is_an_algebra_homomorphism() {
        let q = Rationals;
        let s3 = Group::symmetric(3).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..10 {
            let a = sample_filter(&q, &s3, &mut rng, 9);
            let b = sample_filter(&q, &s3, &mut rng, 9);
            let lhs = circulant(&q, &convolve(&q, &a, &b).unwrap());
            let rhs = crate::matrix::mat_mul(&q, &circulant(&q, &a), &circulant(&q, &b)).unwrap();
            assert_eq!(lhs, rhs);
            let sum = circulant(&q, &add(&q, &a, &b).unwrap());
            let mat_sum =
                crate::matrix::mat_add(&q, &circulant(&q, &a), &circulant(&q, &b)).unwrap();
            assert_eq!(sum, mat_sum);
        }
    }

    #[test]
    fn convolution_is_associative_but_not_commutative_on_s3() {
        let q = Rationals;
        let s3 = Group::symmetric(3).unwrap();
        let a = qfilter(&s3, &[1, 2, 0, 0, 0, 0]);
        let b = qfilter(&s3, &[0, 0, 1, 0, 3, 0]);
        let c = qfilter(&s3, &[5, 0, 0, 1, 0, 2]);
        let ab_c = convolve(&q, &convolve(&q, &a, &b).unwrap(), &c).unwrap();
        let a_bc = convolve(&q, &a, &convolve(&q, &b, &c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        assert_ne!(convolve(&q, &a, &b).unwrap(), convolve(&q, &b, &a).unwrap());
    }

    #[test]
    fn involution_reverses_convolution() {
        let q = Rationals;
        let s3 = Group::symmetric(3).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let a = sample_filter(&q, &s3, &mut rng, 9);
        let b = sample_filter(&q, &s3, &mut rng, 9);
        let lhs = involution(&convolve(&q, &a, &b).unwrap());
        let rhs = convolve(&q, &involution(&b), &involution(&a)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(involution(&involution(&a)), a);
    }

    #[test]
    fn kron_coefficient_layout_is_row_major() {
        let q = Rationals;
        let c2 = Group::cyclic(2).unwrap();
        let c3 = Group::cyclic(3).unwrap();
        let a = qfilter(&c2, &[2, 3]);
        let b = qfilter(&c3, &[5, 7, 11]);
        let k = kron_default(&q, &a, &b).unwrap();
        assert_eq!(k, qfilter(k.group(), &[10, 14, 22, 15, 21, 33]));
        assert_eq!(k.group().order(), 6);
    }

    #[test]
    fn kron_of_same_base_stays_an_implicit_power() {
        let q = Rationals;
        let c3 = Group::cyclic(3).unwrap();
        let a = qfilter(&c3, &[1, 2, 3]);
        let k = kron_default(&q, &a, &a).unwrap();
        assert!(k.group().is_power());
        assert_eq!(k.group().power_base(), (c3.clone(), 2));
        let k2 = kron_default(&q, &k, &a).unwrap();
        assert_eq!(k2.group().power_base(), (c3, 3));
    }

    #[test]
    fn kron_distributes_over_convolution() {
        // (a1 ⊗ b1) * (a2 ⊗ b2) = (a1 * a2) ⊗ (b1 * b2)
        let q = Rationals;
        let c2 = Group::cyclic(2).unwrap();
        let c3 = Group::cyclic(3).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for _ in 0..10 {
            let a1 = sample_filter(&q, &c2, &mut rng, 9);
            let a2 = sample_filter(&q, &c2, &mut rng, 9);
            let b1 = sample_filter(&q, &c3, &mut rng, 9);
            let b2 = sample_filter(&q, &c3, &mut rng, 9);
            let lhs = convolve(
                &q,
                &kron_default(&q, &a1, &b1).unwrap(),
                &kron_default(&q, &a2, &b2).unwrap(),
            )
            .unwrap();
            let rhs = kron_default(
                &q,
                &convolve(&q, &a1, &a2).unwrap(),
                &convolve(&q, &b1, &b2).unwrap(),
            )
            .unwrap();
            assert_eq!(lhs.coeffs(), rhs.coeffs());
        }
    }

    #[test]
    fn kron_power_on_power_groups_flattens() {
        let q = Rationals;
        let c2 = Group::cyclic(2).unwrap();
        let a = qfilter(&c2, &[1, 5]);
        let a2 = kron_power(&q, &a, 2, 1 << 20).unwrap();
        let a4 = kron_power(&q, &a2, 2, 1 << 20).unwrap();
        assert_eq!(a4, kron_power(&q, &a, 4, 1 << 20).unwrap());
        assert!(kron_power(&q, &a, 0, 1 << 20).is_err());
        assert_eq!(kron_power(&q, &a, 1, 1 << 20).unwrap(), a);
    }

    #[test]
    fn kron_power_budget_enforced() {
        let q = Rationals;
        let c4 = Group::cyclic(4).unwrap();
        let a = qfilter(&c4, &[1, 2, 3, 4]);
        assert!(matches!(
            kron_power(&q, &a, 11, 1 << 20),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn hadamard_power_of_convolution_restricts_from_kron_powers() {
        // sigma_r(a * b) = (a^{⊗r} * b^{⊗r}) restricted to the diagonal
        let q = Rationals;
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for group in [Group::cyclic(3).unwrap(), Group::symmetric(3).unwrap()] {
            for r in [2usize, 3] {
                let a = sample_filter(&q, &group, &mut rng, 7);
                let b = sample_filter(&q, &group, &mut rng, 7);
                let lhs = hadamard_power(&q, &convolve(&q, &a, &b).unwrap(), r as u64);
                let big = convolve(
                    &q,
                    &kron_power(&q, &a, r, 1 << 20).unwrap(),
                    &kron_power(&q, &b, r, 1 << 20).unwrap(),
                )
                .unwrap();
                let rhs = restrict_diagonal(&big, &group, r).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn hadamard_is_pointwise() {
        let q = Rationals;
        let c3 = Group::cyclic(3).unwrap();
        let a = qfilter(&c3, &[2, 3, 4]);
        let b = qfilter(&c3, &[5, 6, 7]);
        assert_eq!(hadamard(&q, &a, &b).unwrap(), qfilter(&c3, &[10, 18, 28]));
        assert_eq!(hadamard_power(&q, &a, 3), qfilter(&c3, &[8, 27, 64]));
        assert_eq!(hadamard_power(&q, &a, 1), a);
    }

    #[test]
    fn extend_then_restrict_round_trips() {
        let q = Rationals;
        let s3 = Group::symmetric(3).unwrap();
        let a = qfilter(&s3, &[1, 2, 3, 4, 5, 6]);
        let ext = extend_diagonal(&q, &a, 2, 1 << 20).unwrap();
        assert_eq!(ext.group().order(), 36);
        assert_eq!(ext.support_size(&q), 6);
        assert_eq!(restrict_diagonal(&ext, &s3, 2).unwrap(), a);
        // r = 1 round trips as the identity
        assert_eq!(extend_diagonal(&q, &a, 1, 1 << 20).unwrap(), a);
    }

    #[test]
    fn extension_convolves_along_the_diagonal_subgroup() {
        // Extensions multiply like the originals: a^{G^r} * b^{G^r} = (a*b)^{G^r}
        let q = Rationals;
        let c4 = Group::cyclic(4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        let a = sample_filter(&q, &c4, &mut rng, 9);
        let b = sample_filter(&q, &c4, &mut rng, 9);
        let lhs = convolve(
            &q,
            &extend_diagonal(&q, &a, 2, 1 << 20).unwrap(),
            &extend_diagonal(&q, &b, 2, 1 << 20).unwrap(),
        )
        .unwrap();
        let rhs = extend_diagonal(&q, &convolve(&q, &a, &b).unwrap(), 2, 1 << 20).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn restrict_rejects_group_mismatch() {
        let q = Rationals;
        let c2 = Group::cyclic(2).unwrap();
        let c3 = Group::cyclic(3).unwrap();
        let a = qfilter(&c3, &[1, 2, 3]);
        let ext = extend_diagonal(&q, &a, 2, 1 << 20).unwrap();
        assert!(restrict_diagonal(&ext, &c2, 2).is_err());
        assert!(restrict_diagonal(&ext, &c3, 3).is_err());
    }

    #[test]
    fn inverse_filter_on_cyclic_two() {
        let q = Rationals;
        let c2 = Group::cyclic(2).unwrap();
        let theta = qfilter(&c2, &[2, 1]);
        assert_eq!(filter_det_rational(&theta), q.from_i64(3));
        let inv = filter_inverse(&q, &theta).unwrap();
        assert_eq!(
            inv.coeffs(),
            &[parse_rational("2/3").unwrap(), parse_rational("-1/3").unwrap()]
        );
        let e = convolve(&q, &theta, &inv).unwrap();
        assert_eq!(e, Filter::delta(&q, c2, 0));
    }

    #[test]
    fn inverse_of_circulant_is_circulant_of_inverse() {
        let q = Rationals;
        let s3 = Group::symmetric(3).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let mut found = false;
        for _ in 0..10 {
            let a = sample_filter(&q, &s3, &mut rng, 9);
            let Some(inv) = filter_inverse(&q, &a) else { continue };
            found = true;
            let prod =
                crate::matrix::mat_mul(&q, &circulant(&q, &a), &circulant(&q, &inv)).unwrap();
            assert_eq!(prod, crate::matrix::identity_matrix(&q, 6));
            assert_eq!(convolve(&q, &inv, &a).unwrap(), Filter::delta(&q, s3.clone(), 0));
        }
        assert!(found);
    }

    #[test]
    fn singular_filter_has_no_inverse() {
        let q = Rationals;
        let c2 = Group::cyclic(2).unwrap();
        let ones = qfilter(&c2, &[1, 1]);
        assert_eq!(filter_det_rational(&ones), q.zero());
        assert!(filter_inverse(&q, &ones).is_none());
    }

    #[test]
    fn dets_agree_between_field_elimination_and_bareiss() {
        let q = Rationals;
        let d4 = Group::dihedral(4).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let a = sample_filter(&q, &d4, &mut rng, 5);
        assert_eq!(filter_det(&q, &a), filter_det_rational(&a));
    }

    #[test]
    fn prime_field_convolution_mirrors_rational_convolution() {
        let q = Rationals;
        let f = PrimeField::new(1_048_583).unwrap();
        let c4 = Group::cyclic(4).unwrap();
        let mut r1 = ChaCha12Rng::seed_from_u64(8);
        let mut r2 = ChaCha12Rng::seed_from_u64(8);
        let aq = sample_filter(&q, &c4, &mut r1, 50);
        let bq = sample_filter(&q, &c4, &mut r1, 50);
        let af = sample_filter(&f, &c4, &mut r2, 50);
        let bf = sample_filter(&f, &c4, &mut r2, 50);
        let cq = convolve(&q, &aq, &bq).unwrap();
        let cf = convolve(&f, &af, &bf).unwrap();
        for g in 0..4 {
            assert_eq!(f.from_rational(cq.coeff(g)).unwrap(), *cf.coeff(g));
        }
    }

    #[test]
    fn json_round_trip() {
        let c6 = Group::parse("C2xC3").unwrap();
        let mut theta = qfilter(&c6, &[1, 2, 3, 4, 5, 6]);
        theta = scale(&Rationals, &parse_rational("1/2").unwrap(), &theta);
        let json = theta.to_json(&Rationals);
        assert_eq!(json["group"], "C2xC3");
        assert_eq!(json["ring"], "Q");
        assert_eq!(json["coeffs"][0], "1/2");
        let back = filter_from_json(&json).unwrap();
        assert_eq!(back, theta);
    }

    #[test]
    fn json_round_trip_on_power_group() {
        let q = Rationals;
        let c2 = Group::cyclic(2).unwrap();
        let a = qfilter(&c2, &[3, 4]);
        let k = kron_power(&q, &a, 3, 1 << 20).unwrap();
        let json = k.to_json(&q);
        assert_eq!(json["group"], "C2^3");
        let back = filter_from_json(&json).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn group_mismatch_rejected() {
        let q = Rationals;
        let a = qfilter(&Group::cyclic(2).unwrap(), &[1, 2]);
        let b = qfilter(&Group::cyclic(3).unwrap(), &[1, 2, 3]);
        assert!(matches!(convolve(&q, &a, &b), Err(Error::GroupMismatch)));
        assert!(matches!(hadamard(&q, &a, &b), Err(Error::GroupMismatch)));
        assert!(matches!(add(&q, &a, &b), Err(Error::GroupMismatch)));
    }

    #[test]
    fn wrong_coefficient_count_rejected() {
        let q = Rationals;
        let c3 = Group::cyclic(3).unwrap();
        assert!(Filter::<Rationals>::new(c3, vec![q.one(); 4]).is_err());
    }
}
