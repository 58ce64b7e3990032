//! Sparse multivariate polynomials in graded-lex term order, and filters
//! whose coefficients are polynomials — the shape of a network's output as
//! a function of its input signal.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::filter::Filter;
use crate::group::Group;
use crate::ring::Ring;
use crate::Result;

/// A monomial as an exponent vector; ordered by total degree, then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    /// The monomial `x_{i_1} ... x_{i_d}` for a multiset of variable
    /// indices.
    pub fn from_indices(nvars: usize, indices: &[usize]) -> Self {
        let mut m = Monomial::one(nvars);
        for &i in indices {
            m.0[i] += 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Relabel variables: `x_i` becomes `x_{perm[i]}`.
    pub fn relabel(&self, perm: &[usize]) -> Monomial {
        let mut out = Monomial::one(self.0.len());
        for (i, &e) in self.0.iter().enumerate() {
            out.0[perm[i]] += e;
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if wrote {
                write!(f, "*")?;
            }
            wrote = true;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Number of monomials of degree `d` in `nvars` variables,
/// `C(nvars + d - 1, d)`; `None` on overflow.
pub fn monomial_count(nvars: usize, d: u32) -> Option<u128> {
    if nvars == 0 {
        return Some(if d == 0 { 1 } else { 0 });
    }
    let mut acc: u128 = 1;
    for k in 0..d as u128 {
        acc = acc.checked_mul(nvars as u128 + k)?;
        acc /= k + 1; // product of i consecutive integers is divisible by i!
    }
    Some(acc)
}

/// All monomials of total degree `d` in `nvars` variables, ascending in the
/// monomial order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; nvars];
    fn rec(exps: &mut Vec<u16>, var: usize, remaining: u16, out: &mut Vec<Monomial>) {
        if var + 1 == exps.len() {
            exps[var] = remaining;
            out.push(Monomial(exps.clone()));
            return;
        }
        for e in 0..=remaining {
            exps[var] = e;
            rec(exps, var + 1, remaining - e, out);
        }
        exps[var] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(&mut exps, 0, d as u16, &mut out);
    out
}

/// A sparse polynomial: monomial-to-coefficient map with zero coefficients
/// pruned, so equality is structural.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R: Ring> {
    nvars: usize,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> Poly<R> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &R, nvars: usize, c: R::Elem) -> Self {
        let mut p = Poly::zero(nvars);
        if !ring.is_zero(&c) {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn variable(ring: &R, nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), ring.one());
        p
    }

    /// Build from `(monomial, coefficient)` pairs, summing duplicates and
    /// pruning zeros.
    pub fn from_terms(
        ring: &R,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, R::Elem)>,
    ) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.insert_term(ring, m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, ring: &R, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| ring.zero())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn insert_term(&mut self, ring: &R, m: Monomial, c: R::Elem) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !ring.is_zero(&c) {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = ring.add(e.get(), &c);
                if ring.is_zero(&sum) {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    /// Relabel variables by `x_i -> x_{perm[i]}`.
    pub fn relabel(&self, ring: &R, perm: &[usize]) -> Poly<R> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.insert_term(ring, m.relabel(perm), c.clone());
        }
        out
    }

    /// Map the coefficients into another ring, dropping zeros.
    pub fn map_coeffs<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let v = f(c);
            if !target.is_zero(&v) {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }
}

fn check_same_vars<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Result<()> {
    if a.nvars != b.nvars {
        return Err(Error::DimMismatch(format!(
            "polynomials in {} and {} variables",
            a.nvars, b.nvars
        )));
    }
    Ok(())
}

pub fn poly_add<R: Ring>(ring: &R, a: &Poly<R>, b: &Poly<R>) -> Result<Poly<R>> {
    check_same_vars(a, b)?;
    let mut out = a.clone();
    for (m, c) in &b.terms {
        out.insert_term(ring, m.clone(), c.clone());
    }
    Ok(out)
}

pub fn poly_scale<R: Ring>(ring: &R, c: &R::Elem, a: &Poly<R>) -> Poly<R> {
    let mut out = Poly::zero(a.nvars);
    for (m, v) in &a.terms {
        let scaled = ring.mul(c, v);
        if !ring.is_zero(&scaled) {
            out.terms.insert(m.clone(), scaled);
        }
    }
    out
}

pub fn poly_mul<R: Ring>(ring: &R, a: &Poly<R>, b: &Poly<R>) -> Result<Poly<R>> {
    check_same_vars(a, b)?;
    let mut out = Poly::zero(a.nvars);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            out.insert_term(ring, ma.mul(mb), ring.mul(ca, cb));
        }
    }
    Ok(out)
}

pub fn poly_pow<R: Ring>(ring: &R, a: &Poly<R>, e: u32) -> Poly<R> {
    let mut out = Poly::constant(ring, a.nvars, ring.one());
    for _ in 0..e {
        out = poly_mul(ring, &out, a).expect("same variable count");
    }
    out
}

pub fn poly_eval<R: Ring>(ring: &R, a: &Poly<R>, point: &[R::Elem]) -> Result<R::Elem> {
    if point.len() != a.nvars {
        return Err(Error::DimMismatch(format!(
            "polynomial in {} variables evaluated at a point of length {}",
            a.nvars,
            point.len()
        )));
    }
    let mut acc = ring.zero();
    for (m, c) in &a.terms {
        let mut term = c.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = ring.mul(&term, &ring.pow(&point[i], e as u64));
            }
        }
        acc = ring.add(&acc, &term);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Polynomial-valued filters

/// A filter on `G` whose coefficients are polynomials in `|G|` signal
/// variables `x_0, ..., x_{n-1}` — the symbolic state of a network layer.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyFilter<R: Ring> {
    group: Group,
    polys: Vec<Poly<R>>,
}

impl<R: Ring> PolyFilter<R> {
    pub fn new(group: Group, polys: Vec<Poly<R>>) -> Result<Self> {
        if polys.len() != group.order() {
            return Err(Error::DimMismatch(format!(
                "group {} has order {} but got {} polynomials",
                group,
                group.order(),
                polys.len()
            )));
        }
        if let Some(p) = polys.iter().find(|p| p.nvars() != group.order()) {
            return Err(Error::DimMismatch(format!(
                "expected polynomials in {} variables, found {}",
                group.order(),
                p.nvars()
            )));
        }
        Ok(PolyFilter { group, polys })
    }

    /// The generic signal: entry `g` is the variable `x_g`.
    pub fn generic(ring: &R, group: Group) -> Self {
        let n = group.order();
        let polys = (0..n).map(|g| Poly::variable(ring, n, g)).collect();
        PolyFilter { group, polys }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn at(&self, g: usize) -> &Poly<R> {
        &self.polys[g]
    }

    pub fn polys(&self) -> &[Poly<R>] {
        &self.polys
    }
}

/// Convolve a polynomial-valued filter with a scalar filter on the right:
/// `(P * b)(g) = sum_h P(g h^-1) b(h)`.
pub fn polyfilter_convolve<R: Ring>(
    ring: &R,
    p: &PolyFilter<R>,
    b: &Filter<R>,
) -> Result<PolyFilter<R>> {
    if p.group != *b.group() {
        return Err(Error::GroupMismatch);
    }
    let group = p.group.clone();
    let n = group.order();
    let mut out = vec![Poly::zero(n); n];
    for (h, bh) in b.coeffs().iter().enumerate() {
        if ring.is_zero(bh) {
            continue;
        }
        let h_inv = group.inv(h);
        for (g, slot) in out.iter_mut().enumerate() {
            let scaled = poly_scale(ring, bh, &p.polys[group.mul(g, h_inv)]);
            *slot = poly_add(ring, slot, &scaled)?;
        }
    }
    Ok(PolyFilter { group, polys: out })
}

/// Pointwise `r`-th power of every entry.
pub fn polyfilter_hadamard_power<R: Ring>(ring: &R, p: &PolyFilter<R>, r: u32) -> PolyFilter<R> {
    PolyFilter {
        group: p.group.clone(),
        polys: p.polys.iter().map(|q| poly_pow(ring, q, r)).collect(),
    }
}

/// Evaluate every entry at a concrete signal.
pub fn polyfilter_eval<R: Ring>(
    ring: &R,
    p: &PolyFilter<R>,
    point: &[R::Elem],
) -> Result<Filter<R>> {
    let coeffs = p
        .polys
        .iter()
        .map(|q| poly_eval(ring, q, point))
        .collect::<Result<Vec<_>>>()?;
    Filter::new(p.group.clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rationals;
    use crate::sample::rng_for;
    use rand::Rng as _;

    fn q() -> Rationals {
        Rationals
    }

    fn p_of(terms: &[(&[u16], i64)]) -> Poly<Rationals> {
        let nvars = terms[0].0.len();
        let mut p = Poly::zero(nvars);
        for (exps, c) in terms {
            p.insert_term(&q(), Monomial(exps.to_vec()), q().from_i64(*c));
        }
        p
    }

    #[test]
    fn square_of_binomial() {
        let x0 = Poly::variable(&q(), 2, 0);
        let x1 = Poly::variable(&q(), 2, 1);
        let sum = poly_add(&q(), &x0, &x1).unwrap();
        let sq = poly_pow(&q(), &sum, 2);
        assert_eq!(sq, p_of(&[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
        assert_eq!(sq.homogeneous_degree(), Some(2));
    }

    #[test]
    fn cube_of_trinomial_has_ten_monomials() {
        let vars: Vec<_> = (0..3).map(|i| Poly::variable(&q(), 3, i)).collect();
        let sum = vars
            .iter()
            .skip(1)
            .fold(vars[0].clone(), |acc, v| poly_add(&q(), &acc, v).unwrap());
        let cube = poly_pow(&q(), &sum, 3);
        assert_eq!(cube.term_count(), 10);
        assert_eq!(
            cube.coefficient(&q(), &Monomial::from_indices(3, &[0, 1, 2])),
            q().from_i64(6)
        );
        assert_eq!(
            cube.coefficient(&q(), &Monomial::from_indices(3, &[0, 0, 0])),
            q().from_i64(1)
        );
        assert_eq!(cube.homogeneous_degree(), Some(3));
    }

    #[test]
    fn graded_lex_order() {
        let m = |e: &[u16]| Monomial(e.to_vec());
        // degree dominates, then lex on exponent vectors
        assert!(m(&[0, 1]) < m(&[2, 0]));
        assert!(m(&[0, 2]) < m(&[1, 1]));
        assert!(m(&[1, 1]) < m(&[2, 0]));
        assert_eq!(m(&[1, 0]).degree(), 1);
    }

    #[test]
    fn monomial_enumeration_matches_count() {
        for (nvars, d) in [(3usize, 3u32), (2, 8), (6, 2), (1, 5)] {
            let ms = monomials_of_degree(nvars, d);
            assert_eq!(ms.len() as u128, monomial_count(nvars, d).unwrap());
            assert!(ms.iter().all(|m| m.degree() == d));
            assert!(ms.windows(2).all(|w| w[0] < w[1]), "sorted ascending");
        }
        assert_eq!(monomial_count(3, 3), Some(10));
        assert_eq!(monomial_count(2, 8), Some(9));
    }

    #[test]
    fn monomial_from_multiset() {
        let m = Monomial::from_indices(3, &[0, 0, 2]);
        assert_eq!(m.exponents(), &[2, 0, 1]);
        assert_eq!(m.to_string(), "x0^2*x2");
        assert_eq!(Monomial::one(2).to_string(), "1");
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let x0 = Poly::variable(&q(), 2, 0);
        let neg = poly_scale(&q(), &q().from_i64(-1), &x0);
        let sum = poly_add(&q(), &x0, &neg).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.term_count(), 0);
        assert_eq!(sum.degree(), None);
    }

    #[test]
    fn inhomogeneous_detected() {
        let p = p_of(&[(&[1, 0], 1), (&[1, 1], 1)]);
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn eval_agrees_with_structure() {
        // (2 x0 + 3 x1)^3 at (x0, x1) = (1, 2) is 8^3
        let p = poly_pow(
            &q(),
            &p_of(&[(&[1, 0], 2), (&[0, 1], 3)]),
            3,
        );
        let v = poly_eval(&q(), &p, &[q().from_i64(1), q().from_i64(2)]).unwrap();
        assert_eq!(v, q().from_i64(512));
    }

    #[test]
    fn eval_is_a_ring_homomorphism_at_random_points() {
        let mut rng = rng_for(13, &[]);
        for _ in 0..20 {
            let rand_poly = |rng: &mut rand_chacha::ChaCha12Rng| {
                let mut p = Poly::zero(3);
                for _ in 0..4 {
                    let exps: Vec<u16> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                    p.insert_term(&q(), Monomial(exps), q().from_i64(rng.gen_range(-5..=5)));
                }
                p
            };
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            let point: Vec<_> = (0..3).map(|_| q().from_i64(rng.gen_range(-4..=4))).collect();
            let prod = poly_mul(&q(), &a, &b).unwrap();
            let sum = poly_add(&q(), &a, &b).unwrap();
            let ea = poly_eval(&q(), &a, &point).unwrap();
            let eb = poly_eval(&q(), &b, &point).unwrap();
            assert_eq!(poly_eval(&q(), &prod, &point).unwrap(), q().mul(&ea, &eb));
            assert_eq!(poly_eval(&q(), &sum, &point).unwrap(), q().add(&ea, &eb));
        }
    }

    #[test]
    fn relabel_permutes_variables() {
        // x0^2 x1 under 0 -> 1, 1 -> 0 becomes x1^2 x0
        let p = p_of(&[(&[2, 1], 5)]);
        let r = p.relabel(&q(), &[1, 0]);
        assert_eq!(r, p_of(&[(&[1, 2], 5)]));
    }

    #[test]
    fn generic_polyfilter_convolution_on_cyclic_two() {
        let c2 = Group::cyclic(2).unwrap();
        let x = PolyFilter::generic(&q(), c2.clone());
        let theta =
            Filter::new(c2, vec![q().from_i64(3), q().from_i64(7)]).unwrap();
        let conv = polyfilter_convolve(&q(), &x, &theta).unwrap();
        // (x * theta)(0) = 3 x0 + 7 x1, (x * theta)(1) = 7 x0 + 3 x1
        assert_eq!(conv.at(0), &p_of(&[(&[1, 0], 3), (&[0, 1], 7)]));
        assert_eq!(conv.at(1), &p_of(&[(&[1, 0], 7), (&[0, 1], 3)]));
    }

    #[test]
    fn polyfilter_eval_matches_scalar_convolution() {
        let c4 = Group::cyclic(4).unwrap();
        let x = PolyFilter::generic(&q(), c4.clone());
        let theta = Filter::new(
            c4.clone(),
            [2i64, -1, 0, 5].iter().map(|&v| q().from_i64(v)).collect(),
        )
        .unwrap();
        let symbolic = polyfilter_convolve(&q(), &x, &theta).unwrap();
        let point: Vec<_> = [1i64, 2, 3, 4].iter().map(|&v| q().from_i64(v)).collect();
        let via_poly = polyfilter_eval(&q(), &symbolic, &point).unwrap();
        let signal = Filter::new(c4, point).unwrap();
        let direct = crate::filter::convolve(&q(), &signal, &theta).unwrap();
        assert_eq!(via_poly, direct);
    }

    #[test]
    fn polyfilter_power_is_pointwise() {
        let c2 = Group::cyclic(2).unwrap();
        let x = PolyFilter::generic(&q(), c2.clone());
        let theta = Filter::new(c2, vec![q().from_i64(1), q().from_i64(1)]).unwrap();
        let conv = polyfilter_convolve(&q(), &x, &theta).unwrap();
        let sq = polyfilter_hadamard_power(&q(), &conv, 2);
        // both entries are (x0 + x1)^2
        assert_eq!(sq.at(0), &p_of(&[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
        assert_eq!(sq.at(0), sq.at(1));
    }

    #[test]
    fn polyfilter_shape_checks() {
        let c2 = Group::cyclic(2).unwrap();
        let c3 = Group::cyclic(3).unwrap();
        assert!(PolyFilter::<Rationals>::new(c2.clone(), vec![Poly::zero(2); 3]).is_err());
        assert!(PolyFilter::<Rationals>::new(c2.clone(), vec![Poly::zero(3); 2]).is_err());
        let x2 = PolyFilter::generic(&q(), c2);
        let theta3 =
            Filter::new(c3, vec![q().one(), q().one(), q().one()]).unwrap();
        assert!(polyfilter_convolve(&q(), &x2, &theta3).is_err());
    }
}
