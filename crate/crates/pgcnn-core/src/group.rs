//! Finite groups as explicit multiplication tables, plus implicit power
//! groups `G^m` addressed by mixed-radix index arithmetic.
//!
//! Every group fixes an element order with the identity at index 0; all
//! algebra downstream (filters, circulant matrices, Jacobian row/column
//! layouts) is expressed in terms of these indices.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::Result;

/// Order above which constructor-time associativity is sampled instead of
/// checked exhaustively.
const EXHAUSTIVE_CHECK_LIMIT: usize = 64;

/// Largest symmetric group we materialize (6! = 720).
const MAX_SYMMETRIC: usize = 6;

/// Default cap on the order of a power group view.
pub const DEFAULT_POWER_BUDGET: u128 = 1 << 20;

#[derive(Debug)]
enum GroupKind {
    /// Explicit Cayley table, row-major `n*n`, entry `(i, j) = g_i g_j`.
    Table { cayley: Vec<u32>, inverse: Vec<u32> },
    /// `base^copies` addressed by mixed-radix arithmetic; never materialized.
    Power { base: Group, copies: u32 },
}

#[derive(Debug)]
struct GroupInner {
    order: usize,
    label: String,
    kind: GroupKind,
    /// Direct factors when the group was built as a product (tuple indexing
    /// is row-major over these factors).
    factors: Option<Vec<Group>>,
}

/// A finite group with a fixed element order; index 0 is the identity.
///
/// Cheap to clone and safe to share across threads. Equality is structural:
/// two groups are equal when they have the same multiplication table with
/// the same element order (power views compare base and exponent).
#[derive(Clone, Debug)]
pub struct Group {
    inner: Arc<GroupInner>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        if self.inner.order != other.inner.order {
            return false;
        }
        match (&self.inner.kind, &other.inner.kind) {
            (GroupKind::Table { cayley: a, .. }, GroupKind::Table { cayley: b, .. }) => a == b,
            (
                GroupKind::Power { base: a, copies: ca },
                GroupKind::Power { base: b, copies: cb },
            ) => ca == cb && a == b,
            _ => false,
        }
    }
}

impl Eq for Group {}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.inner.label)
    }
}

impl Group {
    fn from_table(label: String, cayley: Vec<u32>, factors: Option<Vec<Group>>) -> Result<Self> {
        let n = (cayley.len() as f64).sqrt() as usize;
        debug_assert_eq!(n * n, cayley.len());
        let inverse = validate_table(n, &cayley)?;
        Ok(Group {
            inner: Arc::new(GroupInner {
                order: n,
                label,
                kind: GroupKind::Table { cayley, inverse },
                factors,
            }),
        })
    }

    /// The cyclic group `Z_n` with `cayley(i, j) = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        let mut cayley = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                cayley[i * n + j] = ((i + j) % n) as u32;
            }
        }
        Group::from_table(format!("C{n}"), cayley, None)
    }

    /// The symmetric group `S_k`, permutations enumerated in lexicographic
    /// order of one-line notation (identity first), with composition
    /// `(s t)(x) = s(t(x))`.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyGroup);
        }
        if k > MAX_SYMMETRIC {
            return Err(Error::SizeLimit {
                what: "symmetric group degree",
                requested: k as u128,
                limit: MAX_SYMMETRIC as u128,
            });
        }
        let perms = lex_permutations(k);
        let n = perms.len();
        let index: HashMap<&[u8], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut cayley = vec![0u32; n * n];
        let mut composed = vec![0u8; k];
        for (i, s) in perms.iter().enumerate() {
            for (j, t) in perms.iter().enumerate() {
                for x in 0..k {
                    composed[x] = s[t[x] as usize];
                }
                cayley[i * n + j] = index[composed.as_slice()] as u32;
            }
        }
        Group::from_table(format!("S{k}"), cayley, None)
    }

    /// The dihedral group of order `2k`: rotations first (indices `0..k`),
    /// then reflections (`k..2k`), with index `a*k + b` for the element
    /// `s^a r^b`.
    pub fn dihedral(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::SizeLimit {
                what: "dihedral parameter",
                requested: k as u128,
                limit: 1,
            });
        }
        let n = 2 * k;
        let mut cayley = vec![0u32; n * n];
        for a in 0..2usize {
            for b in 0..k {
                for c in 0..2usize {
                    for d in 0..k {
                        // (s^a r^b)(s^c r^d) = s^(a xor c) r^(±b + d), sign
                        // flips when passing r^b through s^c.
                        let e = (a + c) % 2;
                        let rot = if c == 1 { (k - b) % k } else { b };
                        let f = (rot + d) % k;
                        cayley[(a * k + b) * n + (c * k + d)] = (e * k + f) as u32;
                    }
                }
            }
        }
        Group::from_table(format!("D{k}"), cayley, None)
    }

    /// Direct product with row-major tuple indexing:
    /// `index(g, h) = index(g) * |H| + index(h)`.
    pub fn direct_product(g: &Group, h: &Group) -> Result<Self> {
        let (ng, nh) = (g.order(), h.order());
        let n = ng
            .checked_mul(nh)
            .filter(|&n| (n as u128) <= DEFAULT_POWER_BUDGET)
            .ok_or(Error::SizeLimit {
                what: "direct product order",
                requested: ng as u128 * nh as u128,
                limit: DEFAULT_POWER_BUDGET,
            })?;
        let mut cayley = vec![0u32; n * n];
        for a in 0..ng {
            for b in 0..nh {
                for c in 0..ng {
                    for d in 0..nh {
                        let prod = g.mul(a, c) * nh + h.mul(b, d);
                        cayley[(a * nh + b) * n + (c * nh + d)] = prod as u32;
                    }
                }
            }
        }
        Group::from_table(
            format!("{}x{}", g.inner.label, h.inner.label),
            cayley,
            Some(vec![g.clone(), h.clone()]),
        )
    }

    /// The power group `G^m` as an index-arithmetic view with mixed-radix
    /// indexing `index(h_1, ..., h_m) = sum index(h_t) * n^(m-t)`.
    ///
    /// Powers of powers flatten: `(G^a)^b = G^(a*b)` with identical indexing,
    /// and `m = 1` returns the base group itself.
    pub fn power(g: &Group, m: usize, budget: u128) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyGroup);
        }
        let (base, inner_copies) = g.power_base();
        let copies = inner_copies * m;
        let order = (base.order() as u128)
            .checked_pow(copies as u32)
            .filter(|&o| o <= budget)
            .ok_or(Error::Budget {
                what: "power group order",
                requested: u128::MAX,
                budget,
            })?;
        if order > budget {
            return Err(Error::Budget {
                what: "power group order",
                requested: order,
                budget,
            });
        }
        if copies == 1 {
            return Ok(base);
        }
        Ok(Group {
            inner: Arc::new(GroupInner {
                order: order as usize,
                label: format!("{}^{}", base.inner.label, copies),
                kind: GroupKind::Power { base, copies: copies as u32 },
                factors: None,
            }),
        })
    }

    /// Convenience wrapper for [`Group::power`] with the default budget.
    pub fn power_default(g: &Group, m: usize) -> Result<Self> {
        Group::power(g, m, DEFAULT_POWER_BUDGET)
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub const fn identity(&self) -> usize {
        0
    }

    /// Product `g_i g_j` as an index.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.inner.kind {
            GroupKind::Table { cayley, .. } => cayley[i * self.inner.order + j] as usize,
            GroupKind::Power { base, copies } => {
                let n = base.order();
                let m = *copies as usize;
                let mut out = 0usize;
                let mut shift = self.inner.order;
                let (mut a, mut b) = (i, j);
                for _ in 0..m {
                    shift /= n;
                    let (da, db) = (a / shift, b / shift);
                    a -= da * shift;
                    b -= db * shift;
                    out += base.mul(da, db) * shift;
                }
                out
            }
        }
    }

    /// Inverse of `g_i` as an index.
    pub fn inv(&self, i: usize) -> usize {
        match &self.inner.kind {
            GroupKind::Table { inverse, .. } => inverse[i] as usize,
            GroupKind::Power { base, copies } => {
                let n = base.order();
                let m = *copies as usize;
                let mut out = 0usize;
                let mut shift = self.inner.order;
                let mut a = i;
                for _ in 0..m {
                    shift /= n;
                    let da = a / shift;
                    a -= da * shift;
                    out += base.inv(da) * shift;
                }
                out
            }
        }
    }

    /// Base group and exponent of this group viewed as a power: a table
    /// group is its own base with exponent 1.
    pub fn power_base(&self) -> (Group, usize) {
        match &self.inner.kind {
            GroupKind::Table { .. } => (self.clone(), 1),
            GroupKind::Power { base, copies } => (base.clone(), *copies as usize),
        }
    }

    /// True when the group is a power view `B^m` with `m >= 2`.
    pub fn is_power(&self) -> bool {
        matches!(self.inner.kind, GroupKind::Power { .. })
    }

    /// Direct factors recorded at construction, if any.
    pub fn factors(&self) -> Option<&[Group]> {
        self.inner.factors.as_deref()
    }

    /// Index of the diagonal element `(g, ..., g)` (`m` copies) in `G^m`.
    ///
    /// Also usable with `m = 1`, where it is the identity map.
    pub fn diagonal_index(&self, m: usize, g: usize) -> usize {
        let n = self.order();
        let mut out = 0usize;
        for _ in 0..m {
            out = out * n + g;
        }
        out
    }

    /// Decompose an index of `G^m` into its `m` component indices over the
    /// base group of order `n`.
    pub fn digits_of(index: usize, n: usize, m: usize) -> Vec<usize> {
        let mut digits = vec![0usize; m];
        let mut rest = index;
        for t in (0..m).rev() {
            digits[t] = rest % n;
            rest /= n;
        }
        digits
    }

    /// Recompose component indices into a mixed-radix index of `G^m`.
    pub fn index_of(digits: &[usize], n: usize) -> usize {
        digits.iter().fold(0usize, |acc, &d| acc * n + d)
    }

    /// Parse a group spec: `atom ("x" atom)*` with atoms `C<n>`, `S<n>`,
    /// `D<n>`, e.g. `"C2xC3"` or `"S3"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bytes = spec.as_bytes();
        let mut pos = 0usize;
        let mut current = parse_atom(bytes, &mut pos)?;
        while pos < bytes.len() {
            if bytes[pos] != b'x' {
                return Err(Error::Parse {
                    pos,
                    msg: format!("expected 'x' or end of spec, found {:?}", bytes[pos] as char),
                });
            }
            pos += 1;
            let next = parse_atom(bytes, &mut pos)?;
            current = Group::direct_product(&current, &next)?;
        }
        Ok(current)
    }
}

fn parse_atom(bytes: &[u8], pos: &mut usize) -> Result<Group> {
    let start = *pos;
    let kind = *bytes.get(*pos).ok_or(Error::Parse {
        pos: start,
        msg: "expected a group atom (C<n>, S<n>, or D<n>)".into(),
    })?;
    *pos += 1;
    let digits_start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if digits_start == *pos {
        return Err(Error::Parse {
            pos: digits_start,
            msg: "expected a number after the group letter".into(),
        });
    }
    let n: usize = std::str::from_utf8(&bytes[digits_start..*pos])
        .unwrap()
        .parse()
        .map_err(|_| Error::Parse {
            pos: digits_start,
            msg: "number too large".into(),
        })?;
    match kind {
        b'C' => Group::cyclic(n),
        b'S' => Group::symmetric(n),
        b'D' => Group::dihedral(n),
        other => Err(Error::Parse {
            pos: start,
            msg: format!("unknown group letter {:?}", other as char),
        }),
    }
}

/// Check the Latin-square, identity, inverse, and associativity axioms and
/// return the inverse table. Associativity is exhaustive for orders up to
/// [`EXHAUSTIVE_CHECK_LIMIT`] and randomized-sampled above.
fn validate_table(n: usize, cayley: &[u32]) -> Result<Vec<u32>> {
    let fail = |msg: &str| Error::Config(format!("invalid multiplication table: {msg}"));
    if n == 0 {
        return Err(Error::EmptyGroup);
    }
    for j in 0..n {
        if cayley[j] as usize != j {
            return Err(fail("index 0 is not a left identity"));
        }
    }
    for i in 0..n {
        if cayley[i * n] as usize != i {
            return Err(fail("index 0 is not a right identity"));
        }
    }
    let mut seen = vec![false; n];
    for i in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for j in 0..n {
            let v = cayley[i * n + j] as usize;
            if v >= n || seen[v] {
                return Err(fail("a row is not a permutation"));
            }
            seen[v] = true;
        }
    }
    for j in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for i in 0..n {
            let v = cayley[i * n + j] as usize;
            if seen[v] {
                return Err(fail("a column is not a permutation"));
            }
            seen[v] = true;
        }
    }
    let mut inverse = vec![u32::MAX; n];
    for i in 0..n {
        for j in 0..n {
            if cayley[i * n + j] == 0 {
                if cayley[j * n + i] != 0 {
                    return Err(fail("left and right inverses disagree"));
                }
                inverse[i] = j as u32;
            }
        }
    }
    if inverse.iter().any(|&v| v == u32::MAX) {
        return Err(fail("an element has no inverse"));
    }
    let assoc = |i: usize, j: usize, k: usize| {
        let ij = cayley[i * n + j] as usize;
        let jk = cayley[j * n + k] as usize;
        cayley[ij * n + k] == cayley[i * n + jk]
    };
    if n <= EXHAUSTIVE_CHECK_LIMIT {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !assoc(i, j, k) {
                        return Err(fail("associativity fails"));
                    }
                }
            }
        }
    } else {
        // Deterministic LCG sample; full verification is quadratic-cubic in n.
        let mut state = 0x9E3779B97F4A7C15u64;
        for _ in 0..20_000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let i = (state >> 33) as usize % n;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % n;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let k = (state >> 33) as usize % n;
            if !assoc(i, j, k) {
                return Err(fail("associativity fails"));
            }
        }
    }
    Ok(inverse)
}

/// All permutations of `0..k` in lexicographic order of one-line notation.
fn lex_permutations(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..k as u8).collect();
    loop {
        out.push(current.clone());
        // next_permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_three_matches_addition_mod_three() {
        let g = Group::cyclic(3).unwrap();
        assert_eq!(g.mul(1, 2), 0);
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn cyclic_one_is_trivial() {
        let g = Group::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
    }

    #[test]
    fn cyclic_four_inverse() {
        let g = Group::cyclic(4).unwrap();
        assert_eq!(g.inv(3), 1);
    }

    #[test]
    fn cyclic_zero_rejected() {
        assert!(matches!(Group::cyclic(0), Err(Error::EmptyGroup)));
    }

    #[test]
    fn direct_product_row_major_indexing() {
        let g = Group::direct_product(&Group::cyclic(2).unwrap(), &Group::cyclic(3).unwrap())
            .unwrap();
        assert_eq!(g.order(), 6);
        // element (1, 2) has index 1*3 + 2 = 5
        // (1,1)*(1,2) = (0,0)
        let i_11 = 1 * 3 + 1;
        let i_12 = 1 * 3 + 2;
        assert_eq!(g.mul(i_11, i_12), 0);
        assert_eq!(g.factors().map(|f| f.len()), Some(2));
    }

    #[test]
    fn klein_four_group_is_self_inverse() {
        let g = Group::direct_product(&Group::cyclic(2).unwrap(), &Group::cyclic(2).unwrap())
            .unwrap();
        for i in 0..4 {
            assert_eq!(g.inv(i), i);
            assert_eq!(g.mul(i, i), 0);
        }
    }

    #[test]
    fn symmetric_three_is_nonabelian() {
        let g = Group::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        let noncommuting = (0..6).any(|i| (0..6).any(|j| g.mul(i, j) != g.mul(j, i)));
        assert!(noncommuting);
    }

    #[test]
    fn symmetric_one_is_trivial() {
        assert_eq!(Group::symmetric(1).unwrap().order(), 1);
    }

    #[test]
    fn symmetric_two_matches_cyclic_two() {
        let s2 = Group::symmetric(2).unwrap();
        let c2 = Group::cyclic(2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(s2.mul(i, j), c2.mul(i, j));
            }
        }
    }

    #[test]
    fn symmetric_seven_rejected() {
        assert!(matches!(Group::symmetric(7), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn dihedral_three_isomorphic_to_symmetric_three() {
        // Explicit relabeling: r -> (0 1 2) = [1,2,0], s -> transposition
        // swapping 1,2 = [0,2,1]; extend multiplicatively over s^a r^b.
        let d3 = Group::dihedral(3).unwrap();
        let s3 = Group::symmetric(3).unwrap();
        let perms = lex_permutations(3);
        let index_of_perm = |p: &[u8]| perms.iter().position(|q| q == p).unwrap();
        let r = [1u8, 2, 0];
        let s = [0u8, 2, 1];
        let compose = |a: &[u8], b: &[u8]| -> Vec<u8> {
            (0..3).map(|x| a[b[x] as usize]).collect()
        };
        let mut map = vec![0usize; 6];
        for a in 0..2 {
            for b in 0..3 {
                let mut p: Vec<u8> = vec![0, 1, 2];
                for _ in 0..b {
                    p = compose(&p, &r);
                }
                if a == 1 {
                    p = compose(&s, &p);
                }
                map[a * 3 + b] = index_of_perm(&p);
            }
        }
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(map[d3.mul(i, j)], s3.mul(map[i], map[j]));
            }
        }
    }

    #[test]
    fn dihedral_two_isomorphic_to_klein_four() {
        let d2 = Group::dihedral(2).unwrap();
        assert_eq!(d2.order(), 4);
        for i in 0..4 {
            assert_eq!(d2.inv(i), i);
        }
    }

    #[test]
    fn dihedral_four_center_has_two_elements() {
        let d4 = Group::dihedral(4).unwrap();
        let center: Vec<usize> = (0..8)
            .filter(|&z| (0..8).all(|g| d4.mul(z, g) == d4.mul(g, z)))
            .collect();
        assert_eq!(center.len(), 2);
        assert!(center.contains(&0));
    }

    #[test]
    fn dihedral_one_rejected() {
        assert!(Group::dihedral(1).is_err());
    }

    #[test]
    fn power_group_mixed_radix() {
        let c2 = Group::cyclic(2).unwrap();
        let g = Group::power_default(&c2, 2).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(c2.diagonal_index(2, 1), 3);
        // (a,b)(c,d) = (ac, bd): (1,0)*(1,1) = (0,1)
        assert_eq!(g.mul(2, 3), 1);
    }

    #[test]
    fn power_group_of_order_81() {
        let c3 = Group::cyclic(3).unwrap();
        let g = Group::power_default(&c3, 4).unwrap();
        assert_eq!(g.order(), 81);
    }

    #[test]
    fn power_of_power_flattens() {
        let c2 = Group::cyclic(2).unwrap();
        let g2 = Group::power_default(&c2, 2).unwrap();
        let g4 = Group::power_default(&g2, 2).unwrap();
        assert_eq!(g4, Group::power_default(&c2, 4).unwrap());
        assert_eq!(g4.order(), 16);
    }

    #[test]
    fn power_budget_enforced() {
        let c2 = Group::cyclic(2).unwrap();
        assert!(matches!(Group::power(&c2, 30, 1 << 20), Err(Error::Budget { .. })));
    }

    #[test]
    fn power_one_returns_base() {
        let c3 = Group::cyclic(3).unwrap();
        assert_eq!(Group::power_default(&c3, 1).unwrap(), c3);
    }

    #[test]
    fn diagonal_embedding() {
        let c2 = Group::cyclic(2).unwrap();
        assert_eq!(c2.diagonal_index(3, 1), 7);
        let s3 = Group::symmetric(3).unwrap();
        assert_eq!(s3.diagonal_index(4, 0), 0);
    }

    #[test]
    fn diagonal_image_is_a_subgroup() {
        let c3 = Group::cyclic(3).unwrap();
        let g2 = Group::power_default(&c3, 2).unwrap();
        let diag: Vec<usize> = (0..3).map(|g| c3.diagonal_index(2, g)).collect();
        for &a in &diag {
            assert!(diag.contains(&g2.inv(a)));
            for &b in &diag {
                assert!(diag.contains(&g2.mul(a, b)));
            }
        }
    }

    #[test]
    fn tuple_index_round_trip() {
        let c3 = Group::cyclic(3).unwrap();
        let g = Group::power_default(&c3, 4).unwrap();
        for idx in 0..g.order() {
            let digits = Group::digits_of(idx, 3, 4);
            assert_eq!(Group::index_of(&digits, 3), idx);
        }
    }

    #[test]
    fn parse_group_specs() {
        let g = Group::parse("C2xC3").unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(Group::parse("S3").unwrap().order(), 6);
        assert_eq!(Group::parse("C1").unwrap().order(), 1);
        assert_eq!(Group::parse("D4").unwrap().order(), 8);
        assert_eq!(Group::parse("C2xC2xC2").unwrap().order(), 8);
    }

    #[test]
    fn parse_errors_carry_position() {
        match Group::parse("C2yC3") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(Group::parse("Q8").is_err());
        assert!(Group::parse("C").is_err());
        assert!(Group::parse("").is_err());
    }

    #[test]
    fn constructors_satisfy_group_axioms() {
        // validate_table covers Latin square, identity, inverses, and
        // associativity; constructing is itself the assertion.
        for g in [
            Group::cyclic(6).unwrap(),
            Group::symmetric(4).unwrap(),
            Group::dihedral(5).unwrap(),
            Group::parse("C2xC3").unwrap(),
        ] {
            assert_eq!(g.mul(0, g.order() - 1), g.order() - 1);
        }
    }

    #[test]
    fn cyclic_groups_are_abelian() {
        for n in 1..=8 {
            let g = Group::cyclic(n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(g.mul(i, j), g.mul(j, i));
                }
            }
        }
    }
}
