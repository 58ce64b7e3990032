//! Coefficient rings as explicit ring objects: exact rationals, prime
//! fields, and dual numbers for forward-mode differentiation.
//!
//! Operations take the ring as a value (rather than living on the element
//! type) so the same generic code runs over `Q`, several `F_p`, and
//! `R[eps]/(eps^2)` without trait gymnastics on the elements themselves.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;

use crate::error::Error;
use crate::Result;

/// Default coefficient bound for sampled points: integers in `[-B, B]`.
pub const DEFAULT_COEFF_BOUND: u32 = 1000;

/// Default primes for modular rank checks, the first three above `2^20`.
pub const DEFAULT_PRIMES: [u64; 3] = [1_048_583, 1_048_589, 1_048_601];

/// A commutative ring with identity, presented as a ring object.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn from_i64(&self, v: i64) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        let mut result = self.one();
        let mut square = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &square);
            }
            e >>= 1;
            if e > 0 {
                square = self.mul(&square, &square);
            }
        }
        result
    }

    /// Display name used in reports (`Q`, `F1048583`, `Dual(Q)`).
    fn name(&self) -> String;

    /// Human-readable element rendering for reports.
    fn format(&self, a: &Self::Elem) -> String;

    /// Sample an integer point in `[-bound, bound]` lifted into the ring.
    ///
    /// All rings lift through [`Ring::from_i64`], so identically seeded
    /// draws land on the same integer point over `Q` and every `F_p`.
    fn sample<G: Rng + ?Sized>(&self, rng: &mut G, bound: u32) -> Self::Elem {
        self.from_i64(rng.gen_range(-(bound as i64)..=bound as i64))
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|binv| self.mul(a, &binv))
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// The field `Q` with arbitrary-precision rationals in lowest terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn name(&self) -> String {
        "Q".into()
    }

    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// Render `p/q` in lowest terms, omitting `/q` when the value is integral.
pub fn format_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Parse `p` or `p/q` (arbitrary precision, `q != 0`) into a rational in
/// lowest terms.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |part: &str, pos: usize| -> Result<BigInt> {
        part.parse::<BigInt>().map_err(|_| Error::Parse {
            pos,
            msg: format!("invalid integer {part:?}"),
        })
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s.trim(), 0)?)),
        Some((num, den)) => {
            let numer = parse_int(num.trim(), 0)?;
            let denom = parse_int(den.trim(), num.len() + 1)?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    pos: num.len() + 1,
                    msg: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// The prime field `F_p`, elements stored as canonical residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::Config(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// A uniformly random residue in `[0, p)`.
    pub fn sample_uniform(&self, rng: &mut (impl rand::Rng + ?Sized)) -> u64 {
        rng.gen_range(0..self.p)
    }

    /// Image of an exact rational in `F_p`; `None` when `p` divides the
    /// denominator.
    pub fn from_rational(&self, a: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let to_residue = |x: &BigInt| -> u64 {
            let r = ((x % &p) + &p) % &p;
            // r is in [0, p), always fits u64
            u64::try_from(r).unwrap()
        };
        let den = to_residue(a.denom());
        if den == 0 {
            return None;
        }
        let num = to_residue(a.numer());
        let den_inv = self.inv(&den).unwrap();
        Some(self.mul(&num, &den_inv))
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }

    fn name(&self) -> String {
        format!("F{}", self.p)
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(a, self.p - 2))
    }
}

/// Deterministic Miller-Rabin over the full `u64` range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow_mod = |base: u64, mut exp: u64| -> u64 {
        let mut acc: u128 = 1;
        let m = n as u128;
        let mut b = base as u128 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            exp >>= 1;
        }
        acc as u64
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// Dual numbers

/// A dual number `a + b*eps` with `eps^2 = 0` over a base ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual<T> {
    pub val: T,
    pub der: T,
}

/// The ring `R[eps]/(eps^2)` over a base ring `R`.
///
/// Deliberately only a [`Ring`]: dual numbers with nonzero `eps` part are
/// zero divisors, so code that requires a [`Field`] (rank, solving) cannot
/// be instantiated over duals by construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualRing<R> {
    pub base: R,
}

impl<R: Ring> DualRing<R> {
    pub fn new(base: R) -> Self {
        DualRing { base }
    }

    /// Lift a base element as a constant (zero derivative).
    pub fn constant(&self, v: R::Elem) -> Dual<R::Elem> {
        Dual { der: self.base.zero(), val: v }
    }

    /// Lift a base element as the active variable (unit derivative).
    pub fn variable(&self, v: R::Elem) -> Dual<R::Elem> {
        Dual { der: self.base.one(), val: v }
    }
}

impl<R: Ring> Ring for DualRing<R> {
    type Elem = Dual<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Dual { val: self.base.zero(), der: self.base.zero() }
    }

    fn one(&self) -> Self::Elem {
        Dual { val: self.base.one(), der: self.base.zero() }
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual {
            val: self.base.add(&a.val, &b.val),
            der: self.base.add(&a.der, &b.der),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Dual { val: self.base.neg(&a.val), der: self.base.neg(&a.der) }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual {
            val: self.base.mul(&a.val, &b.val),
            der: self.base.add(
                &self.base.mul(&a.der, &b.val),
                &self.base.mul(&a.val, &b.der),
            ),
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.val) && self.base.is_zero(&a.der)
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        Dual { val: self.base.from_i64(v), der: self.base.zero() }
    }

    fn name(&self) -> String {
        format!("Dual({})", self.base.name())
    }

    fn format(&self, a: &Self::Elem) -> String {
        format!("{} + {}*eps", self.base.format(&a.val), self.base.format(&a.der))
    }
}
