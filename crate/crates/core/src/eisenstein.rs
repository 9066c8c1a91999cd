//! Exact arithmetic in the ring ℤ[ω] of Eisenstein integers, where
//! ω² + ω + 1 = 0, together with the prime normalization used by the ℓ = 3
//! symbol and the enumeration of normalized primes up to a bound.
//!
//! An element is stored as `a + b·ω` with arbitrary-precision coefficients.
//! The norm is `N(a + bω) = a² − ab + b²`; the six units are `±1, ±ω, ±ω²`;
//! `√−3` is the element `1 + 2ω` and `3√−3 = 3 + 6ω` (norm 27).
//!
//! A rational prime `q ≡ 2 mod 3` stays prime (is inert) in ℤ[ω]. For the
//! ℓ = 3 theory a prime must additionally satisfy `N(p) ≡ 1 mod 9` and be
//! the associate congruent to `1 mod 3√−3`; [`normalize_prime_l3`] finds
//! that associate by exhaustive test over all six, never by assuming the
//! answer's shape.

use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// An Eisenstein integer `a + b·ω` with `ω² + ω + 1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EisensteinInt {
    /// Coefficient of 1.
    pub a: BigInt,
    /// Coefficient of ω.
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    /// The rational integer `a` embedded as `a + 0·ω`.
    pub fn from_int(a: impl Into<BigInt>) -> Self {
        Self::new(a, 0)
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// The generator ω itself.
    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    /// `√−3 = 1 + 2ω` (its square is −3).
    pub fn sqrt_minus_three() -> Self {
        Self::new(1, 2)
    }

    /// `3√−3 = 3 + 6ω`, the modulus of the ℓ = 3 prime normalization.
    pub fn three_sqrt_minus_three() -> Self {
        Self::new(3, 6)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `N(a + bω) = a² − ab + b²`, always ≥ 0, zero only at zero.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Complex conjugate: ω ↦ ω² = −1 − ω, so `a + bω ↦ (a − b) − bω`.
    pub fn conj(&self) -> Self {
        Self { a: &self.a - &self.b, b: -self.b.clone() }
    }

    /// The six unit multiples `u·self` for `u ∈ {1, ω, ω², −1, −ω, −ω²}`.
    pub fn unit_associates(&self) -> [Self; 6] {
        let w = Self::omega();
        let a1 = self.clone();
        let a2 = &a1 * &w;
        let a3 = &a2 * &w;
        [a1.clone(), a2.clone(), a3.clone(), -a1, -a2, -a3]
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·ω", self.a, self.b)
    }
}

impl Add for &EisensteinInt {
    type Output = EisensteinInt;
    fn add(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &EisensteinInt {
    type Output = EisensteinInt;
    fn sub(self, rhs: &EisensteinInt) -> EisensteinInt {
        EisensteinInt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &EisensteinInt {
    type Output = EisensteinInt;
    /// `(a0 + b0ω)(a1 + b1ω) = a0a1 − b0b1 + (a0b1 + b0a1 − b0b1)·ω`
    /// using `ω² = −1 − ω`.
    fn mul(self, rhs: &EisensteinInt) -> EisensteinInt {
        let bb = &self.b * &rhs.b;
        EisensteinInt {
            a: &self.a * &rhs.a - &bb,
            b: &self.a * &rhs.b + &self.b * &rhs.a - &bb,
        }
    }
}

impl Neg for EisensteinInt {
    type Output = EisensteinInt;
    fn neg(self) -> EisensteinInt {
        EisensteinInt { a: -self.a, b: -self.b }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for EisensteinInt {
            type Output = EisensteinInt;
            fn $method(self, rhs: EisensteinInt) -> EisensteinInt {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EisensteinError {
    #[error("division by zero in Z[w]")]
    DivisorZero,
}

/// Exact divisibility in ℤ[ω]: does `d · u = e` have a solution `u ∈ ℤ[ω]`?
///
/// Decided by exact division: `u = e · conj(d) / N(d)` lies in ℤ[ω] iff both
/// coordinates of `e · conj(d)` are divisible by `N(d)`.
pub fn eis_divides(d: &EisensteinInt, e: &EisensteinInt) -> Result<bool, EisensteinError> {
    if d.is_zero() {
        return Err(EisensteinError::DivisorZero);
    }
    let n = d.norm();
    let num = e * &d.conj();
    Ok((&num.a % &n).is_zero() && (&num.b % &n).is_zero())
}

/// Convenience alias matching the reading "norm of e".
pub fn eis_norm(e: &EisensteinInt) -> BigInt {
    e.norm()
}

/// A rational prime normalized for the ℓ = 3 theory.
///
/// `q` is an inert rational prime (`q ≡ 2 mod 3`) with `q² ≡ 1 mod 9`, and
/// `p` is the unique associate of `q` in ℤ[ω] congruent to `1 mod 3√−3`.
/// That associate is always a rational integer (`±q`); for every accepted
/// `q` it works out to `−q`, but the constructor proves uniqueness over all
/// six associates instead of assuming it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedPrimeL3 {
    /// The normalized prime element (negative in all supported data).
    pub p: i64,
    /// `|p|`, a rational prime.
    pub q: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} = 1 mod 3 splits in Z[w] (not inert)")]
    NotInert(u64),
    #[error("norm of {0} is not 1 mod 9")]
    NormNotOneMod9(u64),
    #[error("{0} exceeds the deterministic primality range (< 3.3e18)")]
    InputTooLarge(u64),
}

/// Largest input for which the fixed Miller–Rabin witness set is proven
/// deterministic.
const MILLER_RABIN_LIMIT: u64 = 3_317_044_064_679_887_385;

/// Deterministic Miller–Rabin for `n < 3.3·10¹⁸` (witnesses 2..37).
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
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Normalize a rational prime for the ℓ = 3 theory.
///
/// Accepts a positive prime `q`, requires it inert (`q ≡ 2 mod 3`) with
/// `q² ≡ 1 mod 9`, and returns the unique associate `p ∈ {±ωᵐ·q}` with
/// `3√−3 | (p − 1)`, found by testing all six associates.
pub fn normalize_prime_l3(q: u64) -> Result<NormalizedPrimeL3, NormalizeError> {
    if q > MILLER_RABIN_LIMIT {
        return Err(NormalizeError::InputTooLarge(q));
    }
    if !is_prime_u64(q) {
        return Err(NormalizeError::NotPrime(q));
    }
    if q % 3 != 2 {
        return Err(NormalizeError::NotInert(q));
    }
    if (q % 9) * (q % 9) % 9 != 1 {
        return Err(NormalizeError::NormNotOneMod9(q));
    }
    let modulus = EisensteinInt::three_sqrt_minus_three();
    let one = EisensteinInt::one();
    let mut found: Option<EisensteinInt> = None;
    for cand in EisensteinInt::from_int(q).unit_associates() {
        let delta = &cand - &one;
        if eis_divides(&modulus, &delta).expect("modulus is nonzero") {
            assert!(
                found.is_none(),
                "associate normalization must select a unique element for q = {q}"
            );
            found = Some(cand);
        }
    }
    let p = found.unwrap_or_else(|| {
        unreachable!("an inert prime with norm 1 mod 9 always has a normalized associate (q = {q})")
    });
    assert!(p.b.is_zero(), "the normalized associate of a rational prime is rational (q = {q})");
    let p_int = i64::try_from(&p.a).expect("|p| = q < 2^63");
    Ok(NormalizedPrimeL3 { p: p_int, q })
}

/// All normalized primes `p` with `1 ≤ −p ≤ bound`, ascending by `|p|`.
pub fn enumerate_prime_list(bound: u64) -> Vec<NormalizedPrimeL3> {
    (2..=bound).filter_map(|q| normalize_prime_l3(q).ok()).collect()
}
