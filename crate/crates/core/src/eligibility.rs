//! Hypothesis checking for prime pairs and triples.
//!
//! * ℓ = 2: each prime must be ≡ 1 mod 4 and every ordered pair must have
//!   Legendre symbol +1.
//! * ℓ = 3: each prime must normalize (inert, norm ≡ 1 mod 9, the
//!   distinguished associate mod 3√−3) and every ordered pair must have
//!   trivial cubic character.
//!
//! Failures are collected exhaustively — a scan over a prime range gets the
//! full list of violated conditions, not just the first.

use crate::eisenstein::{normalize_prime_l3, EisensteinInt, NormalizeError};
use crate::residue::{cubic_character, legendre};
use std::fmt;
use thiserror::Error;

/// One verified (or failed) hypothesis, by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub ok: bool,
}

/// A single violated condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotPrime(i64),
    InputTooLarge(i64),
    /// ℓ = 2 requires positive primes ≡ 1 mod 4.
    NotOneMod4(i64),
    /// ℓ = 2 requires `(a/b) = +1` for every ordered pair.
    LegendreNotOne(i64, i64),
    /// ℓ = 3 requires inert primes (`q ≡ 2 mod 3`).
    NotInert(i64),
    /// ℓ = 3 requires `N(p) ≡ 1 mod 9`.
    NormNotOneMod9(i64),
    /// ℓ = 3 with a negative input that is not the normalized associate.
    NotNormalized(i64),
    /// ℓ = 3 requires trivial cubic character for every ordered pair.
    CubicCharacterNontrivial(i64, i64),
    /// The primes of a pair/triple must be pairwise distinct.
    NotDistinct,
    /// Only ℓ ∈ {2, 3} are defined.
    UnsupportedEll(u8),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPrime(p) => write!(f, "NotPrime({p})"),
            Violation::InputTooLarge(p) => write!(f, "InputTooLarge({p})"),
            Violation::NotOneMod4(p) => write!(f, "NotOneMod4({p})"),
            Violation::LegendreNotOne(a, b) => write!(f, "LegendreNotOne({a},{b})"),
            Violation::NotInert(p) => write!(f, "NotInert({p})"),
            Violation::NormNotOneMod9(p) => write!(f, "NormNotOneMod9({p})"),
            Violation::NotNormalized(p) => write!(f, "NotNormalized({p})"),
            Violation::CubicCharacterNontrivial(a, b) => {
                write!(f, "CubicCharacterNontrivial({a},{b})")
            }
            Violation::NotDistinct => write!(f, "NotDistinct"),
            Violation::UnsupportedEll(l) => write!(f, "UnsupportedEll({l})"),
        }
    }
}

/// The error carrying every violated condition name.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("ineligible triple: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))]
pub struct IneligibleTriple {
    pub violations: Vec<Violation>,
}

/// A verified pair `(p1, p2)`: the hypotheses restricted to the first two
/// primes. For ℓ = 3 the stored values are normalized (negative).
#[derive(Clone, Debug)]
pub struct PairContext {
    pub ell: u8,
    pub p1: i64,
    pub p2: i64,
    pub checks: Vec<CheckRecord>,
}

/// A fully verified triple. For ℓ = 3 the stored values are normalized.
#[derive(Clone, Debug)]
pub struct TripleContext {
    pub ell: u8,
    pub p1: i64,
    pub p2: i64,
    pub p3: i64,
    pub checks: Vec<CheckRecord>,
}

/// Validate one ℓ = 3 prime, accepting either a positive rational prime
/// (normalized internally) or an already-normalized negative value
/// (idempotent). Returns the normalized value.
fn normalize_l3_input(p: i64, violations: &mut Vec<Violation>) -> Option<i64> {
    let q = p.unsigned_abs();
    match normalize_prime_l3(q) {
        Ok(np) => {
            if p < 0 && p != np.p {
                violations.push(Violation::NotNormalized(p));
                None
            } else {
                Some(np.p)
            }
        }
        Err(NormalizeError::NotPrime(_)) => {
            violations.push(Violation::NotPrime(p));
            None
        }
        Err(NormalizeError::NotInert(_)) => {
            violations.push(Violation::NotInert(p));
            None
        }
        Err(NormalizeError::NormNotOneMod9(_)) => {
            violations.push(Violation::NormNotOneMod9(p));
            None
        }
        Err(NormalizeError::InputTooLarge(_)) => {
            violations.push(Violation::InputTooLarge(p));
            None
        }
    }
}

fn check_l2_prime(p: i64, violations: &mut Vec<Violation>) -> bool {
    if p <= 0 || !crate::eisenstein::is_prime_u64(p.unsigned_abs()) {
        violations.push(Violation::NotPrime(p));
        return false;
    }
    if p % 4 != 1 {
        violations.push(Violation::NotOneMod4(p));
        return false;
    }
    true
}

fn record(checks: &mut Vec<CheckRecord>, name: impl Into<String>, ok: bool) {
    checks.push(CheckRecord { name: name.into(), ok });
}

/// Check every ordered-pair condition among the given (validated) primes
/// and record the outcomes.
fn check_pairwise(
    ell: u8,
    primes: &[i64],
    checks: &mut Vec<CheckRecord>,
    violations: &mut Vec<Violation>,
) {
    for (i, &a) in primes.iter().enumerate() {
        for (j, &b) in primes.iter().enumerate() {
            if i == j {
                continue;
            }
            let ok = if ell == 2 {
                legendre(a, b as u64) == 1
            } else {
                let np = normalize_prime_l3(b.unsigned_abs()).expect("validated above");
                cubic_character(&EisensteinInt::from_int(a), &np) == Ok(0)
            };
            let name = if ell == 2 {
                format!("legendre({a},{b})=+1")
            } else {
                format!("cubic_character({a},{b})=0")
            };
            record(checks, name, ok);
            if !ok {
                violations.push(if ell == 2 {
                    Violation::LegendreNotOne(a, b)
                } else {
                    Violation::CubicCharacterNontrivial(a, b)
                });
            }
        }
    }
}

fn check_primes(
    ell: u8,
    raw: &[i64],
    checks: &mut Vec<CheckRecord>,
    violations: &mut Vec<Violation>,
) -> Option<Vec<i64>> {
    if ell != 2 && ell != 3 {
        violations.push(Violation::UnsupportedEll(ell));
        return None;
    }
    let mut out = Vec::with_capacity(raw.len());
    for &p in raw {
        if ell == 2 {
            let ok = check_l2_prime(p, violations);
            record(checks, format!("prime_1_mod_4({p})"), ok);
            if ok {
                out.push(p);
            }
        } else {
            let normalized = normalize_l3_input(p, violations);
            record(checks, format!("normalized_prime({p})"), normalized.is_some());
            if let Some(n) = normalized {
                out.push(n);
            }
        }
    }
    if out.len() != raw.len() {
        return None;
    }
    let distinct = {
        let mut sorted = out.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    };
    record(checks, "pairwise_distinct", distinct);
    if !distinct {
        violations.push(Violation::NotDistinct);
        return None;
    }
    Some(out)
}

/// Verify the pair hypotheses for `(p1, p2)`.
pub fn check_pair(ell: u8, p1: i64, p2: i64) -> Result<PairContext, IneligibleTriple> {
    let mut checks = Vec::new();
    let mut violations = Vec::new();
    if let Some(ps) = check_primes(ell, &[p1, p2], &mut checks, &mut violations) {
        check_pairwise(ell, &ps, &mut checks, &mut violations);
        if violations.is_empty() {
            return Ok(PairContext { ell, p1: ps[0], p2: ps[1], checks });
        }
    }
    Err(IneligibleTriple { violations })
}

/// Verify all triple hypotheses for `(p1, p2, p3)`.
pub fn check_triple(ell: u8, p1: i64, p2: i64, p3: i64) -> Result<TripleContext, IneligibleTriple> {
    let mut checks = Vec::new();
    let mut violations = Vec::new();
    if let Some(ps) = check_primes(ell, &[p1, p2, p3], &mut checks, &mut violations) {
        check_pairwise(ell, &ps, &mut checks, &mut violations);
        if violations.is_empty() {
            return Ok(TripleContext { ell, p1: ps[0], p2: ps[1], p3: ps[2], checks });
        }
    }
    Err(IneligibleTriple { violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l3_triples_from_the_supported_list_pass() {
        let ctx = check_triple(3, -17, -593, -53).unwrap();
        assert_eq!((ctx.p1, ctx.p2, ctx.p3), (-17, -593, -53));
        assert!(ctx.checks.iter().all(|c| c.ok));
    }

    #[test]
    fn l3_accepts_positive_inputs_and_normalizes() {
        let ctx = check_triple(3, 17, 593, 53).unwrap();
        assert_eq!((ctx.p1, ctx.p2, ctx.p3), (-17, -593, -53));
        // Idempotent: already-normalized input gives the same context.
        let ctx2 = check_triple(3, -17, -593, -53).unwrap();
        assert_eq!((ctx2.p1, ctx2.p2, ctx2.p3), (-17, -593, -53));
    }

    #[test]
    fn l3_rejects_split_primes_with_named_violation() {
        let err = check_triple(3, -17, -53, -19).unwrap_err();
        assert!(err.violations.contains(&Violation::NotInert(-19)), "{err:?}");
    }

    #[test]
    fn l2_example_triple_passes() {
        let ctx = check_triple(2, 13, 17, 101).unwrap();
        assert_eq!(ctx.ell, 2);
        assert!(ctx.checks.iter().all(|c| c.ok));
    }

    #[test]
    fn l2_pair_examples() {
        assert!(check_pair(2, 13, 17).is_ok());
        let err = check_pair(2, 7, 13).unwrap_err();
        assert!(err.violations.contains(&Violation::NotOneMod4(7)));
    }

    #[test]
    fn l3_pair_example() {
        assert!(check_pair(3, -17, -593).is_ok());
    }

    #[test]
    fn distinctness_is_enforced() {
        let err = check_pair(2, 13, 13).unwrap_err();
        assert!(err.violations.contains(&Violation::NotDistinct));
    }

    #[test]
    fn violations_are_collected_exhaustively() {
        // 7 fails mod-4, 19 fails inert (for ell=2: 19 = 3 mod 4): both named.
        let err = check_triple(2, 7, 19, 11).unwrap_err();
        assert!(err.violations.len() >= 3, "{err:?}");
    }

    #[test]
    fn eligibility_is_permutation_consistent() {
        let perms = [
            (-17i64, -593i64, -53i64),
            (-17, -53, -593),
            (-593, -17, -53),
            (-593, -53, -17),
            (-53, -17, -593),
            (-53, -593, -17),
        ];
        for (a, b, c) in perms {
            assert!(check_triple(3, a, b, c).is_ok(), "({a},{b},{c})");
        }
    }
}
