//! The rational parameter `z`, the mod-ℓ second polylogarithmic character
//! `χ̃₂`, the mod-ℓ second polylogarithm value `ℓi₂`, and the functional
//! equation `ℓi₂(z) + ℓi₂(1 − z) ≡ 0 mod ℓ`.
//!
//! For a solution `(x, y, w)` of the pair `(p1, p2)`:
//!
//! * `z = p1·(−y/x)^ℓ`, held as an exact reduced fraction, with the exact
//!   companion identity `1 − z = w^ℓ·p2 / x^ℓ`.
//! * `χ̃₂` mod ℓ is the ℓ-th power residue character at `p3` of
//!   `θ / x^{ℓ(ℓ−1)/2}` — computed here directly from the normalized
//!   element (components `∏ᵢ (1 + ζℓ^i·(y/x)·root)^i` in the split
//!   algebra), **not** by calling the symbol evaluator. The symbol and this
//!   character are related by a proven identity, and keeping the two code
//!   paths independent turns that identity into an executable cross-check.
//! * `ℓi₂ ≡ −χ̃₂ mod ℓ`.
//! * `ℓi₂(1 − z)` uses the same character machinery for the swapped pair
//!   `(p2, p1)` with the coordinates `(x, −w, y)`.
//! * For ℓ = 2 the auxiliary sign `ρ_x` is the quadratic character of `x`
//!   at `p3`.

use crate::eisenstein::{normalize_prime_l3, NormalizedPrimeL3};
use crate::eligibility::TripleContext;
use crate::norm_eq::NormEquationSolution;
use crate::residue::{
    cube_roots_in_fq2, cubic_character_fq2, fq2_add, fq2_mul, inv_mod, legendre, omega_squared,
    reduce_mod, sqrt_mod, Fq2Elem, ResidueError,
};
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolylogError {
    #[error("z is degenerate (x = 0 or z ∈ {{0, 1}})")]
    DegenerateZ,
    #[error("rho_x undefined: x ≡ 0 mod p3 = {p3}")]
    RhoUndefined { p3: i64 },
    #[error("character undefined: the evaluated element is not a unit at p3 = {p3}")]
    NotUnitAtP3 { p3: i64 },
    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

/// The exact rational `z` and its companion `1 − z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalParameter {
    pub z: Ratio<i128>,
    pub one_minus_z: Ratio<i128>,
}

/// The assembled mod-ℓ polylogarithm data at one Frobenius evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolylogValue {
    pub li2_mod_ell: u8,
    pub chi2_mod_ell: u8,
    /// Quadratic character exponent of `x` at `p3`; populated for ℓ = 2.
    pub rho_x: Option<u8>,
}

fn pow_ell(v: i128, ell: u8) -> i128 {
    match ell {
        2 => v * v,
        3 => v * v * v,
        _ => unreachable!("ell is validated upstream"),
    }
}

/// Build `z = p1·(−y/x)^ℓ` and `1 − z` exactly, cross-checking the
/// companion identity `1 − z = w^ℓ·p2 / x^ℓ` against the norm equation
/// (with `p2` recovered from the solution itself).
pub fn z_of_solution(
    sol: &NormEquationSolution,
    p1: i64,
) -> Result<RationalParameter, PolylogError> {
    if sol.x == 0 {
        return Err(PolylogError::DegenerateZ);
    }
    let (x, y, w) = (sol.x as i128, sol.y as i128, sol.w as i128);
    let p1 = p1 as i128;
    let xl = pow_ell(x, sol.ell);
    let z = Ratio::new(p1 * pow_ell(-y, sol.ell), xl);
    if z.is_zero() || z.is_one() {
        return Err(PolylogError::DegenerateZ);
    }
    let one_minus_z = Ratio::from_integer(1) - z;
    // Companion identity: x^ℓ − (−y)^ℓ·p1 = w^ℓ·p2 exactly, so w^ℓ must
    // divide the left side and the quotient must reproduce 1 − z.
    let wl = pow_ell(w, sol.ell);
    let lhs = xl - pow_ell(-y, sol.ell) * p1;
    if wl == 0 || lhs % wl != 0 || one_minus_z != Ratio::new((lhs / wl) * wl, xl) {
        return Err(PolylogError::InternalInvariantViolation(format!(
            "companion identity 1 − z = w^ℓ·p2/x^ℓ fails for {sol:?}"
        )));
    }
    Ok(RationalParameter { z, one_minus_z })
}

/// Quadratic character exponent of `x` at `p3` (ℓ = 2): 0 for residues,
/// 1 for non-residues.
pub fn rho_x(sol: &NormEquationSolution, p3: i64) -> Result<u8, PolylogError> {
    let q = p3.unsigned_abs();
    match legendre(sol.x, q) {
        1 => Ok(0),
        -1 => Ok(1),
        _ => Err(PolylogError::RhoUndefined { p3 }),
    }
}

fn normalized_p3(ctx: &TripleContext) -> Result<NormalizedPrimeL3, PolylogError> {
    normalize_prime_l3(ctx.p3.unsigned_abs()).map_err(|e| {
        PolylogError::InternalInvariantViolation(format!(
            "context carries a non-normalizable p3 = {}: {e}",
            ctx.p3
        ))
    })
}

/// Character exponent of the normalized Kummer element built from
/// `(pa, x, y)` at `p3`: the ℓ-th power residue character of
/// `θ_{pa}·x^{−ℓ(ℓ−1)/2}`, whose components are
/// `∏ᵢ (1 + ζℓ^i·(y/x)·r)^i` over the ℓ-th roots `r` of `pa`.
///
/// This is the common core of `χ̃₂(z)` (with `(p1, x, y)`) and
/// `χ̃₂(1 − z)` (with `(p2, x, −w)`).
fn chi2_core(ell: u8, pa: i64, x: i64, y: i64, p3: i64) -> Result<u8, PolylogError> {
    match ell {
        2 => {
            let q = p3 as u64;
            let xr = reduce_mod(x, q);
            if xr == 0 {
                return Err(PolylogError::NotUnitAtP3 { p3 });
            }
            let xinv = inv_mod(xr, q);
            let (s1, s2) = sqrt_mod(pa, q)?;
            let mut vals = [0i8; 2];
            for (i, s) in [s1, s2].into_iter().enumerate() {
                let num = (x as i128 + s as i128 * y as i128).rem_euclid(q as i128) as u64;
                let v = (num as u128 * xinv as u128 % q as u128) as i64;
                let lv = legendre(v, q);
                if lv == 0 {
                    return Err(PolylogError::NotUnitAtP3 { p3 });
                }
                vals[i] = lv;
            }
            if vals[0] != vals[1] {
                return Err(PolylogError::InternalInvariantViolation(format!(
                    "square-root embeddings disagree for ({pa}, {x}, {y}) at p3 = {p3}"
                )));
            }
            Ok(if vals[0] == 1 { 0 } else { 1 })
        }
        3 => {
            let np = normalize_prime_l3(p3.unsigned_abs()).map_err(|e| {
                PolylogError::InternalInvariantViolation(format!(
                    "non-normalizable p3 = {p3}: {e}"
                ))
            })?;
            let q = np.q;
            let xr = reduce_mod(x, q);
            if xr == 0 {
                return Err(PolylogError::NotUnitAtP3 { p3 });
            }
            let u = Fq2Elem { c0: (inv_mod(xr, q) as u128 * reduce_mod(y, q) as u128 % q as u128) as u64, c1: 0 };
            let roots = cube_roots_in_fq2(pa, &np)?;
            let om = Fq2Elem::OMEGA;
            let om2 = omega_squared(q);
            let one = Fq2Elem::ONE;
            let mut exps = [0u8; 3];
            for (i, r) in roots.into_iter().enumerate() {
                let ur = fq2_mul(u, r, q);
                // (1 + ω·u·r)·(1 + ω²·u·r)²
                let f = fq2_add(one, fq2_mul(om, ur, q), q);
                let g = fq2_add(one, fq2_mul(om2, ur, q), q);
                let a = fq2_mul(f, fq2_mul(g, g, q), q);
                exps[i] = cubic_character_fq2(a, &np).map_err(|e| match e {
                    ResidueError::CharacterUndefined => PolylogError::NotUnitAtP3 { p3 },
                    other => PolylogError::Residue(other),
                })?;
            }
            if exps[1] != exps[0] || exps[2] != exps[0] {
                return Err(PolylogError::InternalInvariantViolation(format!(
                    "character components disagree {exps:?} for ({pa}, {x}, {y}) at p3 = {p3}"
                )));
            }
            Ok(exps[0])
        }
        other => Err(PolylogError::InternalInvariantViolation(format!(
            "unsupported ell = {other} in a verified context"
        ))),
    }
}

/// `χ̃₂(z)` mod ℓ for the context's triple and one solution.
pub fn chi2_mod_l(ctx: &TripleContext, sol: &NormEquationSolution) -> Result<u8, PolylogError> {
    // Validate the context invariant early so errors are precise.
    let _ = z_of_solution(sol, ctx.p1)?;
    if ctx.ell == 3 {
        normalized_p3(ctx)?;
    }
    chi2_core(ctx.ell, ctx.p1, sol.x, sol.y, ctx.p3)
}

/// `ℓi₂(z) ≡ −χ̃₂(z) mod ℓ`, assembled with `ρ_x` for ℓ = 2.
pub fn li2_mod_l(ctx: &TripleContext, sol: &NormEquationSolution) -> Result<PolylogValue, PolylogError> {
    let chi2 = chi2_mod_l(ctx, sol)?;
    let li2 = (ctx.ell - chi2) % ctx.ell;
    let rho = if ctx.ell == 2 { Some(rho_x(sol, ctx.p3)?) } else { None };
    Ok(PolylogValue { li2_mod_ell: li2, chi2_mod_ell: chi2, rho_x: rho })
}

/// `ℓi₂(1 − z) mod ℓ`: the same character construction for the swapped
/// pair `(p2, p1)` with coordinates `(x, −w)`.
pub fn li2_one_minus_z(ctx: &TripleContext, sol: &NormEquationSolution) -> Result<u8, PolylogError> {
    let chi2 = chi2_core(ctx.ell, ctx.p2, sol.x, -sol.w, ctx.p3)?;
    Ok((ctx.ell - chi2) % ctx.ell)
}

/// The right side of the functional equation at the Frobenius evaluation:
/// the mod-ℓ value of `(χ² − 1)/24` with `χ = N(p3)`.
///
/// For ℓ = 3 eligibility forces `N(p3) = p3² ≡ 1 mod 9`, which makes the
/// value vanish mod 3 — the two `ℓi₂` terms always cancel. For ℓ = 2 the
/// value is `(p3² − 1)/8 mod 2` (3 is a unit ≡ 1 mod 2), which is nonzero
/// exactly when `p3 ≡ 5 mod 8`; eligibility only guarantees `p3 ≡ 1 mod
/// 4`, so the right side genuinely appears in half the residue classes.
pub fn functional_equation_rhs(ell: u8, p3: i64) -> u8 {
    let chi: i128 = match ell {
        2 => p3 as i128,
        3 => p3 as i128 * p3 as i128,
        _ => unreachable!("ell is validated upstream"),
    };
    let e = chi * chi - 1;
    match ell {
        2 => {
            debug_assert_eq!(e % 8, 0);
            ((e / 8).rem_euclid(2)) as u8
        }
        3 => {
            debug_assert_eq!(e % 3, 0);
            // (e/24) mod 3 = (e/3)·8⁻¹ mod 3 with 8⁻¹ ≡ 2.
            (((e / 3).rem_euclid(3)) * 2 % 3) as u8
        }
        _ => unreachable!(),
    }
}

/// True iff `ℓi₂(z) + ℓi₂(1 − z) ≡ (χ² − 1)/24 mod ℓ` — the functional
/// equation at the Frobenius evaluation. The right side vanishes for every
/// eligible ℓ = 3 triple; see [`functional_equation_rhs`].
pub fn functional_equation_check(
    ctx: &TripleContext,
    sol: &NormEquationSolution,
) -> Result<bool, PolylogError> {
    let a = li2_mod_l(ctx, sol)?.li2_mod_ell;
    let b = li2_one_minus_z(ctx, sol)?;
    Ok((a + b) % ctx.ell == functional_equation_rhs(ctx.ell, ctx.p3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eligibility::check_triple;
    use crate::norm_eq::{enumerate_solutions, SearchConfig};

    fn sol3(x: i64, y: i64, w: i64) -> NormEquationSolution {
        NormEquationSolution { ell: 3, x, y, w }
    }

    #[test]
    fn z_reference_values() {
        let r = z_of_solution(&sol3(9, 2, -1), -17).unwrap();
        assert_eq!(r.z, Ratio::new(136, 729));
        assert_eq!(r.one_minus_z, Ratio::new(593, 729));

        let r = z_of_solution(&sol3(8, 3, -1), -17).unwrap();
        assert_eq!(r.z, Ratio::new(459, 512));
        assert_eq!(r.one_minus_z, Ratio::new(53, 512));

        let r = z_of_solution(&sol3(-24, -5, 1), -107).unwrap();
        assert_eq!(r.z, Ratio::new(13375, 13824));
        assert_eq!(r.one_minus_z, Ratio::new(449, 13824));
    }

    #[test]
    fn z_for_the_quadratic_case() {
        let sol = NormEquationSolution { ell: 2, x: -15, y: 4, w: 1 };
        let r = z_of_solution(&sol, 13).unwrap();
        assert_eq!(r.z, Ratio::new(208, 225));
        assert_eq!(r.one_minus_z, Ratio::new(17, 225));
    }

    #[test]
    fn degenerate_z_is_rejected() {
        let bad = NormEquationSolution { ell: 3, x: 0, y: 1, w: 1 };
        assert_eq!(z_of_solution(&bad, -17), Err(PolylogError::DegenerateZ));
        let zero_y = NormEquationSolution { ell: 3, x: 2, y: 0, w: 1 };
        assert_eq!(z_of_solution(&zero_y, -17), Err(PolylogError::DegenerateZ));
    }

    #[test]
    fn rho_examples() {
        let s = NormEquationSolution { ell: 2, x: 49, y: 2, w: 1 };
        assert_eq!(rho_x(&s, 101).unwrap(), 0);
        let s = NormEquationSolution { ell: 2, x: -15, y: 4, w: 1 };
        let expect = if legendre(-15, 101) == 1 { 0 } else { 1 };
        assert_eq!(rho_x(&s, 101).unwrap(), expect);
        let s = NormEquationSolution { ell: 2, x: 101, y: 2, w: 1 };
        assert_eq!(rho_x(&s, 101), Err(PolylogError::RhoUndefined { p3: 101 }));
    }

    #[test]
    fn chi2_and_li2_reference_values() {
        // (−17, −593 | p3) with solution (9, 2, −1): li2 values follow the
        // reference table; chi2 = −li2 mod 3.
        let sol = sol3(9, 2, -1);
        for (p3, li2, li2_omz) in [(-53, 2u8, 1u8), (-71, 1, 2), (-233, 0, 0)] {
            let ctx = check_triple(3, -17, -593, p3).unwrap();
            let v = li2_mod_l(&ctx, &sol).unwrap();
            assert_eq!(v.li2_mod_ell, li2, "li2 at p3 = {p3}");
            assert_eq!(v.chi2_mod_ell, (3 - li2) % 3, "chi2 at p3 = {p3}");
            assert_eq!(v.rho_x, None);
            assert_eq!(li2_one_minus_z(&ctx, &sol).unwrap(), li2_omz, "li2(1−z) at p3 = {p3}");
            assert!(functional_equation_check(&ctx, &sol).unwrap());
        }
    }

    #[test]
    fn table2_first_row_is_trivial() {
        let ctx = check_triple(3, -17, -53, -431).unwrap();
        let sol = sol3(8, 3, -1);
        let v = li2_mod_l(&ctx, &sol).unwrap();
        assert_eq!(v.li2_mod_ell, 0);
        assert!(functional_equation_check(&ctx, &sol).unwrap());
    }

    #[test]
    fn quadratic_chi2_consistency() {
        // (13, 17, 101) with solution (−15, 4, 1): frozen values.
        let ctx = check_triple(2, 13, 17, 101).unwrap();
        let sol = NormEquationSolution { ell: 2, x: -15, y: 4, w: 1 };
        let v = li2_mod_l(&ctx, &sol).unwrap();
        assert_eq!(v.chi2_mod_ell, 1);
        assert_eq!(v.li2_mod_ell, 1);
        assert_eq!(v.rho_x, Some(1));
        // 101 ≡ 5 mod 8, so the functional equation's right side is 1 here
        // and the two li2 values sum to 1 mod 2.
        assert_eq!(li2_one_minus_z(&ctx, &sol).unwrap(), 0);
        assert!(functional_equation_check(&ctx, &sol).unwrap());

        let ctx = check_triple(2, 5, 29, 109).unwrap();
        let sol = NormEquationSolution { ell: 2, x: 7, y: 2, w: 1 };
        let v = li2_mod_l(&ctx, &sol).unwrap();
        assert_eq!((v.chi2_mod_ell, v.li2_mod_ell, v.rho_x), (0, 0, Some(0)));
    }

    #[test]
    fn functional_equation_right_side_by_residue_class() {
        // ℓ = 3: the right side vanishes for every eligible p3.
        for p3 in [-53, -71, -233, -971] {
            assert_eq!(functional_equation_rhs(3, p3), 0, "p3 = {p3}");
        }
        // ℓ = 2: (p3² − 1)/8 mod 2 — zero iff p3 ≡ ±1 mod 8.
        assert_eq!(functional_equation_rhs(2, 101), 1);
        assert_eq!(functional_equation_rhs(2, 109), 1);
        assert_eq!(functional_equation_rhs(2, 53), 1);
        assert_eq!(functional_equation_rhs(2, 257), 0);
        assert_eq!(functional_equation_rhs(2, 233), 0);
        assert_eq!(functional_equation_rhs(2, 17), 0);
    }

    #[test]
    fn functional_equation_holds_in_both_mod8_classes() {
        // p3 = 257 ≡ 1 mod 8: the li2 values cancel outright.
        let ctx = check_triple(2, 13, 17, 257).unwrap();
        let sol = NormEquationSolution { ell: 2, x: -15, y: 4, w: 1 };
        let v = li2_mod_l(&ctx, &sol).unwrap();
        let omz = li2_one_minus_z(&ctx, &sol).unwrap();
        assert_eq!((v.li2_mod_ell + omz) % 2, 0);
        assert!(functional_equation_check(&ctx, &sol).unwrap());

        // p3 = 101 ≡ 5 mod 8: they sum to the nonzero right side.
        let ctx = check_triple(2, 13, 17, 101).unwrap();
        let v = li2_mod_l(&ctx, &sol).unwrap();
        let omz = li2_one_minus_z(&ctx, &sol).unwrap();
        assert_eq!((v.li2_mod_ell + omz) % 2, 1);
        assert!(functional_equation_check(&ctx, &sol).unwrap());
    }

    #[test]
    fn chi2_is_independent_of_the_solution() {
        let ctx = check_triple(3, -17, -53, -431).unwrap();
        let sols = enumerate_solutions(3, ctx.p1, ctx.p2, &SearchConfig::with_bound(300), 10);
        let mut seen = Vec::new();
        for sol in &sols {
            if sol.x % 431 == 0 || sol.w % 431 == 0 || sol.x == 0 {
                continue;
            }
            seen.push(chi2_mod_l(&ctx, sol).unwrap());
        }
        assert!(seen.len() >= 3, "wanted several usable solutions, got {}", seen.len());
        assert!(seen.windows(2).all(|p| p[0] == p[1]), "{seen:?}");
    }

    #[test]
    fn functional_equation_across_reference_rows() {
        let sol = sol3(9, 2, -1);
        for p3 in [-53, -71, -89, -107, -179, -197, -233, -251, -269, -359, -431] {
            let ctx = check_triple(3, -17, -593, p3).unwrap();
            assert!(functional_equation_check(&ctx, &sol).unwrap(), "p3 = {p3}");
        }
    }
}
