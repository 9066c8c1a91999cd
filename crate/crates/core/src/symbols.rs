//! Triple ℓ-th power residue symbols evaluated through the Kummer element
//! θ attached to a norm-equation solution.
//!
//! For a solution `(x, y, w)` of the pair `(p1, p2)`:
//!
//! * ℓ = 2: `θ = x + y·√p1`. Its image under each embedding `√p1 ↦ s`
//!   (a square root of `p1` mod `p3`) is `x + s·y`; the symbol exponent is
//!   `0` if that value is a quadratic residue mod `p3` and `1` otherwise.
//!   Both embeddings must agree (they do whenever `y` is even, which the
//!   solver guarantees) — disagreement is an internal invariant violation.
//! * ℓ = 3: `θ = (x + ω·y·∛p1)(x + ω²·y·∛p1)²` inside the split algebra
//!   `𝔽_{q²}[t]/(t³ − p1) ≅ 𝔽_{q²}³` at `q = |p3|`. Raising each of the
//!   three components to `(q² − 1)/3` lands in `µ₃`; the decoded exponent
//!   `c ∈ ℤ/3ℤ` is the symbol, and all three components must agree.
//!
//! The symbol only depends on the triple, not on which normalized solution
//! produced θ — the batch drivers assert this on real data.
//!
//! A second, literally-different evaluation route is provided for ℓ = 3:
//! [`triple_cubic_symbol_norm_form`] tests, for each candidate exponent
//! `c`, whether the product of residue-field norms `∏_j N(θ_j^e − ζ₃^c)`
//! vanishes mod `|p3|`. Exactly one candidate must pass; the batch driver
//! cross-checks it against the component route on every row.

use crate::eisenstein::{normalize_prime_l3, NormalizedPrimeL3};
use crate::eligibility::{check_triple, IneligibleTriple, TripleContext};
use crate::norm_eq::{enumerate_solutions, NormEqError, NormEquationSolution, SearchConfig};
use crate::residue::{
    cube_roots_in_fq2, fq2_add, fq2_mul, fq2_norm, fq2_pow, fq2_sub, legendre, omega_squared,
    sqrt_mod, zeta3_decode_root, Fq2Elem, ResidueError,
};
use thiserror::Error;

/// A triple symbol value: the exponent `c ∈ ℤ/ℓℤ` of the root of unity the
/// symbol equals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolValue {
    pub ell: u8,
    pub c: u8,
}

impl SymbolValue {
    /// Human-readable root of unity: `±1` for ℓ = 2, `1`/`z3`/`z3^-1` for
    /// ℓ = 3 (`z3` denoting a fixed primitive cube root of unity).
    pub fn rendered(&self) -> &'static str {
        match (self.ell, self.c) {
            (2, 0) => "+1",
            (2, 1) => "-1",
            (3, 0) => "1",
            (3, 1) => "z3",
            (3, 2) => "z3^-1",
            _ => unreachable!("symbol values are constructed with c < ell"),
        }
    }
}

/// The mod-ℓ triple Milnor invariant `μ(123)`: the symbol exponent itself.
pub fn milnor_invariant(sym: &SymbolValue) -> u8 {
    sym.c
}

/// The data defining θ for one solution: the pair's first prime and the
/// solution coordinates entering the Kummer element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaData {
    pub ell: u8,
    pub p1: i64,
    pub x: i64,
    pub y: i64,
}

#[derive(Debug, Error)]
pub enum SymbolError {
    #[error("theta degenerates to a rational integer (y = 0)")]
    DegenerateTheta,
    #[error("theta is not a unit at p3 = {p3}; retry with another solution")]
    ThetaNotUnitAtP3 { p3: i64 },
    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),
    #[error(transparent)]
    Ineligible(#[from] IneligibleTriple),
    #[error(transparent)]
    Unsolved(#[from] NormEqError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error("reciprocity not testable for this triple: {reason}")]
    ReciprocityNotTestable { reason: String },
    #[error("only {} of the six permuted triples are evaluable", available.len())]
    PartialOrbit { available: Vec<PermutationEntry> },
}

/// Build the θ data for a solution; `y = 0` gives a degenerate (rational) θ.
pub fn theta_of_solution(sol: &NormEquationSolution, p1: i64) -> Result<ThetaData, SymbolError> {
    if sol.y == 0 {
        return Err(SymbolError::DegenerateTheta);
    }
    Ok(ThetaData { ell: sol.ell, p1, x: sol.x, y: sol.y })
}

fn normalized_p3(ctx: &TripleContext) -> Result<NormalizedPrimeL3, SymbolError> {
    normalize_prime_l3(ctx.p3.unsigned_abs()).map_err(|e| {
        SymbolError::InternalInvariantViolation(format!(
            "context carries a non-normalizable p3 = {}: {e}",
            ctx.p3
        ))
    })
}

/// The quadratic (Rédei-type) triple symbol: image of θ under both square
/// roots of `p1` mod `p3`, which must agree.
pub fn redei_symbol(ctx: &TripleContext, theta: &ThetaData) -> Result<SymbolValue, SymbolError> {
    debug_assert_eq!(ctx.ell, 2);
    let p3 = ctx.p3 as u64;
    let (s1, s2) = sqrt_mod(ctx.p1, p3)?;
    let mut vals = [0i8; 2];
    for (i, s) in [s1, s2].into_iter().enumerate() {
        let v = (theta.x as i128 + s as i128 * theta.y as i128).rem_euclid(p3 as i128) as i64;
        let lv = legendre(v, p3);
        if lv == 0 {
            return Err(SymbolError::ThetaNotUnitAtP3 { p3: ctx.p3 });
        }
        vals[i] = lv;
    }
    if vals[0] != vals[1] {
        return Err(SymbolError::InternalInvariantViolation(format!(
            "the two square-root embeddings of theta disagree at p3 = {}: {:?}",
            ctx.p3, vals
        )));
    }
    Ok(SymbolValue { ell: 2, c: if vals[0] == 1 { 0 } else { 1 } })
}

/// The three components of θ in the split algebra at `p3`, one per cube
/// root of `p1`, in the deterministic root order.
fn theta_components_l3(
    theta: &ThetaData,
    np: &NormalizedPrimeL3,
) -> Result<[Fq2Elem; 3], SymbolError> {
    let q = np.q;
    let roots = cube_roots_in_fq2(theta.p1, np)?;
    let x = Fq2Elem::from_int(theta.x, q);
    let y = Fq2Elem::from_int(theta.y, q);
    let om = Fq2Elem::OMEGA;
    let om2 = omega_squared(q);
    Ok(roots.map(|r| {
        let yr = fq2_mul(y, r, q);
        let f = fq2_add(x, fq2_mul(om, yr, q), q);
        let g = fq2_add(x, fq2_mul(om2, yr, q), q);
        fq2_mul(f, fq2_mul(g, g, q), q)
    }))
}

/// The cubic triple symbol via the component (Euler-criterion) route: raise
/// each θ component to `(q² − 1)/3` and decode the common root of unity.
pub fn triple_cubic_symbol(
    ctx: &TripleContext,
    theta: &ThetaData,
) -> Result<SymbolValue, SymbolError> {
    debug_assert_eq!(ctx.ell, 3);
    let np = normalized_p3(ctx)?;
    let q = np.q;
    let comps = theta_components_l3(theta, &np)?;
    if comps.iter().any(|t| t.is_zero()) {
        return Err(SymbolError::ThetaNotUnitAtP3 { p3: ctx.p3 });
    }
    let e = (q as u128 * q as u128 - 1) / 3;
    let mut logs = [0u8; 3];
    for (i, t) in comps.into_iter().enumerate() {
        let raised = fq2_pow(t, e, q);
        logs[i] = crate::residue::omega_log(raised, q).map_err(|_| {
            SymbolError::InternalInvariantViolation(format!(
                "raised theta component {i} is not a cube root of unity at p3 = {}",
                ctx.p3
            ))
        })?;
    }
    if logs[1] != logs[0] || logs[2] != logs[0] {
        return Err(SymbolError::InternalInvariantViolation(format!(
            "theta components decode to different exponents {logs:?} at p3 = {}",
            ctx.p3
        )));
    }
    Ok(SymbolValue { ell: 3, c: logs[0] })
}

/// The cubic triple symbol via the literal norm-form route: the exponent is
/// the unique `c` for which `∏_j N_{𝔽_{q²}/𝔽_q}(θ_j^e − ζ₃^c) ≡ 0 mod q`.
/// Anything other than exactly one passing candidate is an internal error.
pub fn triple_cubic_symbol_norm_form(
    ctx: &TripleContext,
    theta: &ThetaData,
) -> Result<SymbolValue, SymbolError> {
    debug_assert_eq!(ctx.ell, 3);
    let np = normalized_p3(ctx)?;
    let q = np.q;
    let comps = theta_components_l3(theta, &np)?;
    if comps.iter().any(|t| t.is_zero()) {
        return Err(SymbolError::ThetaNotUnitAtP3 { p3: ctx.p3 });
    }
    let e = (q as u128 * q as u128 - 1) / 3;
    let raised = comps.map(|t| fq2_pow(t, e, q));
    let zeta = zeta3_decode_root(q);
    let mut passing = Vec::new();
    let mut zc = Fq2Elem::ONE;
    for c in 0..3u8 {
        let prod = raised
            .iter()
            .fold(1u128, |acc, t| acc * fq2_norm(fq2_sub(*t, zc, q), q) as u128 % q as u128);
        if prod == 0 {
            passing.push(c);
        }
        zc = fq2_mul(zc, zeta, q);
    }
    match passing.as_slice() {
        [c] => Ok(SymbolValue { ell: 3, c: *c }),
        other => Err(SymbolError::InternalInvariantViolation(format!(
            "norm-form test passed for candidate exponents {other:?} (expected exactly one) at p3 = {}",
            ctx.p3
        ))),
    }
}

/// Evaluate the symbol for one already-chosen solution (dispatching on ℓ).
pub fn symbol_of_solution(
    ctx: &TripleContext,
    sol: &NormEquationSolution,
) -> Result<SymbolValue, SymbolError> {
    let theta = theta_of_solution(sol, ctx.p1)?;
    match ctx.ell {
        2 => redei_symbol(ctx, &theta),
        3 => triple_cubic_symbol(ctx, &theta),
        other => Err(SymbolError::InternalInvariantViolation(format!(
            "unsupported ell = {other} in a verified context"
        ))),
    }
}

/// Solve the pair and evaluate the symbol, retrying with further enumerated
/// solutions when θ fails to be a unit at `p3` (equivalently when `p3`
/// divides `w`; solutions with `p3 | x` are also skipped so that the same
/// solution supports the downstream dilogarithm values). At most
/// `retry_limit` extra solutions are tried before the unit failure
/// surfaces.
pub fn compute_symbol(
    ctx: &TripleContext,
    cfg: &SearchConfig,
    retry_limit: u32,
) -> Result<(SymbolValue, NormEquationSolution), SymbolError> {
    let sols = enumerate_solutions(ctx.ell, ctx.p1, ctx.p2, cfg, retry_limit as usize + 1);
    if sols.is_empty() {
        return Err(match ctx.ell {
            3 => NormEqError::AssumptionANotWitnessed { p1: ctx.p1, p2: ctx.p2, bound: cfg.bound },
            _ => NormEqError::NotFoundWithinBound {
                ell: ctx.ell,
                p1: ctx.p1,
                p2: ctx.p2,
                bound: cfg.bound,
            },
        }
        .into());
    }
    let q3 = ctx.p3.unsigned_abs() as i64;
    let mut saw_nonunit = false;
    for sol in &sols {
        if sol.x % q3 == 0 || sol.w % q3 == 0 {
            saw_nonunit = true;
            continue;
        }
        match symbol_of_solution(ctx, sol) {
            Ok(sym) => return Ok((sym, *sol)),
            Err(SymbolError::ThetaNotUnitAtP3 { .. }) => {
                saw_nonunit = true;
                continue;
            }
            Err(e) => return Err(e),
        }
    }
    debug_assert!(saw_nonunit);
    Err(SymbolError::ThetaNotUnitAtP3 { p3: ctx.p3 })
}

/// Outcome of evaluating a triple in both pair orders.
#[derive(Clone, Debug)]
pub struct ReciprocityReport {
    pub ell: u8,
    pub p1: i64,
    pub p2: i64,
    pub p3: i64,
    pub forward: SymbolValue,
    pub backward: SymbolValue,
    pub forward_solution: NormEquationSolution,
    pub backward_solution: NormEquationSolution,
    /// Whether the two exponents sum to 0 mod ℓ (the reciprocity law).
    pub holds: bool,
}

/// Evaluate `(p1, p2 | p3)` and `(p2, p1 | p3)` and test that the exponents
/// sum to zero mod ℓ. A triple where either direction has no usable
/// solution (unsolved within bound, or θ never a unit at `p3`) is reported
/// as not testable rather than as a law violation.
pub fn reciprocity_check(
    ell: u8,
    p1: i64,
    p2: i64,
    p3: i64,
    cfg: &SearchConfig,
    retry_limit: u32,
) -> Result<ReciprocityReport, SymbolError> {
    let fwd_ctx = check_triple(ell, p1, p2, p3)?;
    let bwd_ctx = check_triple(ell, p2, p1, p3)?;
    let not_testable = |dir: &str, e: &SymbolError| SymbolError::ReciprocityNotTestable {
        reason: format!("{dir} direction: {e}"),
    };
    let (forward, fsol) = match compute_symbol(&fwd_ctx, cfg, retry_limit) {
        Ok(v) => v,
        Err(e @ (SymbolError::ThetaNotUnitAtP3 { .. } | SymbolError::Unsolved(_))) => {
            return Err(not_testable("forward", &e))
        }
        Err(e) => return Err(e),
    };
    let (backward, bsol) = match compute_symbol(&bwd_ctx, cfg, retry_limit) {
        Ok(v) => v,
        Err(e @ (SymbolError::ThetaNotUnitAtP3 { .. } | SymbolError::Unsolved(_))) => {
            return Err(not_testable("backward", &e))
        }
        Err(e) => return Err(e),
    };
    let holds = (forward.c + backward.c) % ell == 0;
    Ok(ReciprocityReport {
        ell,
        p1: fwd_ctx.p1,
        p2: fwd_ctx.p2,
        p3: fwd_ctx.p3,
        forward,
        backward,
        forward_solution: fsol,
        backward_solution: bsol,
        holds,
    })
}

/// One evaluated ordering of a triple within a permutation orbit.
#[derive(Clone, Debug)]
pub struct PermutationEntry {
    pub order: (i64, i64, i64),
    /// Sign of the permutation relative to the input order.
    pub sign: i8,
    pub symbol: SymbolValue,
    pub solution: NormEquationSolution,
}

/// A full six-ordering orbit with the antisymmetry verdict.
#[derive(Clone, Debug)]
pub struct PermutationReport {
    pub entries: Vec<PermutationEntry>,
    /// True iff every ordering's exponent equals `sign · c(identity) mod ℓ`
    /// (for ℓ = 2 this means all six symbols are equal).
    pub verdict: bool,
}

/// The six orderings of `(a, b, c)` in the fixed orbit order
/// (identity, swap first two, swap last two, swap outer, and the two
/// 3-cycles), with permutation signs.
pub fn orbit_orderings(a: i64, b: i64, c: i64) -> [((i64, i64, i64), i8); 6] {
    [
        ((a, b, c), 1),
        ((b, a, c), -1),
        ((a, c, b), -1),
        ((c, b, a), -1),
        ((b, c, a), 1),
        ((c, a, b), 1),
    ]
}

/// Evaluate the symbol on all six orderings of an unordered triple and test
/// the antisymmetry rule `c(ρ) ≡ sign(ρ) · c(id) mod ℓ`. If some orderings
/// are not evaluable (no usable solution), the successful subset is
/// returned inside [`SymbolError::PartialOrbit`].
pub fn permutation_experiment(
    ell: u8,
    a: i64,
    b: i64,
    c: i64,
    cfg: &SearchConfig,
    retry_limit: u32,
) -> Result<PermutationReport, SymbolError> {
    let mut entries = Vec::with_capacity(6);
    let mut complete = true;
    for (order, sign) in orbit_orderings(a, b, c) {
        let ctx = check_triple(ell, order.0, order.1, order.2)?;
        match compute_symbol(&ctx, cfg, retry_limit) {
            Ok((symbol, solution)) => entries.push(PermutationEntry {
                order: (ctx.p1, ctx.p2, ctx.p3),
                sign,
                symbol,
                solution,
            }),
            Err(SymbolError::ThetaNotUnitAtP3 { .. } | SymbolError::Unsolved(_)) => {
                complete = false;
            }
            Err(e) => return Err(e),
        }
    }
    if !complete {
        return Err(SymbolError::PartialOrbit { available: entries });
    }
    let c_id = entries[0].symbol.c as i16;
    let ell_i = ell as i16;
    let verdict = entries.iter().all(|e| {
        let expected = (e.sign as i16 * c_id).rem_euclid(ell_i) as u8;
        e.symbol.c == expected
    });
    Ok(PermutationReport { entries, verdict })
}
