//! Exact arithmetic for triple power residue symbols.
//!
//! This crate computes, over explicit prime triples:
//!
//! * the **Rédei symbol** `[p1, p2, p3]_2` (ℓ = 2) and the **triple cubic
//!   residue symbol** `[p1, p2, p3]_3` (ℓ = 3), both evaluated through a
//!   Frobenius test in the residue field at `p3`;
//! * the associated **mod-ℓ Milnor invariant** μ (the symbol exponent);
//! * the **mod-ℓ values of the second ℓ-adic polylogarithm** ℓi₂ at the
//!   Frobenius of `p3`, for the parameter `z = p1·(−y/x)^ℓ` attached to a
//!   solution of the norm equation `x^ℓ + p1·y^ℓ = p2·w^ℓ` (written for
//!   ℓ = 2 in the equivalent form `x² − p1·y² − p2·w² = 0`);
//!
//! and verifies, in exact arithmetic, the reciprocity law
//! `[p1,p2,p3]_ℓ · [p2,p1,p3]_ℓ = 1` and the functional equation
//! `ℓi₂(z) + ℓi₂(1−z) ≡ (Np3² − 1)/24 mod ℓ` over the full supported
//! datasets (the right side vanishes identically for ℓ = 3; for ℓ = 2 it
//! is `(p3² − 1)/8 mod 2`, nonzero exactly when `p3 ≡ 5 mod 8`).
//!
//! Everything is exact: big-integer Eisenstein arithmetic, `u64`/`u128`
//! modular towers, `i128` Diophantine scans, and exact rationals for `z`.
//! No floating point participates in any result.
//!
//! Module map:
//!
//! * [`eisenstein`] — arithmetic in ℤ\[ω\], prime normalization for ℓ = 3,
//!   and the list of normalized primes up to a bound;
//! * [`residue`] — prime fields, the quadratic extension 𝔽\_{q²} = 𝔽\_q(ω),
//!   the cubic algebra adjoining a cube root of `p1`, Legendre symbols,
//!   modular square roots, and cubic characters;
//! * [`eligibility`] — hypothesis checking for pairs and triples;
//! * [`norm_eq`] — bounded exhaustive solvers for the two norm equations;
//! * [`symbols`] — the symbol evaluations, reciprocity checks, and the
//!   permutation experiment;
//! * [`polylog`] — `z`, χ̃₂, ℓi₂, ρ_x, and the functional equation;
//! * [`pipeline`] — end-to-end row computation and batch drivers with an
//!   optional data-parallel execution path (`parallel` feature, on by
//!   default; `jobs = 1` forces the sequential path at runtime).

pub mod eisenstein;
pub mod eligibility;
pub mod norm_eq;
pub mod pipeline;
pub mod polylog;
pub mod residue;
pub mod symbols;

pub use eisenstein::{enumerate_prime_list, normalize_prime_l3, EisensteinInt, NormalizedPrimeL3};
pub use eligibility::{check_pair, check_triple, PairContext, TripleContext};
pub use norm_eq::{enumerate_solutions, verify_solution, NormEquationSolution, SearchConfig};
pub use pipeline::{compute_row, RowData, RunConfig};
pub use symbols::SymbolValue;
