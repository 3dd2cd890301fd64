//! Exact equivariant algebra for the cyclic 2-groups `C_{2^n}`.
//!
//! The crate mechanizes a family of computations around the additive
//! structure of relative dual Steenrod algebras:
//!
//! * [`reps`] — integer arithmetic in the real representation rings of the
//!   subgroups of `C_{2^n}`: induction, restriction, and fixed-point
//!   dimensions, all exact.
//! * [`eqfn`] — `C_2`-equivariant functions `G -> {a, b}`, their rotation
//!   orbits, stabilizers, and the induced-representation degrees attached to
//!   them and to finitely supported sequences of them.
//! * [`splitting`] — the wedge decomposition of the relative smash square
//!   into induced representation spheres, with dimension cutoffs and cell
//!   tables.
//! * [`koszul`] — a Koszul complex over `GF(2)` computing Tor for the
//!   Hurewicz map, with bigraded homology ranks and a closed-form comparison.
//! * [`tau`] — the square-free tau-monomial algebra with its carry relation
//!   `tau_i^2 = a_sigma tau_{i+1}`, degree bookkeeping, and geometric
//!   fixed-point Poincare-series identities.
//! * [`e2`] — assembly of the spectral-sequence `E_2`-basis for the `C_2`
//!   case, the rank-level collapse check against the Koszul answer, and a
//!   permanent-cycle audit.
//! * [`verify`] — the aggregated cross-module consistency checks behind the
//!   CLI `verify` subcommand.
//!
//! Everything is deterministic: no floating point in any computation path,
//! no randomness, and all reported tables come out in a fixed canonical
//! order.

pub mod cli;
pub mod e2;
pub mod eqfn;
pub mod gf2;
pub mod grading;
pub mod koszul;
pub mod poincare;
pub mod reps;
pub mod splitting;
pub mod tau;
pub mod verify;

pub use grading::RoC2;
pub use reps::{InducedDegree, RealRep, RepError, Subgroup};
