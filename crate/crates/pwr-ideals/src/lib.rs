//! Principal well-rounded (PWR) ideals of real quadratic fields.
//!
//! A planar lattice is well-rounded when its two successive minima agree. For
//! a real quadratic field Q(sqrt(d)) the ideals whose embedded lattices are
//! well-rounded admit an exact arithmetic description, and the principal ones
//! among them are detected by the solvability of a generalized Pell equation
//! `k^2 d2 - l^2 d1 = t` with `t` in {±2, ±4} over the coprime splits
//! `d = d1 * d2` with `d1 < d2 <= 3 d1`.
//!
//! The crate provides:
//!
//! * [`arith`]: extended Euclid with a canonical Bezout normalization,
//!   integer roots, bounded factorization, and tiered squarefree testing.
//! * [`quadfield`]: field objects, canonical integral ideals, quadratic
//!   integers, exact Gram data, a two-dimensional reduction oracle, and the
//!   rational angle invariant that classifies similarity.
//! * [`wrideal`]: well-rounded ideal enumeration, the PWR pair construction,
//!   minimal bases, prime factorization shape, and generators recovered from
//!   Pell witnesses.
//! * [`pell`]: continued fractions, fundamental units, search bounds, the
//!   Pell scanner and a complete convergent-based solver, plus an independent
//!   principality oracle walking the cycle of reduced forms.
//! * [`generate`]: the three family generators (one per residue class
//!   shape), linear family extension, prime-norm PWR searches, and
//!   squarefree density estimates.
//! * [`experiments`]: batch scan statistics, scatter exports, and the
//!   large-input generator demo.
//!
//! Everything correctness-relevant is computed in exact integer or rational
//! arithmetic; floating point appears only in density estimates.
//!
//! ```
//! use pwr_ideals::pell::has_pwr;
//!
//! let hit = has_pwr(91).unwrap().expect("91 = 7 * 13 has PWR ideals");
//! assert_eq!((hit.0.d1(), hit.0.d2()), (7, 13));
//! ```

pub mod arith;
pub mod error;
pub mod experiments;
pub mod generate;
pub mod pell;
pub mod quadfield;
pub mod wrideal;

pub mod cli;

pub use error::{Error, Result};
