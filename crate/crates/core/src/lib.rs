//! Exact, exhaustive checks of a small web of constructions: GF(2^n)
//! arithmetic, Levin's universal permutation and its CNOT matrix, Bell
//! circuits, CHSH bounds, the power-set lattice on three elements, a
//! brute-force SAT oracle and the normalization of `1/(x^2+x+1)`.
//!
//! With the default `parallel` feature, enumerations (Cayley tables, truth
//! tables, SAT assignment scans, CHSH grid scans, quadrature panels) run on
//! rayon. Every reduction is ordered, so results are identical with the
//! feature disabled.

pub mod analysis;
pub mod chsh;
pub mod config;
pub mod error;
pub mod gf2poly;
pub mod levin;
pub mod poset;
pub mod qsim;
pub mod reference;
pub mod satcheck;

pub use config::Caps;
pub use error::{Error, Result};
