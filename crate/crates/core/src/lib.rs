//! Periodic points of the Dyck shift and their large deviations.
//!
//! - [`symbol`], [`reduce`]: bracket words, the Dyck monoid with zero, heights.
//! - [`periodic`]: enumeration and census of `Per_n` by multiplier class,
//!   Birkhoff averages and empirical cylinder masses.
//! - [`krieger`]: the embeddings `φ_γ`, `ψ_γ` between the Dyck shift and the
//!   full shifts on `M + 1` symbols.
//! - [`thermo`]: transfer-matrix pressure, multifractal spectra and level-1
//!   rate functions for observables in the open/close class.
//! - [`harness`]: exact-count experiments comparing empirical decay rates with
//!   the analytic rate functions.
//!
//! ```
//! use dyckshift::{periodic, reduce::reduce, symbol::Word};
//!
//! let w = Word::parse("a1 b2", 2).unwrap();
//! assert!(reduce(&w).is_zero());
//!
//! let c = periodic::census(2, 4, &periodic::WorkBudget::default(), 1).unwrap();
//! assert_eq!(c.neutral, 24);
//! ```

pub mod cli;
pub mod error;
pub mod harness;
pub mod krieger;
pub mod observable;
pub mod output;
pub mod periodic;
pub mod reduce;
pub mod symbol;
pub mod thermo;

pub use error::{Error, Result};
pub use observable::Observable;
pub use reduce::{height_profile, reduce, reduced_concat, HeightProfile, ReducedForm};
pub use symbol::{Bracket, Symbol, Word};
