//! Exact weighted counts of tilings of the `2×2×n` board by unit cubes
//! (weight `a`) and `1×1×2` bricks (weight `b`).
//!
//! Three independent backends compute the same polynomials: exhaustive
//! enumeration ([`geometry`]), a layer profile DP ([`layerdp`]) and linear
//! recurrences derived from transfer systems ([`recurrences`]). The
//! [`identities`] engine checks the breakability identities, [`verify`]
//! bundles the cross-checks and [`cli`] exposes everything on the command
//! line.
//!
//! ```
//! use cubetile::bipoly::rat;
//! use cubetile::layerdp::LayerDp;
//!
//! let r3 = LayerDp::default().count(3);
//! assert_eq!(r3.eval(&rat(1), &rat(1)), rat(1511));
//! ```

pub mod bipoly;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod identities;
pub mod layerdp;
pub mod recurrences;
pub mod verify;

pub use bipoly::Poly2;
pub use error::{Error, Result};
