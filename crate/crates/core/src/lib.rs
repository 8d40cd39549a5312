//! Exact formal power series, exponential polynomials and certified interval
//! enclosures, together with checkers for the identities, divisibility laws and
//! inequalities that drive two formal-power-series proofs that `e` is
//! transcendental.
//!
//! Everything here is exact: scalars are arbitrary-precision rationals, values
//! of exponential polynomials at rational points live in [`ENum`] (rational
//! combinations of `e^q`), and the only numerics are interval enclosures with
//! rational endpoints.

pub mod check;
pub mod error;
pub mod exactnum;
pub mod exppoly;
pub mod hilbert;
pub mod rational;
pub mod series;
pub mod suites;

pub use check::{Check, Outcome};
pub use error::{Error, Result};
pub use exactnum::{enclose_enum, enclose_exp, ENum, Int, Ival, Rat};
pub use hilbert::{HilbertInstance, HilbertReport};
pub use rational::{BbrInstance, PartialFractions, RatFun, VTable};
pub use series::{Coeff, Poly, TruncSeries};
