//! Polynomials and truncated formal power series over exact scalars.

mod coeff;
mod poly;
mod trunc;

pub use coeff::Coeff;
pub use poly::{poly_ops, Poly, PolyOp, PolyOpOutput};
pub use trunc::{exp_series, TruncSeries};
