//! Coefficient rings: `Z[t]`, truncated `q`-series, and truncated formal exponentials.

mod formal;
mod poly;
mod qseries;

pub use formal::FormalSeries;
pub use poly::Poly;
pub use qseries::{pochhammer, QSeries};
