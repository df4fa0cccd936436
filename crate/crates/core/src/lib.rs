//! Exact computation of Kostka-Foulkes polynomials, Hall-Littlewood functions
//! and affine t-string functions for finite and untwisted affine Kac-Moody algebras.

pub mod affine_strings;
pub mod cartan;
pub mod error;
pub mod hall_littlewood;
pub mod kostant;
pub mod kostka;
pub mod linalg;
pub mod report;
pub mod roots;
pub mod series;
pub mod weight;
pub mod weyl;

pub use affine_strings::StringFunction;
pub use cartan::{CartanDatum, Kind};
pub use error::{Error, Result};
pub use hall_littlewood::HLExpansion;
pub use roots::RootSlice;
pub use series::{pochhammer, FormalSeries, Poly, QSeries};
pub use kostant::{t_partition, KostantTable};
pub use kostka::{KostkaEngine, KostkaTable, WeightMultiplicities};
pub use report::{CheckReport, Comparison, Mismatch};
pub use weight::{RootVector, Weight};
pub use weyl::{Dominant, OrbitPoint};
