//! Exact computer-algebra engine for the center problem of the ODE
//! dv/dx = Σ a_i(x) v^(i+1): shuffle and Faà di Bruno Hopf algebras,
//! displacement polynomials, Chen iterated integrals, and first return maps,
//! all over arbitrary-precision rationals.

pub mod displacement;
pub mod dual;
pub mod error;
pub mod exact;
pub mod fdb;
pub mod fixtures;
pub mod oprep;
pub mod paths;
pub mod report;
pub mod returnmap;
pub mod shuffle;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use exact::{MultiPoly, Rat, Scalar, UniPoly, Var};
pub use fdb::PowerSeriesMap;
pub use report::IdentityReport;
pub use shuffle::{NcPoly, ShuffleView, TPoly, WordTensor};
pub use dual::TruncatedFunctional;
pub use paths::{CoeffPath, PiecewisePolyFn};
pub use words::Word;
