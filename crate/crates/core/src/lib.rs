//! Exact symbolic computations in the strata algebra of moduli spaces of stable
//! maps: graph enumeration, decorated products, stabilization pullbacks,
//! forgetful pushforwards and twisted double ramification relations.

pub mod cli;
pub mod coeff;
pub mod doc;
pub mod dr;
pub mod error;
pub mod graph;
pub mod interp;
pub mod latex;
pub mod oracle;
pub mod par;
pub mod product;
pub mod stabilization;
pub mod strata;
pub mod target;

pub use coeff::{Poly, Q};
pub use error::{Error, Result};
pub use graph::{Ambient, StableGraph};
pub use target::{ChowElement, CurveClass, Target};
