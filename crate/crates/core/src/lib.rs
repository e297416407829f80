//! Integral closure of ideals and modules, liftable integral closure and
//! integral test ideals over polynomial rings, Artinian monomial quotients and
//! numerical semigroup rings, with re-checkable integrality certificates.

pub mod algebra;
pub mod certificate;
pub mod error;
pub mod ideal_closure;
pub mod module_closure;
pub mod par;
pub mod parse;
pub mod props;
pub mod schema;
pub mod search;
pub mod test_ideals;
pub mod torsionless;

pub use error::{Error, Result};
