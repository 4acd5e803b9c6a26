//! Exact computer algebra for the two decategorifications of categorified
//! quantum sl2: the trace category and the idempotented integral current
//! algebra, with the supporting symmetric-function, bubble, q-algebra,
//! presentation-rewriting and Hochschild-homology machinery.

pub mod blm;
pub mod bubbles;
pub mod currentalg;
pub mod error;
pub mod hochschild;
pub mod oracle;
pub mod suites;
pub mod symfunc;
pub mod tracecat;
pub mod vpres;

pub use error::{Error, Result};
