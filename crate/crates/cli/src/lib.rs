//! Command-line front end: graph construction, solvers, verification
//! suites, reports and the certificate cache.

pub mod app;
pub mod cache;
pub mod expr;
pub mod output;

pub use app::{run, Cli};
pub use cache::{Cache, CacheEntry, Certificate};
pub use expr::{parse_expression, Expr, ParseError};
