//! Library half of the `padic` calculator: the expression parser and the
//! evaluator, exposed so the test suites can exercise them directly. The
//! binary in `main.rs` is a thin argument-handling shell over these.

pub mod eval;
pub mod parser;

pub use eval::{eval, run, CliConfig, ConfigError, Evaluated, OutputFormat, Rendered};
pub use parser::{parse, Expr, ParseError};
