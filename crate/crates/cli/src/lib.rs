//! Batch driver for the dayconv engine: a small declaration language for
//! categories, monoidal structures, functors and diagrams, and commands that
//! compute with them and certify the engine's theorems.

pub mod commands;
pub mod error;
pub mod lexer;
pub mod report;
pub mod resolve;
pub mod spec;
pub mod suite;

pub use commands::{run_command, Command, Flags};
pub use error::{CliError, Pos};
pub use report::{Check, Report, Status};
pub use resolve::{parse_spec, Workspace};
pub use spec::{parse_document, SpecDocument};
