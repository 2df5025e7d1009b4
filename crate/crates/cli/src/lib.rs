//! Library surface of the `gcorr` CLI: the JSON document schema, element
//! literals, report rendering, and the subcommand implementations.

pub mod commands;
pub mod literal;
pub mod report;
pub mod schema;
