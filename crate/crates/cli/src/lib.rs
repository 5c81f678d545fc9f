//! Command-line front end: expression parsing and subcommand dispatch.

pub mod app;
pub mod expr;
