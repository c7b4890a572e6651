//! IO for `ldt`: expression parsing, series formats and the command line.

pub mod cli;
pub mod expr;
pub mod format;
