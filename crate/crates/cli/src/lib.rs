//! Library half of the `normone` command-line tool.

pub mod cache;
pub mod commands;
pub mod parse;
pub mod record;
