//! Subcommand implementations and the JSON records they emit.

pub mod cache;
pub mod commands;
pub mod record;
