//! Library side of the `isozeta` command-line tool.

pub mod commands;
pub mod lpoly;
