//! Command-line front end for `wpslab-core`.

pub mod args;
pub mod commands;
pub mod document;
pub mod render;
