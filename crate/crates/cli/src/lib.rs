//! Command-line driver around `zhu-core`: configuration, report rendering and the on-disk cache.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;
