//! Command-line front end: argument parsing, result caching and the
//! embedded copies of the published tables.

pub mod app;
pub mod cache;
pub mod tables;

pub use app::{run, Outcome};
