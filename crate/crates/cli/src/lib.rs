//! Command-line front end and graph serialization for `a1fib-core`.

pub mod app;
pub mod formats;
