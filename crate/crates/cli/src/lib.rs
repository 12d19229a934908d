//! Library surface of the command-line front end: configuration loading and
//! the ordered JSON writer, shared with the integration tests.

pub mod config;
pub mod jout;
