//! Spec-file parsing, command drivers and JSON reports for the `curvkit` binary.

pub mod commands;
pub mod config;
pub mod report;
pub mod specfile;
