//! Command-line companion to the classification engine: stored-table
//! parsing and instantiation, text and JSON rendering, the verification
//! sweep, and golden-table comparison.

pub mod commands;
pub mod expr;
pub mod golden;
pub mod model;
pub mod render;
