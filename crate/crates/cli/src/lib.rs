//! Command-line driver for `surfgrp`.

pub mod commands;
pub mod error;
pub mod expr;
pub mod instance;
pub mod report;
pub mod sample;

pub use expr::{ActionExpr, ElemWord, GroupExpr};
pub use report::RunReport;
