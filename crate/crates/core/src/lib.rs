pub mod catalog;
pub mod classify;
pub mod cli;
pub mod curve;
pub mod error;
pub mod existence;
pub mod export;
pub mod grid;
pub mod metric;
pub(crate) mod poly;
pub mod quadrature;
pub mod surface;
