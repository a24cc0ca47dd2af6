//! Solvers for the Maker-Maker domination game.

pub mod bounded;
pub mod closed_form;
pub mod engine;
pub mod forest;
pub mod generate;
pub mod graph;
pub mod http;
pub mod instance;
pub mod position;
pub mod service;
pub mod solve;
