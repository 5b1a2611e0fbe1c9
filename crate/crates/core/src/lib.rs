//! Biber-style multidimensional stylometry.
//!
//! The pipeline is `tokenize` → `tag` → [`rules::Engine::annotate`] →
//! [`profiler`] → [`analytics`] / [`verify`]. Everything operates on the flat
//! Penn-tagged token stream; no parse trees are involved.

pub mod analytics;
pub mod io;
pub mod pipeline;
pub mod pos;
pub mod profiler;
pub mod rules;
pub mod synthetic;
pub mod types;
pub mod verify;

pub use types::*;
