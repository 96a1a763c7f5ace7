//! File formats and rendering for `heisenberg-sft` windows.

pub mod format;
pub mod svg;

pub use format::{load, save, ParseError};
pub use svg::{render, Plane, RenderError};
