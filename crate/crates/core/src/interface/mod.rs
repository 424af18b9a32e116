//! Renderers and the structured game record.

pub mod record;
pub mod render;

pub use record::{GameRecord, SCHEMA_VERSION};
pub use render::{render_ascii, render_latex};
