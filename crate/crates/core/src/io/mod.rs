//! Text formats: presentations, move traces, and SVG drawings.

mod format;
mod layout;
mod svg;
mod trace;

pub use format::{parse, serialize};
pub use layout::barycentric;

/// Layout coordinates as used by the renderer.
pub type Point = layout::Point<f64>;
pub use svg::{render_svg, SvgOptions};
pub use trace::{format_trace, parse_trace};
