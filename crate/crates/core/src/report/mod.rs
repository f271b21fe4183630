//! Report emitters: sunburst hierarchy data and pairwise heatmaps.

mod heatmap;
mod sunburst;

pub use heatmap::{cell_color, parse_matrix_csv, render_heatmap, HeatmapFormat, MatrixParseError, PairMatrix};
pub use sunburst::{build_sunburst, SunburstNode};
