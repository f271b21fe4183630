//! Pairwise matrices as CSV tables and SVG heatmaps.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Square matrix over graph labels; row = first graph of the pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairMatrix {
    pub labels: Vec<String>,
    /// `None` where the value is undefined.
    pub cells: Vec<Vec<Option<f64>>>,
}

impl PairMatrix {
    pub fn new(labels: Vec<String>, fill: impl Fn(usize, usize) -> Option<f64>) -> Self {
        let n = labels.len();
        let cells = (0..n).map(|i| (0..n).map(|j| fill(i, j)).collect()).collect();
        Self { labels, cells }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.cells.len() == self.labels.len() && self.cells.iter().all(|r| r.len() == self.labels.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeatmapFormat {
    Csv,
    Svg,
}

#[derive(Debug, Error)]
pub enum MatrixParseError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("matrix is not square")]
    NotSquare,
    #[error("row {row}: label {found:?} does not match column {expected:?}")]
    LabelMismatch {
        row: usize,
        expected: String,
        found: String,
    },
    #[error("row {row}, column {col}: {value:?} is not a number")]
    BadNumber { row: usize, col: usize, value: String },
}

pub fn render_heatmap(matrix: &PairMatrix, format: HeatmapFormat) -> Vec<u8> {
    match format {
        HeatmapFormat::Csv => render_csv(matrix),
        HeatmapFormat::Svg => render_svg(matrix).into_bytes(),
    }
}

fn render_csv(matrix: &PairMatrix) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once(String::new()).chain(matrix.labels.iter().cloned());
    w.write_record(header).expect("in-memory write");
    for (label, row) in matrix.labels.iter().zip(&matrix.cells) {
        let cells = row.iter().map(|c| c.map(|v| format!("{v:.4}")).unwrap_or_default());
        w.write_record(std::iter::once(label.clone()).chain(cells))
            .expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Reads a matrix written by [`render_heatmap`] in CSV form.
pub fn parse_matrix_csv(data: &[u8]) -> Result<PairMatrix, MatrixParseError> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(data);
    let mut records = r.records();
    let header = match records.next() {
        Some(h) => h?,
        None => {
            return Ok(PairMatrix {
                labels: Vec::new(),
                cells: Vec::new(),
            })
        }
    };
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut cells = Vec::new();
    for (row, record) in records.enumerate() {
        let record = record?;
        if record.len() != labels.len() + 1 {
            return Err(MatrixParseError::NotSquare);
        }
        let found = &record[0];
        if labels.get(row).map(String::as_str) != Some(found) {
            return Err(MatrixParseError::LabelMismatch {
                row,
                expected: labels.get(row).cloned().unwrap_or_default(),
                found: found.to_string(),
            });
        }
        let values = record
            .iter()
            .skip(1)
            .enumerate()
            .map(|(col, v)| {
                if v.is_empty() {
                    Ok(None)
                } else {
                    v.parse().map(Some).map_err(|_| MatrixParseError::BadNumber {
                        row,
                        col,
                        value: v.to_string(),
                    })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        cells.push(values);
    }
    if cells.len() != labels.len() {
        return Err(MatrixParseError::NotSquare);
    }
    Ok(PairMatrix { labels, cells })
}

const CELL: usize = 56;
const MARGIN: usize = 120;
const LIGHT: [f64; 3] = [247.0, 251.0, 255.0];
const DARK: [f64; 3] = [8.0, 48.0, 107.0];

/// Linear interpolation from light (0) to dark (1).
pub fn cell_color(value: f64) -> String {
    let t = value.clamp(0.0, 1.0);
    let c: Vec<u8> = LIGHT
        .iter()
        .zip(DARK)
        .map(|(l, d)| (l + (d - l) * t).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn render_svg(matrix: &PairMatrix) -> String {
    let n = matrix.len();
    let size = MARGIN + n * CELL + 10;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}" font-family="sans-serif" font-size="11">"#
    );
    s.push_str(
        r##"<defs><pattern id="undefined" width="6" height="6" patternUnits="userSpaceOnUse" patternTransform="rotate(45)"><rect width="6" height="6" fill="#ffffff"/><line x1="0" y1="0" x2="0" y2="6" stroke="#999999" stroke-width="2"/></pattern></defs>"##,
    );
    s.push('\n');
    for (i, label) in matrix.labels.iter().enumerate() {
        let label = escape_xml(label);
        let mid = MARGIN + i * CELL + CELL / 2;
        let _ = writeln!(
            s,
            r#"<text class="row-label" x="{}" y="{mid}" text-anchor="end" dominant-baseline="middle">{label}</text>"#,
            MARGIN - 6
        );
        let _ = writeln!(
            s,
            r#"<text class="col-label" x="{mid}" y="{}" text-anchor="start" transform="rotate(-45 {mid} {})">{label}</text>"#,
            MARGIN - 6,
            MARGIN - 6
        );
    }
    for (i, row) in matrix.cells.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let (x, y) = (MARGIN + j * CELL, MARGIN + i * CELL);
            match cell {
                Some(v) => {
                    let text = if *v > 0.5 { "#ffffff" } else { "#000000" };
                    let _ = writeln!(
                        s,
                        r##"<rect class="cell" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}" stroke="#ffffff"/>"##,
                        cell_color(*v)
                    );
                    let _ = writeln!(
                        s,
                        r#"<text class="value" x="{}" y="{}" text-anchor="middle" dominant-baseline="middle" fill="{text}">{v:.2}</text>"#,
                        x + CELL / 2,
                        y + CELL / 2
                    );
                }
                None => {
                    let _ = writeln!(
                        s,
                        r##"<rect class="cell undefined" x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="url(#undefined)" stroke="#ffffff"/>"##
                    );
                }
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> PairMatrix {
        PairMatrix::new((0..n).map(|i| format!("G{i}")).collect(), |i, j| {
            if i == j + 1 {
                None
            } else {
                Some(((i * 7 + j * 3) % 10) as f64 / 8.0)
            }
        })
    }

    #[test]
    fn csv_round_trip() {
        let m = sample(5);
        let bytes = render_heatmap(&m, HeatmapFormat::Csv);
        assert_eq!(parse_matrix_csv(&bytes).unwrap(), m);
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.starts_with(",G0,G1,G2,G3,G4\n"));
        assert!(text.contains("G1,,"));
    }

    #[test]
    fn single_zero_cell_is_light() {
        let m = PairMatrix::new(vec!["A".into()], |_, _| Some(0.0));
        let svg = String::from_utf8(render_heatmap(&m, HeatmapFormat::Svg)).unwrap();
        assert_eq!(svg.matches(r#"<rect class="cell""#).count(), 1);
        assert!(svg.contains(&format!("fill=\"{}\"", cell_color(0.0))));
        assert_eq!(cell_color(0.0), "#f7fbff");
        assert_eq!(cell_color(1.0), "#08306b");
    }

    #[test]
    fn svg_has_one_cell_per_pair() {
        let svg = String::from_utf8(render_heatmap(&sample(8), HeatmapFormat::Svg)).unwrap();
        assert_eq!(svg.matches(r#"<rect class="cell"#).count(), 64);
        assert_eq!(svg.matches("cell undefined").count(), 7);
        assert_eq!(svg.matches(r#"class="row-label""#).count(), 8);
        assert_eq!(svg.matches(r#"class="value""#).count(), 57);
    }

    #[test]
    fn labels_are_escaped() {
        let m = PairMatrix::new(vec!["a<b>&c".into()], |_, _| Some(1.0));
        let svg = String::from_utf8(render_heatmap(&m, HeatmapFormat::Svg)).unwrap();
        assert!(svg.contains("a&lt;b&gt;&amp;c"));
        assert!(parse_matrix_csv(&render_heatmap(&m, HeatmapFormat::Csv)).unwrap() == m);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            parse_matrix_csv(b",A,B\nA,1,0\n"),
            Err(MatrixParseError::NotSquare)
        ));
        assert!(matches!(
            parse_matrix_csv(b",A\nB,1\n"),
            Err(MatrixParseError::LabelMismatch { .. })
        ));
        assert!(matches!(
            parse_matrix_csv(b",A\nA,x\n"),
            Err(MatrixParseError::BadNumber { .. })
        ));
    }
}
