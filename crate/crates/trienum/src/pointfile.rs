//! The point-set file format: UTF-8 text, first data line is the point
//! count, then one `x y` pair of decimal integers per line. Lines starting
//! with `#` are comments. Index order in the file is the canonical
//! labeling.

use crate::geom::{GeomError, Point, PointSet};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PointFileError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("expected {expected} points, file has {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

pub fn parse_point_file(text: &str) -> Result<PointSet, PointFileError> {
    let mut data_lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());
    let (line_no, header) = data_lines.next().ok_or(PointFileError::Malformed {
        line: 0,
        msg: "empty file".into(),
    })?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| PointFileError::Malformed {
            line: line_no + 1,
            msg: format!("expected point count, got {header:?}"),
        })?;
    let mut points = Vec::with_capacity(n);
    for (line_no, line) in data_lines {
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<i64, PointFileError> {
            tok.ok_or(PointFileError::Malformed {
                line: line_no + 1,
                msg: "expected `x y`".into(),
            })?
            .parse()
            .map_err(|_| PointFileError::Malformed {
                line: line_no + 1,
                msg: format!("bad coordinate in {line:?}"),
            })
        };
        let x = parse(it.next())?;
        let y = parse(it.next())?;
        if it.next().is_some() {
            return Err(PointFileError::Malformed {
                line: line_no + 1,
                msg: format!("trailing tokens in {line:?}"),
            });
        }
        points.push(Point::new(x, y));
    }
    if points.len() != n {
        return Err(PointFileError::CountMismatch {
            expected: n,
            found: points.len(),
        });
    }
    Ok(PointSet::new(points)?)
}

/// Render a point set in the file format, with optional leading comments.
pub fn format_point_file(points: &PointSet, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&points.len().to_string());
    out.push('\n');
    for p in points.points() {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

/// Hex SHA-256 of the raw file bytes; the identity of an input in reports
/// and the results cache.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
