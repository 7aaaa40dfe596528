//! Point CSV files: comma separators, '.' decimals, LF newlines. Floats
//! are written with Rust's shortest round-trip formatting, so
//! load(store(points)) reproduces the exact values.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::kernels::PointSet;

pub fn write_points(path: &Path, points: &PointSet, header: bool) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut w = BufWriter::new(file);
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        source: e,
    };
    if header {
        let names: Vec<String> = (0..points.dim()).map(|t| format!("x{t}")).collect();
        writeln!(w, "{}", names.join(",")).map_err(io_err)?;
    }
    for i in 0..points.n() {
        let row: Vec<String> = points.row(i).iter().map(|v| format!("{v}")).collect();
        writeln!(w, "{}", row.join(",")).map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    let file = File::open(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let reader = BufReader::new(file);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        // a leading header row is tolerated and skipped
        if lineno == 0 && trimmed.split(',').any(|f| f.trim().parse::<f64>().is_err()) {
            continue;
        }
        let mut row = Vec::new();
        for field in trimmed.split(',') {
            let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                path: path.display().to_string(),
                line: lineno + 1,
                message: format!("not a number: {field:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    line: lineno + 1,
                    message: format!("non-finite value: {field:?}"),
                });
            }
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    line: lineno + 1,
                    message: format!(
                        "expected {} columns, found {}",
                        first.len(),
                        row.len()
                    ),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            path: path.display().to_string(),
            line: 1,
            message: "no data rows".into(),
        });
    }
    PointSet::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{generate, DatasetSpec, Generator};

    #[test]
    fn roundtrip_exact() {
        let spec = DatasetSpec {
            generator: Generator::GaussianMixture {
                clusters: 3,
                sigma: 0.7,
            },
            n: 64,
            dim: 5,
            seed: 1234,
        };
        let points = generate(&spec).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.csv");
        write_points(&path, &points, false).unwrap();
        let back = read_points(&path).unwrap();
        assert_eq!(points, back);

        // header form round-trips too
        write_points(&path, &points, true).unwrap();
        let back = read_points(&path).unwrap();
        assert_eq!(points, back);
    }

    #[test]
    fn parse_error_carries_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "1.0,2.0\n3.0,oops\n").unwrap();
        match read_points(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn ragged_rows_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ragged.csv");
        std::fs::write(&path, "1.0,2.0\n3.0\n").unwrap();
        assert!(read_points(&path).is_err());
    }
}
