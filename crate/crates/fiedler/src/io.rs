//! Plain-text readers and writers for graphs, label vectors, and datasets.
//!
//! All readers are strict: they accept exactly what the writers emit and
//! report the first offending line by number. Graph files are canonical
//! (`u < v`, edges in ascending lexicographic order, no duplicates), so a
//! file is valid iff it round-trips byte for byte.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::knn::{DatasetMatrix, Provenance};

/// Full-precision float formatting used by every text output. 17 significant
/// digits, enough for exact f64 round-trips.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Writes `n <count>` then one `u v` line per edge in ascending order.
pub fn write_graph<W: Write>(mut w: W, graph: &LabeledGraph) -> Result<()> {
    writeln!(w, "n {}", graph.num_vertices())?;
    for (u, v) in graph.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

/// Parses the canonical edge-list format. Labels are not part of the file;
/// attach them afterwards with [`LabeledGraph::with_labels`].
pub fn read_graph<R: BufRead>(r: R) -> Result<LabeledGraph> {
    let mut lines = r.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file, expected `n <count>` header"))?;
    let header = header?;
    let mut tokens = header.split_whitespace();
    let n: usize = match (tokens.next(), tokens.next(), tokens.next()) {
        (Some("n"), Some(count), None) => count
            .parse()
            .map_err(|_| parse_err(1, format!("invalid vertex count `{count}`")))?,
        _ => return Err(parse_err(1, format!("expected `n <count>`, got `{header}`"))),
    };

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line?;
        let mut tokens = line.split_whitespace();
        let (u, v) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => {
                let u: usize = a
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("invalid vertex `{a}`")))?;
                let v: usize = b
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("invalid vertex `{b}`")))?;
                (u, v)
            }
            _ => return Err(parse_err(lineno, format!("expected `u v`, got `{line}`"))),
        };
        if u >= v {
            return Err(parse_err(
                lineno,
                format!("endpoints must satisfy u < v, got {u} {v}"),
            ));
        }
        if v >= n {
            return Err(parse_err(
                lineno,
                format!("vertex {v} out of range for n = {n}"),
            ));
        }
        if let Some(&prev) = edges.last() {
            if prev >= (u, v) {
                return Err(parse_err(
                    lineno,
                    format!(
                        "edges must be strictly ascending, {} {} follows {} {}",
                        u, v, prev.0, prev.1
                    ),
                ));
            }
        }
        edges.push((u, v));
    }
    LabeledGraph::from_edges(n, &edges, None)
}

/// One `+1` or `-1` line per vertex.
pub fn write_labels<W: Write>(mut w: W, labels: &[i8]) -> Result<()> {
    for &l in labels {
        writeln!(w, "{}", if l == 1 { "+1" } else { "-1" })?;
    }
    Ok(())
}

pub fn read_labels<R: BufRead>(r: R) -> Result<Vec<i8>> {
    let mut labels = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        match line.trim() {
            "+1" => labels.push(1),
            "-1" => labels.push(-1),
            other => {
                return Err(parse_err(
                    idx + 1,
                    format!("expected `+1` or `-1`, got `{other}`"),
                ))
            }
        }
    }
    Ok(labels)
}

/// Comma-separated rows, features first and the ±1 label last. Comment
/// lines start with `#`. Features use full-precision formatting.
pub fn write_dataset_csv<W: Write>(mut w: W, data: &DatasetMatrix) -> Result<()> {
    for (row, &label) in data.rows().iter().zip(data.labels()) {
        for v in row {
            write!(w, "{},", format_f64(*v))?;
        }
        writeln!(w, "{}", if label == 1 { "+1" } else { "-1" })?;
    }
    Ok(())
}

pub fn read_dataset_csv<R: BufRead>(r: R) -> Result<DatasetMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<i8> = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        if line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() < 2 {
            return Err(parse_err(
                lineno,
                "expected at least one feature and a label",
            ));
        }
        let label = match *fields.last().unwrap() {
            "+1" | "1" => 1i8,
            "-1" => -1i8,
            other => return Err(parse_err(lineno, format!("invalid label `{other}`"))),
        };
        let mut row = Vec::with_capacity(fields.len() - 1);
        for field in &fields[..fields.len() - 1] {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_err(lineno, format!("invalid feature `{field}`")))?;
            if !v.is_finite() {
                return Err(parse_err(lineno, format!("non-finite feature `{field}`")));
            }
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(parse_err(
                    lineno,
                    format!("row has {} features, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
        labels.push(label);
    }
    DatasetMatrix::new(rows, labels, Provenance::Ingested)
}

pub fn load_graph(path: &Path) -> Result<LabeledGraph> {
    read_graph(BufReader::new(File::open(path)?))
}

pub fn save_graph(path: &Path, graph: &LabeledGraph) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_graph(&mut w, graph)?;
    w.flush()?;
    Ok(())
}

pub fn load_labels(path: &Path) -> Result<Vec<i8>> {
    read_labels(BufReader::new(File::open(path)?))
}

pub fn save_labels(path: &Path, labels: &[i8]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_labels(&mut w, labels)?;
    w.flush()?;
    Ok(())
}

pub fn load_dataset(path: &Path) -> Result<DatasetMatrix> {
    read_dataset_csv(BufReader::new(File::open(path)?))
}

pub fn save_dataset(path: &Path, data: &DatasetMatrix) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_dataset_csv(&mut w, data)?;
    w.flush()?;
    Ok(())
}
