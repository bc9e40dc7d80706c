//! Text formats: the graph edge list and the `vertex,x,y` layout CSV.
//!
//! Both are 1-based on disk. Lines starting with `#` are comments; in the
//! graph format a `#` also starts a trailing comment.
//!
//! Graph format:
//!
//! ```text
//! # optional comments
//! n m
//! u v        (m lines)
//! boundary: i1 i2 ... ik   (optional)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{BoundaryFace, Graph};

/// Largest vertex count accepted from a file.
pub const MAX_VERTICES: usize = 1 << 24;

/// A parsed graph file.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphFile {
    pub graph: Graph,
    pub boundary: Option<BoundaryFace>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(tok: &str, n: usize, line: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("expected a vertex number, found {tok:?}")))?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Parses the graph text format.
pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n: usize = head[0]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad vertex count {:?}", head[0])))?;
    let m: usize = head[1]
        .parse()
        .map_err(|_| parse_err(hline, format!("bad edge count {:?}", head[1])))?;
    if n == 0 || n > MAX_VERTICES {
        return Err(parse_err(hline, format!("vertex count {n} outside 1..={MAX_VERTICES}")));
    }

    let mut edges = Vec::new();
    let mut last = hline;
    for _ in 0..m {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {m} edges, found {}", edges.len())))?;
        last = ln;
        let tok: Vec<&str> = l.split_whitespace().collect();
        if tok.len() != 2 || tok[0].starts_with("boundary") {
            return Err(parse_err(ln, format!("expected an edge `u v`, found {l:?}")));
        }
        let u = parse_index(tok[0], n, ln)?;
        let v = parse_index(tok[1], n, ln)?;
        if u == v {
            return Err(parse_err(ln, format!("self-loop at vertex {}", u + 1)));
        }
        edges.push((u, v));
    }
    let graph = Graph::from_edges(n, edges).map_err(|e| parse_err(hline, e.to_string()))?;

    let mut boundary = None;
    if let Some((ln, l)) = lines.next() {
        let rest = l
            .strip_prefix("boundary:")
            .ok_or_else(|| parse_err(ln, format!("unexpected line {l:?} after the edge list")))?;
        let cycle = rest
            .split_whitespace()
            .map(|t| parse_index(t, n, ln))
            .collect::<Result<Vec<_>>>()?;
        boundary = Some(BoundaryFace::new(cycle, n).map_err(|e| parse_err(ln, e.to_string()))?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "unexpected content after the boundary line"));
    }
    Ok(GraphFile { graph, boundary })
}

/// Writes the graph text format.
pub fn format_graph(g: &Graph, boundary: Option<&BoundaryFace>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{} {}", u + 1, v + 1);
    }
    if let Some(b) = boundary {
        s.push_str("boundary:");
        for &v in b.vertices() {
            let _ = write!(s, " {}", v + 1);
        }
        s.push('\n');
    }
    s
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<GraphFile> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// Parses a `vertex,x,y` layout. Rows may come in any order but the vertex
/// column must be a permutation of `1..=rows`; the result is ordered by
/// vertex.
pub fn parse_layout(text: &str) -> Result<Vec<[f64; 2]>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line() as usize);
        parse_err(line, e.to_string())
    };
    let header = rdr.headers().map_err(csv_err)?.clone();
    let header_line = rdr.position().line() as usize;
    if header.iter().collect::<Vec<_>>() != ["vertex", "x", "y"] {
        return Err(parse_err(header_line.max(1), "header must be `vertex,x,y`"));
    }
    let mut rows: Vec<(usize, usize, [f64; 2])> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != 3 {
            return Err(parse_err(line, format!("expected 3 fields, found {}", rec.len())));
        }
        let v: usize = rec[0]
            .parse()
            .map_err(|_| parse_err(line, format!("bad vertex {:?}", &rec[0])))?;
        let mut xy = [0.0f64; 2];
        for c in 0..2 {
            xy[c] = rec[c + 1]
                .parse()
                .map_err(|_| parse_err(line, format!("bad coordinate {:?}", &rec[c + 1])))?;
            if !xy[c].is_finite() {
                return Err(parse_err(line, "coordinates must be finite"));
            }
        }
        rows.push((v, line, xy));
    }
    let mut out = vec![None; rows.len()];
    for &(v, line, xy) in &rows {
        if v == 0 || v > rows.len() {
            return Err(parse_err(line, format!("vertex {v} outside 1..={}", rows.len())));
        }
        if out[v - 1].replace(xy).is_some() {
            return Err(parse_err(line, format!("vertex {v} listed twice")));
        }
    }
    Ok(out.into_iter().map(|r| r.expect("permutation checked")).collect())
}

/// Writes a layout with 17 significant digits, preceded by `# ` comment
/// lines.
pub fn format_layout(coords: &[[f64; 2]], comments: &[String]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "# {c}");
    }
    s.push_str("vertex,x,y\n");
    for (i, p) in coords.iter().enumerate() {
        let _ = writeln!(s, "{},{:.16e},{:.16e}", i + 1, p[0], p[1]);
    }
    s
}

pub fn read_layout(path: impl AsRef<Path>) -> Result<Vec<[f64; 2]>> {
    parse_layout(&std::fs::read_to_string(path)?)
}
