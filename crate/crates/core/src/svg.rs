//! SVG drawings of graph embeddings.
//!
//! Output is byte-stable for a given input: coordinates are scaled into a
//! fixed 800×800 canvas with a 5% margin, y pointing up, and printed with
//! three decimals.

use std::fmt::Write as _;
use std::path::Path;

use crate::embedding::{Embedding, Scope};
use crate::error::{Error, Result};
use crate::graph::{BoundaryFace, Graph};

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 0.05;

struct Frame {
    lo: [f64; 2],
    scale: f64,
    offset: [f64; 2],
}

impl Frame {
    fn fit(coords: &[[f64; 2]]) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Input("nothing to draw".into()));
        }
        if coords.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(Error::Input("coordinates must be finite".into()));
        }
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in coords {
            for d in 0..2 {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        let inner = CANVAS * (1.0 - 2.0 * MARGIN);
        let scale = if span > 0.0 { inner / span } else { 1.0 };
        // center the drawing inside the margins
        let offset = [
            CANVAS * MARGIN + 0.5 * (inner - scale * (hi[0] - lo[0])),
            CANVAS * MARGIN + 0.5 * (inner - scale * (hi[1] - lo[1])),
        ];
        Ok(Self { lo, scale, offset })
    }

    fn map(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.offset[0] + self.scale * (p[0] - self.lo[0]),
            CANVAS - (self.offset[1] + self.scale * (p[1] - self.lo[1])),
        ]
    }
}

fn header(s: &mut String) {
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn polygon(s: &mut String, frame: &Frame, pts: impl Iterator<Item = [f64; 2]>) {
    s.push_str(r##"<polygon fill="none" stroke="#c0392b" stroke-width="2.5" stroke-linejoin="round" points=""##);
    for (i, p) in pts.enumerate() {
        let q = frame.map(p);
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{:.3},{:.3}", q[0], q[1]);
    }
    s.push_str("\"/>\n");
}

/// Draws `g` with a full-scope embedding `x`, edges as line segments and the
/// boundary cycle, if given, as an emphasized closed polyline. A
/// boundary-scope `x` is drawn as its closed polygon only.
pub fn render_svg(g: &Graph, x: &Embedding, boundary: Option<&BoundaryFace>) -> Result<String> {
    let frame = Frame::fit(&x.coords)?;
    let mut s = String::new();
    header(&mut s);
    match x.scope {
        Scope::Full => {
            if x.len() != g.vertex_count() {
                return Err(Error::Input(format!(
                    "embedding has {} rows, graph has {} vertices",
                    x.len(),
                    g.vertex_count()
                )));
            }
            s.push_str("<g stroke=\"#34495e\" stroke-width=\"1\">\n");
            for &(u, v) in g.edges() {
                let (a, b) = (frame.map(x.coords[u]), frame.map(x.coords[v]));
                let _ = writeln!(
                    s,
                    r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
                    a[0], a[1], b[0], b[1]
                );
            }
            s.push_str("</g>\n");
            if let Some(b) = boundary {
                if b.vertices().iter().any(|&v| v >= x.len()) {
                    return Err(Error::Input("boundary vertex outside the embedding".into()));
                }
                polygon(&mut s, &frame, b.vertices().iter().map(|&v| x.coords[v]));
            }
        }
        Scope::Boundary => polygon(&mut s, &frame, x.coords.iter().copied()),
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// [`render_svg`] written to `path`.
pub fn write_svg(path: impl AsRef<Path>, g: &Graph, x: &Embedding, boundary: Option<&BoundaryFace>) -> Result<()> {
    std::fs::write(path, render_svg(g, x, boundary)?)?;
    Ok(())
}
