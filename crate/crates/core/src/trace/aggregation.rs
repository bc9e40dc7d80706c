//! Validity checking for `M`-aggregations onto `G_{k,ℓ} ⊆ H ⊆ G*_{k,ℓ}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_gkl, BoundaryFace, Graph, ProductLayout};

/// A partition `a_* ∪ {a_{i,j}}` of `V(G)` together with the declared host
/// graph `H`. Aggregate `(i, j)` (0-based) is stored at
/// [`ProductLayout`] index `j·k + i`, and `host` uses the same ids.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregationPartition {
    pub k: usize,
    pub l: usize,
    pub aggregates: Vec<Vec<usize>>,
    pub star: Vec<usize>,
    pub host: Graph,
}

impl AggregationPartition {
    pub fn layout(&self) -> ProductLayout {
        ProductLayout { k: self.k, l: self.l }
    }

    /// Aggregate `(i, j)`, 0-based.
    pub fn aggregate(&self, i: usize, j: usize) -> &[usize] {
        &self.aggregates[j * self.k + i]
    }

    /// The trivial partition of `G_{k,ℓ}` itself: one singleton per vertex,
    /// empty `a_*`, `H = G_{k,ℓ}`.
    pub fn singletons(k: usize, l: usize) -> Result<Self> {
        let (host, _) = build_gkl(k, l, false)?;
        Ok(Self {
            k,
            l,
            aggregates: (0..k * l).map(|v| vec![v]).collect(),
            star: Vec::new(),
            host,
        })
    }
}

/// Aggregate label `(i, j)`, 1-based as in the definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Label {
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// One failed condition. Vertices are reported 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `H` does not contain `G_{k,ℓ}` or is not contained in `G*_{k,ℓ}`.
    HostOutOfRange { a: Label, b: Label, missing: bool },
    EmptyAggregate { label: Label },
    Disconnected { label: Label },
    Oversized { label: Label, size: usize },
    BoundaryOutsideFirstLayer { vertex: usize },
    FirstLayerMissesBoundary { label: Label },
    StarLeak { vertex: usize, neighbor: usize },
    MissingEdge { a: Label, b: Label },
    ExtraEdge { a: Label, b: Label },
}

impl Violation {
    /// Number of the definition condition that failed; 0 for the host
    /// precondition.
    pub fn condition(&self) -> u8 {
        match self {
            Violation::HostOutOfRange { .. } => 0,
            Violation::EmptyAggregate { .. } | Violation::Disconnected { .. } | Violation::Oversized { .. } => 1,
            Violation::BoundaryOutsideFirstLayer { .. } | Violation::FirstLayerMissesBoundary { .. } => 2,
            Violation::StarLeak { .. } => 3,
            Violation::MissingEdge { .. } | Violation::ExtraEdge { .. } => 4,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HostOutOfRange { a, b, missing: true } => {
                write!(f, "host graph lacks the G_kl edge {a}-{b}")
            }
            Violation::HostOutOfRange { a, b, missing: false } => {
                write!(f, "host edge {a}-{b} is not in G*_kl")
            }
            Violation::EmptyAggregate { label } => write!(f, "aggregate {label} is empty"),
            Violation::Disconnected { label } => write!(f, "aggregate {label} is not connected"),
            Violation::Oversized { label, size } => write!(f, "aggregate {label} has {size} vertices"),
            Violation::BoundaryOutsideFirstLayer { vertex } => {
                write!(f, "boundary vertex {vertex} is not in a first-layer aggregate")
            }
            Violation::FirstLayerMissesBoundary { label } => {
                write!(f, "aggregate {label} contains no boundary vertex")
            }
            Violation::StarLeak { vertex, neighbor } => {
                write!(f, "vertex {vertex} of a_* has neighbor {neighbor} outside the last layer")
            }
            Violation::MissingEdge { a, b } => write!(f, "host edge {a}-{b} has no graph edge"),
            Violation::ExtraEdge { a, b } => write!(f, "graph joins {a} and {b} but the host does not"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AggregationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl AggregationReport {
    /// Conditions that failed, sorted and deduplicated.
    pub fn failed_conditions(&self) -> Vec<u8> {
        let s: BTreeSet<u8> = self.violations.iter().map(Violation::condition).collect();
        s.into_iter().collect()
    }
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Checks whether `part.host` is an `M`-aggregation of `(g, gamma)`.
///
/// Returns an input error when the aggregates and `a_*` do not partition
/// `V(g)` or the host graph has the wrong size; every other failure is
/// collected into the report.
pub fn verify_m_aggregation(
    g: &Graph,
    gamma: &BoundaryFace,
    part: &AggregationPartition,
    m: usize,
) -> Result<AggregationReport> {
    let n = g.vertex_count();
    let (k, l) = (part.k, part.l);
    let lay = part.layout();
    let count = lay.vertex_count();
    if part.aggregates.len() != count {
        return Err(Error::Input(format!(
            "expected {count} aggregates for k = {k}, ℓ = {l}, got {}",
            part.aggregates.len()
        )));
    }
    if part.host.vertex_count() != count {
        return Err(Error::Input(format!(
            "host graph has {} vertices, expected {count}",
            part.host.vertex_count()
        )));
    }
    const STAR: usize = usize::MAX;
    let mut owner = vec![None; n];
    let members = part
        .aggregates
        .iter()
        .enumerate()
        .flat_map(|(a, vs)| vs.iter().map(move |&v| (a, v)))
        .chain(part.star.iter().map(|&v| (STAR, v)));
    for (a, v) in members {
        if v >= n {
            return Err(Error::Input(format!("vertex {} outside the graph", v + 1)));
        }
        if owner[v].replace(a).is_some() {
            return Err(Error::Input(format!("vertex {} is in two parts", v + 1)));
        }
    }
    if let Some(v) = owner.iter().position(Option::is_none) {
        return Err(Error::Input(format!("vertex {} is in no part", v + 1)));
    }
    let owner: Vec<usize> = owner.into_iter().map(|o| o.expect("covering checked")).collect();
    let label = |a: usize| Label {
        i: a % k + 1,
        j: a / k + 1,
    };

    let mut violations = Vec::new();

    // G_{k,ℓ} ⊆ H ⊆ G*_{k,ℓ}
    let (base, _) = build_gkl(k, l, false)?;
    let (full, _) = build_gkl(k, l, true)?;
    for &(a, b) in base.edges() {
        if !part.host.has_edge(a, b) {
            violations.push(Violation::HostOutOfRange {
                a: label(a),
                b: label(b),
                missing: true,
            });
        }
    }
    for &(a, b) in part.host.edges() {
        if !full.has_edge(a, b) {
            violations.push(Violation::HostOutOfRange {
                a: label(a),
                b: label(b),
                missing: false,
            });
        }
    }

    // (1) connected and at most M vertices
    for (a, vs) in part.aggregates.iter().enumerate() {
        if vs.is_empty() {
            violations.push(Violation::EmptyAggregate { label: label(a) });
            continue;
        }
        if vs.len() > m {
            violations.push(Violation::Oversized {
                label: label(a),
                size: vs.len(),
            });
        }
        let mut seen = BTreeSet::from([vs[0]]);
        let mut stack = vec![vs[0]];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if owner[w] == a && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != vs.len() {
            violations.push(Violation::Disconnected { label: label(a) });
        }
    }

    // (2) Γ lies in the first layer and meets every first-layer aggregate
    let mut hit = vec![false; k];
    for &v in gamma.vertices() {
        match owner.get(v) {
            Some(&a) if a != STAR && a < k => hit[a] = true,
            _ => violations.push(Violation::BoundaryOutsideFirstLayer { vertex: v + 1 }),
        }
    }
    for (i, &h) in hit.iter().enumerate() {
        if !h {
            violations.push(Violation::FirstLayerMissesBoundary { label: label(i) });
        }
    }

    // (3) N(a_*) ⊆ a_* ∪ last layer
    let last = (l - 1) * k;
    for &v in &part.star {
        for &w in g.neighbors(v) {
            if owner[w] != STAR && owner[w] < last {
                violations.push(Violation::StarLeak {
                    vertex: v + 1,
                    neighbor: w + 1,
                });
            }
        }
    }

    // (4) aggregation graph equals H under the identity labeling
    let mut agg = BTreeSet::new();
    for &(u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if a != STAR && b != STAR && a != b {
            agg.insert(edge_key(a, b));
        }
    }
    let host: BTreeSet<(usize, usize)> = part.host.edges().iter().map(|&(a, b)| edge_key(a, b)).collect();
    for &(a, b) in host.difference(&agg) {
        violations.push(Violation::MissingEdge {
            a: label(a),
            b: label(b),
        });
    }
    for &(a, b) in agg.difference(&host) {
        violations.push(Violation::ExtraEdge {
            a: label(a),
            b: label(b),
        });
    }

    Ok(AggregationReport {
        valid: violations.is_empty(),
        violations,
    })
}
