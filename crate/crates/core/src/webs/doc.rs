//! JSON web documents and their validation into [`WebDiagram`].

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::graph::PortGraph;
use super::WebError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Source,
    Sink,
    Crossing,
}

impl VertexKind {
    pub fn degree(self) -> usize {
        match self {
            VertexKind::Source | VertexKind::Sink => 3,
            VertexKind::Crossing => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: u32,
    pub kind: VertexKind,
    /// Edge ids attached to the slots, counterclockwise.
    pub slots: Vec<u32>,
    /// The two slots of the strand passing over (crossings only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over: Option<[u8; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: u32,
    /// `[vertex id, slot]`.
    pub tail: [u32; 2],
    pub head: [u32; 2],
}

/// Counts of vertexless loops by orientation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Loops {
    #[serde(default)]
    pub cw: u32,
    #[serde(default)]
    pub ccw: u32,
}

impl Loops {
    pub fn total(&self) -> u32 {
        self.cw + self.ccw
    }
}

/// Serialized form of a web diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebDocument {
    #[serde(default)]
    pub vertices: Vec<VertexDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub loops: Loops,
}

impl WebDocument {
    pub fn from_json(text: &str) -> Result<Self, WebError> {
        serde_json::from_str(text).map_err(|e| WebError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("web documents serialize")
    }
}

/// One broken invariant found by [`validate_diagram`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Malformed(String),
    DanglingHalfEdge { vertex: u32, slot: u8 },
    OrientationMismatch { vertex: u32 },
    OverPair { vertex: u32 },
    NonPlanar { euler_characteristic: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Malformed(m) => write!(f, "malformed document: {m}"),
            Violation::DanglingHalfEdge { vertex, slot } => {
                write!(f, "dangling half-edge at vertex {vertex} slot {slot}")
            }
            Violation::OrientationMismatch { vertex } => write!(f, "orientation mismatch at vertex {vertex}"),
            Violation::OverPair { vertex } => write!(f, "crossing {vertex} has an inconsistent over pair"),
            Violation::NonPlanar { euler_characteristic } => {
                write!(f, "rotation system is not planar (component Euler characteristic {euler_characteristic})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    /// Edge indices, counterclockwise.
    pub slots: Vec<usize>,
    pub over: Option<[u8; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: (usize, u8),
    pub head: (usize, u8),
}

/// A validated closed web: every slot matched, sources and sinks oriented
/// correctly, crossings consistent, and the rotation system planar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebDiagram {
    pub(crate) vertices: Vec<Vertex>,
    pub(crate) edges: Vec<Edge>,
    pub(crate) loops: Loops,
}

impl WebDiagram {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn loops(&self) -> Loops {
        self.loops
    }

    pub fn empty() -> Self {
        Self { vertices: Vec::new(), edges: Vec::new(), loops: Loops::default() }
    }

    pub fn loops_only(loops: Loops) -> Self {
        Self { vertices: Vec::new(), edges: Vec::new(), loops }
    }

    pub fn crossing_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.kind == VertexKind::Crossing).count()
    }

    pub fn trivalent_count(&self) -> usize {
        self.vertices.len() - self.crossing_count()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.loops.total() == 0
    }

    pub fn to_document(&self) -> WebDocument {
        WebDocument {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(i, v)| VertexDoc {
                    id: i as u32,
                    kind: v.kind,
                    slots: v.slots.iter().map(|&e| e as u32).collect(),
                    over: v.over,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeDoc {
                    id: i as u32,
                    tail: [e.tail.0 as u32, e.tail.1 as u32],
                    head: [e.head.0 as u32, e.head.1 as u32],
                })
                .collect(),
            loops: self.loops,
        }
    }

    /// Disjoint union.
    pub fn union(&self, other: &Self) -> Self {
        let (nv, ne) = (self.vertices.len(), self.edges.len());
        let mut out = self.clone();
        out.vertices.extend(other.vertices.iter().map(|v| Vertex {
            kind: v.kind,
            slots: v.slots.iter().map(|e| e + ne).collect(),
            over: v.over,
        }));
        out.edges.extend(other.edges.iter().map(|e| Edge {
            tail: (e.tail.0 + nv, e.tail.1),
            head: (e.head.0 + nv, e.head.1),
        }));
        out.loops.cw += other.loops.cw;
        out.loops.ccw += other.loops.ccw;
        out
    }

    /// Reverses every edge: sources and sinks swap, loops change orientation.
    pub fn reversed(&self) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vertex {
                    kind: match v.kind {
                        VertexKind::Source => VertexKind::Sink,
                        VertexKind::Sink => VertexKind::Source,
                        VertexKind::Crossing => VertexKind::Crossing,
                    },
                    slots: v.slots.clone(),
                    over: v.over,
                })
                .collect(),
            edges: self.edges.iter().map(|e| Edge { tail: e.head, head: e.tail }).collect(),
            loops: Loops { cw: self.loops.ccw, ccw: self.loops.cw },
        }
    }

    /// Exchanges over and under at crossing `vertex`.
    pub fn switch_crossing(&self, vertex: usize) -> Self {
        let mut out = self.clone();
        let v = &mut out.vertices[vertex];
        assert_eq!(v.kind, VertexKind::Crossing, "vertex {vertex} is not a crossing");
        let [a, _] = v.over.expect("crossings carry an over pair");
        let b = (a + 1) % 4;
        v.over = Some([b, (b + 2) % 4]);
        out
    }
}

/// Checks every structural invariant of a document.
pub fn validate_diagram(doc: &WebDocument) -> Result<WebDiagram, WebError> {
    let mut violations = Vec::new();
    let mut vindex = HashMap::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        if vindex.insert(v.id, i).is_some() {
            violations.push(Violation::Malformed(format!("duplicate vertex id {}", v.id)));
        }
    }
    let mut eindex = HashMap::new();
    for (i, e) in doc.edges.iter().enumerate() {
        if eindex.insert(e.id, i).is_some() {
            violations.push(Violation::Malformed(format!("duplicate edge id {}", e.id)));
        }
    }
    for v in &doc.vertices {
        if v.slots.len() != v.kind.degree() {
            violations.push(Violation::Malformed(format!(
                "vertex {} of kind {:?} has {} slots",
                v.id,
                v.kind,
                v.slots.len()
            )));
        }
        match (v.kind, v.over) {
            (VertexKind::Crossing, Some([a, b])) if a < 4 && b < 4 && (a + 2) % 4 == b => {}
            (VertexKind::Crossing, _) => violations.push(Violation::OverPair { vertex: v.id }),
            (_, Some(_)) => violations.push(Violation::OverPair { vertex: v.id }),
            (_, None) => {}
        }
    }
    if !violations.is_empty() {
        return Err(WebError::Invalid(violations));
    }

    // Every edge end must land in a slot that names the edge, and every
    // slot must be claimed by exactly one edge end.
    let mut claimed: HashMap<(usize, u8), usize> = HashMap::new();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        let mut ends = [(0usize, 0u8); 2];
        for (k, [vid, slot]) in [e.tail, e.head].into_iter().enumerate() {
            let slot8 = slot.min(255) as u8;
            match vindex.get(&vid) {
                Some(&vi) if (slot as usize) < doc.vertices[vi].slots.len() && doc.vertices[vi].slots[slot as usize] == e.id => {
                    if claimed.insert((vi, slot8), eindex[&e.id]).is_some() {
                        violations.push(Violation::DanglingHalfEdge { vertex: vid, slot: slot8 });
                    }
                    ends[k] = (vi, slot8);
                }
                _ => violations.push(Violation::DanglingHalfEdge { vertex: vid, slot: slot8 }),
            }
        }
        edges.push(Edge { tail: ends[0], head: ends[1] });
    }
    for (vi, v) in doc.vertices.iter().enumerate() {
        for (s, eid) in v.slots.iter().enumerate() {
            let ok = eindex.contains_key(eid) && claimed.get(&(vi, s as u8)) == Some(&eindex[eid]);
            if !ok {
                let violation = Violation::DanglingHalfEdge { vertex: v.id, slot: s as u8 };
                if !violations.contains(&violation) {
                    violations.push(violation);
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(WebError::Invalid(violations));
    }

    let vertices: Vec<Vertex> = doc
        .vertices
        .iter()
        .map(|v| Vertex { kind: v.kind, slots: v.slots.iter().map(|e| eindex[e]).collect(), over: v.over })
        .collect();
    for (vi, v) in vertices.iter().enumerate() {
        let outgoing = |s: usize| edges[v.slots[s]].tail == (vi, s as u8);
        let ok = match v.kind {
            VertexKind::Source => (0..3).all(outgoing),
            VertexKind::Sink => (0..3).all(|s| !outgoing(s)),
            VertexKind::Crossing => outgoing(0) != outgoing(2) && outgoing(1) != outgoing(3),
        };
        if !ok {
            violations.push(Violation::OrientationMismatch { vertex: doc.vertices[vi].id });
        }
    }
    if !violations.is_empty() {
        return Err(WebError::Invalid(violations));
    }

    let diagram = WebDiagram { vertices, edges, loops: doc.loops };
    let graph = PortGraph::from_diagram(&diagram);
    for chi in graph.component_euler_characteristics() {
        if chi != 2 {
            violations.push(Violation::NonPlanar { euler_characteristic: chi });
        }
    }
    if !violations.is_empty() {
        return Err(WebError::Invalid(violations));
    }
    Ok(diagram)
}

impl WebDiagram {
    pub fn from_json(text: &str) -> Result<Self, WebError> {
        validate_diagram(&WebDocument::from_json(text)?)
    }
}
