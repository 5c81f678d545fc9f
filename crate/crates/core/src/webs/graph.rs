//! Port-level graph used for rewriting: each slot links directly to the
//! slot at the other end of its edge. Removed vertices leave `None` holes.

use std::collections::HashMap;

use super::doc::{Edge, Loops, Vertex, VertexKind, WebDiagram};

/// `(vertex, slot)`.
pub(crate) type Port = (usize, u8);

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub kind: VertexKind,
    pub over: Option<[u8; 2]>,
    pub link: Vec<Port>,
    /// Whether the edge at each slot leaves this vertex.
    pub outgoing: Vec<bool>,
}

impl Node {
    pub fn trivalent(kind: VertexKind) -> Self {
        let out = kind == VertexKind::Source;
        Self { kind, over: None, link: vec![(usize::MAX, 0); 3], outgoing: vec![out; 3] }
    }

    pub fn degree(&self) -> usize {
        self.link.len()
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct PortGraph {
    pub nodes: Vec<Option<Node>>,
    pub loops: Loops,
}

/// A reconnection request: whatever reaches `a` continues out of `b`.
pub(crate) type Wire = (Port, Port);

impl PortGraph {
    pub fn from_diagram(d: &WebDiagram) -> Self {
        let mut nodes: Vec<Option<Node>> = d
            .vertices
            .iter()
            .map(|v| {
                Some(Node {
                    kind: v.kind,
                    over: v.over,
                    link: vec![(usize::MAX, 0); v.slots.len()],
                    outgoing: vec![false; v.slots.len()],
                })
            })
            .collect();
        for e in &d.edges {
            let t = nodes[e.tail.0].as_mut().expect("validated");
            t.link[e.tail.1 as usize] = e.head;
            t.outgoing[e.tail.1 as usize] = true;
            let h = nodes[e.head.0].as_mut().expect("validated");
            h.link[e.head.1 as usize] = e.tail;
        }
        Self { nodes, loops: d.loops }
    }

    pub fn to_diagram(&self) -> WebDiagram {
        let mut index = vec![usize::MAX; self.nodes.len()];
        let mut vertices = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(n) = n {
                index[i] = vertices.len();
                vertices.push(Vertex { kind: n.kind, slots: vec![usize::MAX; n.degree()], over: n.over });
            }
        }
        let mut edges = Vec::new();
        for (i, n) in self.live() {
            for s in 0..n.degree() {
                if !n.outgoing[s] {
                    continue;
                }
                let (hv, hs) = n.link[s];
                let e = edges.len();
                edges.push(Edge { tail: (index[i], s as u8), head: (index[hv], hs) });
                vertices[index[i]].slots[s] = e;
                vertices[index[hv]].slots[hs as usize] = e;
            }
        }
        WebDiagram { vertices, edges, loops: self.loops }
    }

    pub fn live(&self) -> impl Iterator<Item = (usize, &Node)> {
        self.nodes.iter().enumerate().filter_map(|(i, n)| n.as_ref().map(|n| (i, n)))
    }

    pub fn node(&self, v: usize) -> &Node {
        self.nodes[v].as_ref().expect("live vertex")
    }

    pub fn partner(&self, p: Port) -> Port {
        self.node(p.0).link[p.1 as usize]
    }

    pub fn is_outgoing(&self, p: Port) -> bool {
        self.node(p.0).outgoing[p.1 as usize]
    }

    pub fn push(&mut self, n: Node) -> usize {
        self.nodes.push(Some(n));
        self.nodes.len() - 1
    }

    pub fn link(&mut self, a: Port, b: Port) {
        self.nodes[a.0].as_mut().expect("live").link[a.1 as usize] = b;
        self.nodes[b.0].as_mut().expect("live").link[b.1 as usize] = a;
    }

    /// Next dart along a face: arrive at the partner slot `k`, leave by the
    /// clockwise neighbour `k - 1`.
    pub fn next_dart(&self, d: Port) -> Port {
        let (w, k) = self.partner(d);
        let deg = self.node(w).degree() as u8;
        (w, (k + deg - 1) % deg)
    }

    /// Face boundaries as dart cycles.
    pub fn faces(&self) -> Vec<Vec<Port>> {
        let mut seen: HashMap<Port, ()> = HashMap::new();
        let mut faces = Vec::new();
        for (v, n) in self.live() {
            for s in 0..n.degree() as u8 {
                if seen.contains_key(&(v, s)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (v, s);
                while seen.insert(d, ()).is_none() {
                    face.push(d);
                    d = self.next_dart(d);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Vertex sets of the connected components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.nodes.len()];
        let mut out = Vec::new();
        for (start, _) in self.live() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &(w, _) in &self.node(v).link {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            out.push(members);
        }
        out
    }

    /// The subgraph on `members` (closed under links), without loops.
    pub fn restrict(&self, members: &[usize]) -> Self {
        let mut nodes = vec![None; self.nodes.len()];
        for &v in members {
            nodes[v] = self.nodes[v].clone();
        }
        Self { nodes, loops: Loops::default() }
    }

    pub fn component_euler_characteristics(&self) -> Vec<i64> {
        let faces = self.faces();
        let mut face_count: HashMap<usize, i64> = HashMap::new();
        let comps = self.components();
        let mut comp_of = vec![usize::MAX; self.nodes.len()];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                comp_of[v] = c;
            }
        }
        for f in &faces {
            *face_count.entry(comp_of[f[0].0]).or_default() += 1;
        }
        comps
            .iter()
            .enumerate()
            .map(|(c, members)| {
                let v = members.len() as i64;
                let e: i64 = members.iter().map(|&m| self.node(m).degree() as i64).sum::<i64>() / 2;
                v - e + face_count.get(&c).copied().unwrap_or(0)
            })
            .collect()
    }

    /// Deletes `removed` and reconnects through `wires`. Every removed slot
    /// either carries a wire or sits on an edge whose far end is also removed
    /// and unwired; such edges vanish. Wires may also end on slots of newly
    /// pushed vertices. Returns the closed cycles formed entirely of removed
    /// slots, each given by the wires it passes through.
    pub fn rewire(&mut self, removed: &[usize], wires: &[Wire]) -> Vec<Vec<Wire>> {
        let is_removed = |v: usize| removed.contains(&v);
        let mut wire_of: HashMap<Port, Port> = HashMap::with_capacity(wires.len() * 2);
        for &(a, b) in wires {
            wire_of.insert(a, b);
            wire_of.insert(b, a);
        }
        let mut visited: HashMap<Port, ()> = HashMap::new();
        let mut new_links = Vec::new();

        // Start from every surviving slot that touches the removed region.
        let mut starts = Vec::new();
        for (v, n) in self.live() {
            if is_removed(v) {
                continue;
            }
            for s in 0..n.degree() as u8 {
                let p = (v, s);
                let fresh = wire_of.contains_key(&p);
                if fresh || is_removed(n.link[s as usize].0) {
                    starts.push((p, fresh));
                }
            }
        }
        for (p, fresh) in starts {
            if visited.contains_key(&p) {
                continue;
            }
            visited.insert(p, ());
            let (mut x, mut via_edge) = if fresh { (wire_of[&p], false) } else { (self.partner(p), true) };
            while is_removed(x.0) {
                visited.insert(x, ());
                if via_edge {
                    x = *wire_of.get(&x).expect("removed slot on a surviving path carries a wire");
                    via_edge = false;
                } else {
                    x = self.partner(x);
                    via_edge = true;
                }
            }
            visited.insert(x, ());
            new_links.push((p, x));
        }

        let mut cycles = Vec::new();
        for &(a, _) in wires {
            if visited.contains_key(&a) || !is_removed(a.0) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = a;
            loop {
                visited.insert(x, ());
                let y = wire_of[&x];
                visited.insert(y, ());
                cycle.push((x, y));
                x = self.partner(y);
                if x == a {
                    break;
                }
            }
            cycles.push(cycle);
        }

        for (a, b) in new_links {
            self.link(a, b);
        }
        for &v in removed {
            self.nodes[v] = None;
        }
        cycles
    }
}
