//! Closed webs built bottom-to-top from elementary slices, plus the random
//! corpus used by the property tests.
//!
//! The builder keeps a row of open strand ends. Each end belongs to a
//! segment, which is a piece of strand whose two ends are either open or
//! attached to a vertex slot; a segment with both ends attached becomes an
//! edge. Vertex slot orders are read off the picture counterclockwise.

use rand::Rng;

use super::doc::{VertexKind, WebDiagram};
use super::graph::{Node, Port, PortGraph};
use super::resolve::crossing_frame;
use super::{validate_diagram, WebError};

/// Direction of travel through an open end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Up,
    Down,
}

impl Flow {
    fn flip(self) -> Self {
        match self {
            Flow::Up => Flow::Down,
            Flow::Down => Flow::Up,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slice {
    /// New ends at `pos, pos + 1`; the flow given is the left one.
    Cup(usize, Flow),
    /// Joins the ends at `pos, pos + 1`.
    Cap(usize),
    /// Two ends into one trivalent vertex.
    Merge(usize),
    /// One end into a trivalent vertex with two ends above.
    Split(usize),
    /// Crossing of the ends at `pos, pos + 1`; `true` puts the strand from
    /// the lower left over.
    Crossing(usize, bool),
}

impl Slice {
    fn pos(self) -> usize {
        match self {
            Slice::Cup(p, _) | Slice::Cap(p) | Slice::Merge(p) | Slice::Split(p) | Slice::Crossing(p, _) => p,
        }
    }
}

/// Applies `s` to a row of flows; `false` when the slice does not fit.
pub fn step_flows(flows: &mut Vec<Flow>, s: Slice) -> bool {
    let w = flows.len();
    let p = s.pos();
    match s {
        Slice::Cup(_, f) if p <= w => {
            flows.splice(p..p, [f, f.flip()]);
        }
        Slice::Cap(_) if p + 1 < w && flows[p] != flows[p + 1] => {
            flows.drain(p..p + 2);
        }
        Slice::Merge(_) if p + 1 < w && flows[p] == flows[p + 1] => {
            let f = flows[p].flip();
            flows.splice(p..p + 2, [f]);
        }
        Slice::Split(_) if p < w => {
            let f = flows[p].flip();
            flows.splice(p..p + 1, [f, f]);
        }
        Slice::Crossing(_, _) if p + 1 < w => flows.swap(p, p + 1),
        _ => return false,
    }
    true
}

#[derive(Clone, Debug)]
struct Segment {
    ends: [Option<Port>; 2],
    /// Turning in degrees from end 0 to end 1, for vertexless strands.
    turning: i64,
    /// Whether the strand flows from end 0 to end 1.
    forward: bool,
}

impl Segment {
    fn turning_from(&self, end: usize) -> i64 {
        if end == 0 {
            self.turning
        } else {
            -self.turning
        }
    }

    /// Flow through open end `e` is upward iff the strand leaves there.
    fn flow_at(&self, e: usize) -> Flow {
        if self.forward == (e == 1) {
            Flow::Up
        } else {
            Flow::Down
        }
    }
}

struct Builder {
    graph: PortGraph,
    segments: Vec<Segment>,
    row: Vec<(usize, usize)>,
}

impl Builder {
    fn flow(&self, pos: usize) -> Flow {
        let (s, e) = self.row[pos];
        self.segments[s].flow_at(e)
    }

    fn attach(&mut self, (s, e): (usize, usize), port: Port) {
        self.segments[s].ends[e] = Some(port);
        if let [Some(a), Some(b)] = self.segments[s].ends {
            self.graph.link(a, b);
        }
    }

    /// A fresh segment hanging from `port`, open at its top.
    fn emit(&mut self, port: Port) -> (usize, usize) {
        let forward = self.graph.is_outgoing(port);
        self.segments.push(Segment { ends: [Some(port), None], turning: 0, forward });
        (self.segments.len() - 1, 1)
    }

    fn node(&mut self, kind: VertexKind, outgoing: Vec<bool>, over: Option<[u8; 2]>) -> usize {
        let n = outgoing.len();
        self.graph.push(Node { kind, over, link: vec![(usize::MAX, 0); n], outgoing })
    }

    fn apply(&mut self, s: Slice) -> Result<(), WebError> {
        let w = self.row.len();
        let bad = || WebError::BadSlice(format!("{s:?} does not fit a row of width {w}"));
        let p = s.pos();
        match s {
            Slice::Cup(_, left) => {
                if p > w {
                    return Err(bad());
                }
                // down the left side, around the bottom, up the right
                let forward = left == Flow::Down;
                self.segments.push(Segment { ends: [None, None], turning: 180, forward });
                let id = self.segments.len() - 1;
                self.row.splice(p..p, [(id, 0), (id, 1)]);
            }
            Slice::Cap(_) => {
                if p + 1 >= w || self.flow(p) == self.flow(p + 1) {
                    return Err(bad());
                }
                let (x, y) = (self.row[p], self.row[p + 1]);
                let up_at_x = self.flow(p) == Flow::Up;
                self.row.drain(p..p + 2);
                if x.0 == y.0 {
                    let seg = &self.segments[x.0];
                    let along = seg.turning_from(y.1) - 180;
                    let with_flow = if up_at_x { along } else { -along };
                    if with_flow > 0 {
                        self.graph.loops.ccw += 1;
                    } else {
                        self.graph.loops.cw += 1;
                    }
                    return Ok(());
                }
                let (sx, sy) = (self.segments[x.0].clone(), self.segments[y.0].clone());
                let merged = Segment {
                    ends: [sx.ends[1 - x.1], sy.ends[1 - y.1]],
                    turning: sx.turning_from(1 - x.1) - 180 + sy.turning_from(y.1),
                    forward: up_at_x,
                };
                self.segments.push(merged);
                let id = self.segments.len() - 1;
                for slot in self.row.iter_mut() {
                    if *slot == (x.0, 1 - x.1) {
                        *slot = (id, 0);
                    } else if *slot == (y.0, 1 - y.1) {
                        *slot = (id, 1);
                    }
                }
                if let [Some(a), Some(b)] = self.segments[id].ends {
                    self.graph.link(a, b);
                }
            }
            Slice::Merge(_) => {
                if p + 1 >= w || self.flow(p) != self.flow(p + 1) {
                    return Err(bad());
                }
                let kind = if self.flow(p) == Flow::Up { VertexKind::Sink } else { VertexKind::Source };
                let v = self.node(kind, vec![kind == VertexKind::Source; 3], None);
                let (a, b) = (self.row[p], self.row[p + 1]);
                self.attach(a, (v, 0));
                self.attach(b, (v, 1));
                let top = self.emit((v, 2));
                self.row.splice(p..p + 2, [top]);
            }
            Slice::Split(_) => {
                if p >= w {
                    return Err(bad());
                }
                let kind = if self.flow(p) == Flow::Up { VertexKind::Sink } else { VertexKind::Source };
                let v = self.node(kind, vec![kind == VertexKind::Source; 3], None);
                let a = self.row[p];
                self.attach(a, (v, 0));
                let right = self.emit((v, 1));
                let left = self.emit((v, 2));
                self.row.splice(p..p + 1, [left, right]);
            }
            Slice::Crossing(_, lower_left_over) => {
                if p + 1 >= w {
                    return Err(bad());
                }
                // slots: lower left, lower right, upper right, upper left
                let bl_out = self.flow(p) == Flow::Down;
                let br_out = self.flow(p + 1) == Flow::Down;
                let over = if lower_left_over { [0, 2] } else { [1, 3] };
                let v = self.node(VertexKind::Crossing, vec![bl_out, br_out, !bl_out, !br_out], Some(over));
                let (a, b) = (self.row[p], self.row[p + 1]);
                self.attach(a, (v, 0));
                self.attach(b, (v, 1));
                let right = self.emit((v, 2));
                let left = self.emit((v, 3));
                self.row.splice(p..p + 2, [left, right]);
            }
        }
        Ok(())
    }
}

/// Builds the closed web drawn by `slices`.
pub fn build(slices: &[Slice]) -> Result<WebDiagram, WebError> {
    let mut b = Builder { graph: PortGraph::default(), segments: Vec::new(), row: Vec::new() };
    for &s in slices {
        b.apply(s)?;
    }
    if !b.row.is_empty() {
        return Err(WebError::BadSlice(format!("{} strand ends left open", b.row.len())));
    }
    validate_diagram(&b.graph.to_diagram().to_document())
}

/// Slices closing off a row of flows.
pub fn closing(flows: &[Flow]) -> Vec<Slice> {
    let mut flows = flows.to_vec();
    let mut out = Vec::new();
    while !flows.is_empty() {
        let s = match (0..flows.len().saturating_sub(1)).find(|&i| flows[i] != flows[i + 1]) {
            Some(i) => Slice::Cap(i),
            None => Slice::Merge(0),
        };
        assert!(step_flows(&mut flows, s), "row of flows cannot be closed");
        out.push(s);
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct CorpusLimits {
    pub max_trivalent: usize,
    pub max_crossings: usize,
    pub max_width: usize,
    pub max_steps: usize,
}

impl Default for CorpusLimits {
    fn default() -> Self {
        Self { max_trivalent: 12, max_crossings: 3, max_width: 4, max_steps: 24 }
    }
}

/// Random slices starting from `flows`, leaving the row open.
pub fn random_walk<R: Rng>(
    rng: &mut R,
    flows: &mut Vec<Flow>,
    limits: CorpusLimits,
    trivalent: &mut usize,
    crossings: &mut usize,
) -> Vec<Slice> {
    let steps = rng.gen_range(1..=limits.max_steps);
    let mut out = Vec::new();
    for _ in 0..steps {
        let w = flows.len();
        let mut options = Vec::new();
        if w + 2 <= limits.max_width {
            let f = if rng.gen() { Flow::Up } else { Flow::Down };
            options.push(Slice::Cup(rng.gen_range(0..=w), f));
        }
        if w >= 2 {
            let p = rng.gen_range(0..w - 1);
            if flows[p] != flows[p + 1] {
                options.push(Slice::Cap(p));
            } else if *trivalent + 2 <= limits.max_trivalent {
                // twice: merges drive the interesting faces
                options.push(Slice::Merge(p));
                options.push(Slice::Merge(p));
            }
            if *crossings < limits.max_crossings {
                options.push(Slice::Crossing(p, rng.gen()));
            }
        }
        if w >= 1 && w < limits.max_width && *trivalent + 2 <= limits.max_trivalent {
            options.push(Slice::Split(rng.gen_range(0..w)));
            options.push(Slice::Split(rng.gen_range(0..w)));
        }
        if options.is_empty() {
            break;
        }
        let s = options[rng.gen_range(0..options.len())];
        match s {
            Slice::Merge(_) | Slice::Split(_) => *trivalent += 1,
            Slice::Crossing(_, _) => *crossings += 1,
            _ => {}
        }
        assert!(step_flows(flows, s));
        out.push(s);
    }
    out
}

/// A random closed web within `limits`.
pub fn random_slices<R: Rng>(rng: &mut R, limits: CorpusLimits) -> Vec<Slice> {
    let mut flows = Vec::new();
    let (mut t, mut c) = (0, 0);
    let mut slices = random_walk(rng, &mut flows, limits, &mut t, &mut c);
    slices.extend(closing(&flows));
    slices
}

pub fn random_web<R: Rng>(rng: &mut R, limits: CorpusLimits) -> WebDiagram {
    build(&random_slices(rng, limits)).expect("random slices build a valid web")
}

/// A closed web containing `middle` at a random spot, and the same web with
/// `alternative` there instead. `middle` acts on ends `pos..pos + span`.
fn paired<R: Rng>(
    rng: &mut R,
    span: usize,
    crossings_used: usize,
    local: impl Fn(usize) -> (Vec<Slice>, Vec<Slice>),
) -> (WebDiagram, WebDiagram) {
    let limits = CorpusLimits { max_trivalent: 8, max_crossings: 3 - crossings_used.min(3), max_width: 4, max_steps: 12 };
    loop {
        let mut flows = Vec::new();
        let (mut t, mut c) = (0, 0);
        let prefix = random_walk(rng, &mut flows, limits, &mut t, &mut c);
        if flows.len() < span {
            continue;
        }
        let pos = rng.gen_range(0..=flows.len() - span);
        let (a, b) = local(pos);
        let mut fa = flows.clone();
        for &s in &a {
            assert!(step_flows(&mut fa, s));
        }
        let suffix = random_walk(rng, &mut fa, limits, &mut t, &mut c);
        let close = closing(&fa);
        let assemble = |mid: &[Slice]| {
            let mut v = prefix.clone();
            v.extend_from_slice(mid);
            v.extend_from_slice(&suffix);
            v.extend_from_slice(&close);
            build(&v).expect("paired slices build")
        };
        return (assemble(&a), assemble(&b));
    }
}

/// Two crossings cancelling by a second Reidemeister move, and nothing.
pub fn r2_pair<R: Rng>(rng: &mut R) -> (WebDiagram, WebDiagram) {
    paired(rng, 2, 2, |p| (vec![Slice::Crossing(p, true), Slice::Crossing(p, false)], vec![]))
}

/// The two sides of a third Reidemeister move.
pub fn r3_pair<R: Rng>(rng: &mut R) -> (WebDiagram, WebDiagram) {
    paired(rng, 3, 3, |p| {
        let x = |q| Slice::Crossing(q, true);
        (vec![x(p), x(p + 1), x(p)], vec![x(p + 1), x(p), x(p + 1)])
    })
}

/// Two trivalent vertices joined by three parallel edges.
pub fn theta() -> WebDiagram {
    build(&[Slice::Cup(0, Flow::Up), Slice::Split(1), Slice::Merge(1), Slice::Cap(0)]).expect("theta")
}

/// The cube graph: a four-rung ladder closed up on both sides.
pub fn cube() -> WebDiagram {
    let mut s = vec![Slice::Cup(0, Flow::Down), Slice::Cup(2, Flow::Down)];
    for _ in 0..4 {
        s.extend([Slice::Split(1), Slice::Merge(2)]);
    }
    s.extend([Slice::Cap(0), Slice::Cap(0)]);
    build(&s).expect("cube")
}

/// Forces every crossing of `d` to the given sign.
pub fn with_sign(d: &WebDiagram, positive: bool) -> WebDiagram {
    let mut out = d.clone();
    let g = PortGraph::from_diagram(d);
    for (v, n) in g.live() {
        if n.kind == VertexKind::Crossing && crossing_frame(n).positive != positive {
            out = out.switch_crossing(v);
        }
    }
    out
}

/// A figure-eight curve: one strand with one crossing.
pub fn kink(positive: bool) -> WebDiagram {
    let d = build(&[
        Slice::Cup(0, Flow::Up),
        Slice::Cup(0, Flow::Down),
        Slice::Crossing(1, true),
        Slice::Cap(0),
        Slice::Cap(0),
    ])
    .expect("kink");
    with_sign(&d, positive)
}

/// Two loops linked once, both crossings of the given sign.
pub fn hopf(positive: bool) -> WebDiagram {
    let d = build(&[
        Slice::Cup(0, Flow::Up),
        Slice::Cup(2, Flow::Up),
        Slice::Crossing(1, true),
        Slice::Crossing(1, true),
        Slice::Cap(0),
        Slice::Cap(0),
    ])
    .expect("hopf");
    with_sign(&d, positive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn standard_shapes() {
        let t = theta();
        assert_eq!(t.trivalent_count(), 2);
        assert_eq!(t.edges().len(), 3);
        let c = cube();
        assert_eq!(c.trivalent_count(), 8);
        assert_eq!(c.edges().len(), 12);
        let faces = PortGraph::from_diagram(&c).faces();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.len() == 4));
        assert_eq!(kink(true).crossing_count(), 1);
        assert_eq!(PortGraph::from_diagram(&hopf(true)).components().len(), 1);
    }

    #[test]
    fn cup_then_cap_orientation() {
        let cw = build(&[Slice::Cup(0, Flow::Up), Slice::Cap(0)]).unwrap();
        assert_eq!((cw.loops().cw, cw.loops().ccw), (1, 0));
        let ccw = build(&[Slice::Cup(0, Flow::Down), Slice::Cap(0)]).unwrap();
        assert_eq!((ccw.loops().cw, ccw.loops().ccw), (0, 1));
        // a loop enclosing another keeps the same orientation rule
        let nested = build(&[Slice::Cup(0, Flow::Up), Slice::Cup(1, Flow::Down), Slice::Cap(1), Slice::Cap(0)]).unwrap();
        assert_eq!((nested.loops().cw, nested.loops().ccw), (1, 1));
    }

    #[test]
    fn random_webs_respect_limits() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let d = random_web(&mut rng, CorpusLimits::default());
            assert!(d.trivalent_count() <= 12);
            assert!(d.crossing_count() <= 3);
        }
    }
}
