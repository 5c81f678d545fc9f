//! Closed-web evaluation by face rewriting.
//!
//! After crossings are resolved the graph is trivalent and bipartite, hence
//! bridgeless, so every face is a simple cycle of even length. Euler's
//! formula forces a face with at most four sides in each component, so one
//! of the bigon or square moves always applies.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use super::doc::{VertexKind, WebDiagram};
use super::graph::{Port, PortGraph, Wire};
use super::resolve::resolve_graph;
use super::WebError;
use crate::LaurentZ;

pub const DEFAULT_WEB_FUEL: u64 = 1_000_000;

/// Which reducible face to take next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceStrategy {
    /// Bigons before squares, first found.
    SmallestFirst,
    /// Uniformly among all bigons and squares, seeded.
    Random(u64),
}

/// `q^2 + 1 + q^{-2}`.
pub fn loop_value() -> LaurentZ {
    LaurentZ::from_terms([(12, 1.into()), (0, 1.into()), (-12, 1.into())])
}

/// `-(q + q^{-1})`.
pub fn bigon_value() -> LaurentZ {
    LaurentZ::from_terms([(6, (-1).into()), (-6, (-1).into())])
}

pub fn evaluate_closed(d: &WebDiagram) -> Result<LaurentZ, WebError> {
    evaluate_closed_with(d, FaceStrategy::SmallestFirst, DEFAULT_WEB_FUEL)
}

pub fn evaluate_closed_with(d: &WebDiagram, strategy: FaceStrategy, fuel: u64) -> Result<LaurentZ, WebError> {
    let terms = resolve_graph(&PortGraph::from_diagram(d));
    let values: Result<Vec<LaurentZ>, WebError> = terms
        .into_par_iter()
        .enumerate()
        .map(|(i, (c, g))| {
            let mut ev = Evaluator::new(strategy, i as u64, fuel);
            Ok(&c * &ev.graph(g)?)
        })
        .collect();
    Ok(values?.into_iter().fold(LaurentZ::default(), |acc, v| acc + v))
}

/// A face that one of the moves applies to.
enum Reducible {
    Bigon([Port; 2]),
    Square([Port; 4]),
}

fn reducible_faces(g: &PortGraph) -> Vec<Reducible> {
    let mut out = Vec::new();
    for face in g.faces() {
        let mut verts: Vec<usize> = face.iter().map(|d| d.0).collect();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() != face.len() {
            continue;
        }
        match face.len() {
            2 => out.push(Reducible::Bigon([face[0], face[1]])),
            4 => out.push(Reducible::Square([face[0], face[1], face[2], face[3]])),
            _ => {}
        }
    }
    out
}

/// The slot of a face vertex that points away from the face. A dart leaves
/// by slot `s` and the face arrived through `s + 1`.
fn leg(d: Port) -> Port {
    (d.0, (d.1 + 2) % 3)
}

struct Evaluator {
    strategy: FaceStrategy,
    rng: StdRng,
    fuel: u64,
    limit: u64,
}

impl Evaluator {
    fn new(strategy: FaceStrategy, stream: u64, fuel: u64) -> Self {
        let seed = match strategy {
            FaceStrategy::SmallestFirst => 0,
            FaceStrategy::Random(s) => s,
        };
        Self { strategy, rng: StdRng::seed_from_u64(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15)), fuel, limit: fuel }
    }

    fn tick(&mut self) -> Result<(), WebError> {
        if self.fuel == 0 {
            return Err(WebError::FuelExhausted(self.limit));
        }
        self.fuel -= 1;
        Ok(())
    }

    /// Value of a crossingless graph, loops included.
    fn graph(&mut self, mut g: PortGraph) -> Result<LaurentZ, WebError> {
        debug_assert!(g.live().all(|(_, n)| n.kind != VertexKind::Crossing));
        let mut acc = loop_value().pow(g.loops.total());
        g.loops = Default::default();
        for members in g.components() {
            if acc.is_empty() {
                break;
            }
            let part = g.restrict(&members);
            acc = &acc * &self.component(part)?;
        }
        Ok(acc)
    }

    fn component(&mut self, g: PortGraph) -> Result<LaurentZ, WebError> {
        self.tick()?;
        let mut faces = reducible_faces(&g);
        if faces.is_empty() {
            return Err(WebError::Irreducible);
        }
        let pick = match self.strategy {
            FaceStrategy::SmallestFirst => {
                faces.iter().position(|f| matches!(f, Reducible::Bigon(_))).unwrap_or(0)
            }
            FaceStrategy::Random(_) => self.rng.gen_range(0..faces.len()),
        };
        match faces.swap_remove(pick) {
            Reducible::Bigon([a, b]) => {
                let mut h = g;
                self.apply(&mut h, &[a.0, b.0], &[(leg(a), leg(b))]);
                Ok(&bigon_value() * &self.graph(h)?)
            }
            Reducible::Square(d) => {
                let removed = [d[0].0, d[1].0, d[2].0, d[3].0];
                let mut first = g.clone();
                self.apply(&mut first, &removed, &[(leg(d[0]), leg(d[1])), (leg(d[2]), leg(d[3]))]);
                let mut second = g;
                self.apply(&mut second, &removed, &[(leg(d[1]), leg(d[2])), (leg(d[3]), leg(d[0]))]);
                Ok(self.graph(first)? + self.graph(second)?)
            }
        }
    }

    fn apply(&self, g: &mut PortGraph, removed: &[usize], wires: &[Wire]) {
        let cycles = g.rewire(removed, wires);
        g.loops.cw += cycles.len() as u32;
    }
}
