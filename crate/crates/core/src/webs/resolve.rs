//! Expansion of crossings into their two smoothings.
//!
//! Slots of a crossing are read counterclockwise as
//! `(A_in, B_in, A_out, B_out)`, where `A_in` is the incoming slot whose
//! counterclockwise neighbour is the other incoming slot. Drawn with both
//! strands pointing up, A runs from bottom-left to top-right. The crossing is
//! positive when A passes over:
//!
//! * positive: `q^{2/3}·parallel + q^{-1/3}·H`
//! * negative: `q^{-2/3}·parallel + q^{1/3}·H`
//!
//! The parallel smoothing joins `A_in -> B_out` and `B_in -> A_out`. The H
//! smoothing puts a sink on the two incoming strands and a source on the two
//! outgoing ones, with the middle edge running from source to sink.

use rayon::prelude::*;

use super::doc::{VertexKind, WebDiagram};
use super::graph::{Node, PortGraph};
use crate::LaurentZ;

/// Slot roles of one crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingFrame {
    pub a_in: u8,
    pub b_in: u8,
    pub a_out: u8,
    pub b_out: u8,
    pub positive: bool,
}

pub(crate) fn crossing_frame(node: &Node) -> CrossingFrame {
    debug_assert_eq!(node.kind, VertexKind::Crossing);
    let a_in = (0..4u8)
        .find(|&s| !node.outgoing[s as usize] && !node.outgoing[((s + 1) % 4) as usize])
        .expect("validated crossing has adjacent incoming slots");
    let over = node.over.expect("validated crossing has an over pair");
    CrossingFrame {
        a_in,
        b_in: (a_in + 1) % 4,
        a_out: (a_in + 2) % 4,
        b_out: (a_in + 3) % 4,
        positive: over.contains(&a_in),
    }
}

/// Replaces crossing `c` by its parallel smoothing.
pub(crate) fn smooth_parallel(g: &mut PortGraph, c: usize) {
    let f = crossing_frame(g.node(c));
    let kink_ccw = (c, f.a_in);
    let cycles = g.rewire(&[c], &[((c, f.a_in), (c, f.b_out)), ((c, f.b_in), (c, f.a_out))]);
    for cycle in cycles {
        // an edge B_out -> A_in closes a counterclockwise kink on the left
        if cycle.iter().any(|&(x, y)| x == kink_ccw || y == kink_ccw) {
            g.loops.ccw += 1;
        } else {
            g.loops.cw += 1;
        }
    }
}

/// Replaces crossing `c` by its H smoothing.
pub(crate) fn smooth_h(g: &mut PortGraph, c: usize) {
    let f = crossing_frame(g.node(c));
    let sink = g.push(Node::trivalent(VertexKind::Sink));
    let source = g.push(Node::trivalent(VertexKind::Source));
    g.link((source, 2), (sink, 2));
    let cycles = g.rewire(
        &[c],
        &[
            ((sink, 0), (c, f.a_in)),
            ((sink, 1), (c, f.b_in)),
            ((source, 0), (c, f.a_out)),
            ((source, 1), (c, f.b_out)),
        ],
    );
    debug_assert!(cycles.is_empty());
}

/// `(parallel, H)` coefficients of a crossing.
pub fn smoothing_coefficients(positive: bool) -> (LaurentZ, LaurentZ) {
    if positive {
        (LaurentZ::v_pow(4), LaurentZ::v_pow(-2))
    } else {
        (LaurentZ::v_pow(-4), LaurentZ::v_pow(2))
    }
}

pub(crate) fn resolve_graph(g: &PortGraph) -> Vec<(LaurentZ, PortGraph)> {
    let crossings: Vec<usize> = g.live().filter(|(_, n)| n.kind == VertexKind::Crossing).map(|(i, _)| i).collect();
    let mut terms = vec![(LaurentZ::v_pow(0), g.clone())];
    for c in crossings {
        terms = terms
            .into_par_iter()
            .flat_map_iter(|(coeff, g)| {
                let (par, h) = smoothing_coefficients(crossing_frame(g.node(c)).positive);
                let mut gp = g.clone();
                smooth_parallel(&mut gp, c);
                let mut gh = g;
                smooth_h(&mut gh, c);
                [(&coeff * &par, gp), (&coeff * &h, gh)]
            })
            .collect();
    }
    terms
}

/// Expands every crossing; the result has `2^c` crossingless terms.
pub fn resolve_crossings(d: &WebDiagram) -> Vec<(LaurentZ, WebDiagram)> {
    resolve_graph(&PortGraph::from_diagram(d)).into_iter().map(|(c, g)| (c, g.to_diagram())).collect()
}
