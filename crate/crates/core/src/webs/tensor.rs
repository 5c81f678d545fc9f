//! Independent evaluation of closed webs as a state sum.
//!
//! Every edge carries a weight vector state `s` in `{1, 2, 3}`. Slots are
//! drawn at fixed angles, each edge gets a total turning angle `t` (degrees)
//! consistent with a planar drawing, and the edge contributes
//! `v^{c(s)·t/60}` with `c = (2, 0, -2)`; a full counterclockwise turn is
//! thus `q^{c(s)/6}`-weighted and a plain loop sums to `q^2 + 1 + q^{-2}`.
//! Trivalent vertices carry the invariant tensors in [`VertexConstants`];
//! crossings carry the braiding assembled from their two smoothings.
//!
//! Turning numbers are fixed by requiring every inner face to turn by
//! `+360` and the outer face by `-360`, solved over a spanning tree of the
//! dual graph. Different solutions differ by whole turns at vertices, which
//! the tensors absorb because every vertex conserves total weight.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::doc::{VertexKind, WebDiagram};
use super::graph::{Node, Port, PortGraph};
use super::reduce::loop_value;
use super::resolve::{crossing_frame, smoothing_coefficients};
use super::WebError;
use crate::LaurentZ;

/// Weight of state `s` (0-based) in units of `v`.
const WEIGHT: [i64; 3] = [2, 0, -2];

/// Outward slot angles of trivalent vertices.
const TRIVALENT_ANGLES: [i64; 3] = [90, 210, 330];

/// Outward angles of crossing slots by role `A_in, B_in, A_out, B_out`.
const CROSSING_ANGLES: [i64; 4] = [240, 300, 60, 120];

/// Entries of the invariant tensors, indexed by the parity of the
/// permutation read off the slots counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexConstants {
    pub source_even: LaurentZ,
    pub source_odd: LaurentZ,
    pub sink_even: LaurentZ,
    pub sink_odd: LaurentZ,
}

impl VertexConstants {
    /// Derived once by the search in this module's tests. Every solution has
    /// `source_even·sink_odd = -v^2` and `source_odd·sink_even = -v^-2`; this
    /// one is symmetric under `v -> v^-1` with sources and sinks exchanged.
    pub fn frozen() -> Self {
        Self {
            source_even: LaurentZ::v_pow(0),
            source_odd: -LaurentZ::v_pow(-2),
            sink_even: LaurentZ::v_pow(0),
            sink_odd: -LaurentZ::v_pow(2),
        }
    }

    fn entry(&self, kind: VertexKind, s: [usize; 3]) -> LaurentZ {
        let parity = match s {
            [0, 1, 2] | [1, 2, 0] | [2, 0, 1] => Some(true),
            [0, 2, 1] | [2, 1, 0] | [1, 0, 2] => Some(false),
            _ => None,
        };
        match (kind, parity) {
            (_, None) => LaurentZ::zero(),
            (VertexKind::Source, Some(true)) => self.source_even.clone(),
            (VertexKind::Source, Some(false)) => self.source_odd.clone(),
            (VertexKind::Sink, Some(true)) => self.sink_even.clone(),
            (VertexKind::Sink, Some(false)) => self.sink_odd.clone(),
            (VertexKind::Crossing, _) => unreachable!("crossings have no trivalent entry"),
        }
    }

    /// Braiding entry for states at `(A_in, B_in, A_out, B_out)`.
    fn crossing_entry(&self, positive: bool, s: [usize; 4]) -> LaurentZ {
        let [x, y, xo, yo] = s;
        let (par, h) = smoothing_coefficients(positive);
        let mut out = LaurentZ::zero();
        if x == yo && y == xo {
            // A_in turns +60 into B_out, B_in turns -60 into A_out
            out += &(&par * &LaurentZ::v_pow(WEIGHT[x] - WEIGHT[y]));
        }
        // H: the in-strands turn -30 and +30 into the sink, the out-strands
        // +30 and -30 out of the source, the middle edge runs straight
        let twist = (-WEIGHT[x] + WEIGHT[y] + WEIGHT[xo] - WEIGHT[yo]) / 2;
        let mut hsum = LaurentZ::zero();
        for m in 0..3 {
            let a = self.entry(VertexKind::Sink, [x, y, m]);
            if a.is_zero() {
                continue;
            }
            let b = self.entry(VertexKind::Source, [xo, yo, m]);
            hsum += &(&a * &b);
        }
        out += &(&h * &(&hsum * &LaurentZ::v_pow(twist)));
        out
    }
}

fn slot_angle(node: &Node, slot: u8) -> i64 {
    match node.kind {
        VertexKind::Source | VertexKind::Sink => TRIVALENT_ANGLES[slot as usize],
        VertexKind::Crossing => {
            let f = crossing_frame(node);
            CROSSING_ANGLES[((slot + 4 - f.a_in) % 4) as usize]
        }
    }
}

fn normalize(mut a: i64) -> i64 {
    a = a.rem_euclid(360);
    if a > 180 {
        a - 360
    } else {
        a
    }
}

/// Edge keyed by its tail port.
type EdgeKey = Port;

/// Total turning of each edge, tail to head, for one connected component.
fn turning_angles(g: &PortGraph) -> HashMap<EdgeKey, i64> {
    let mut base = HashMap::new();
    for (v, n) in g.live() {
        for s in 0..n.degree() as u8 {
            if n.outgoing[s as usize] {
                let head = n.link[s as usize];
                let t = normalize(slot_angle(g.node(head.0), head.1) + 180 - slot_angle(n, s));
                base.insert((v, s), t);
            }
        }
    }
    let edge_of = |d: Port| -> (EdgeKey, i64) {
        if g.is_outgoing(d) {
            (d, 1)
        } else {
            (g.partner(d), -1)
        }
    };
    let corner = |d: Port| -> i64 {
        // arriving through slot k, leaving by k - 1
        let (w, k) = g.partner(d);
        let node = g.node(w);
        let deg = node.degree() as u8;
        let delta = (slot_angle(node, k) - slot_angle(node, (k + deg - 1) % deg)).rem_euclid(360);
        180 - delta
    };

    let faces = g.faces();
    let root = (0..faces.len()).max_by_key(|&f| faces[f].len()).expect("component has a face");
    let mut face_of: HashMap<Port, usize> = HashMap::new();
    for (f, face) in faces.iter().enumerate() {
        for &d in face {
            face_of.insert(d, f);
        }
    }
    // dual BFS: parent edge of each face
    let mut parent: Vec<Option<(EdgeKey, usize)>> = vec![None; faces.len()];
    let mut order = vec![root];
    let mut seen = vec![false; faces.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        for &d in &faces[f] {
            let other = face_of[&g.partner(d)];
            if !seen[other] {
                seen[other] = true;
                parent[other] = Some((edge_of(d).0, f));
                order.push(other);
                queue.push_back(other);
            }
        }
    }

    let mut winding: HashMap<EdgeKey, i64> = HashMap::new();
    for &f in order.iter().rev() {
        let Some((tree_edge, _)) = parent[f] else { continue };
        let target = 360;
        let mut sum = 0;
        let mut tree_sign = 0;
        for &d in &faces[f] {
            let (e, sign) = edge_of(d);
            sum += sign * base[&e] + corner(d);
            if e == tree_edge {
                tree_sign += sign;
            } else {
                sum += sign * 360 * winding.get(&e).copied().unwrap_or(0);
            }
        }
        debug_assert!(tree_sign == 1 || tree_sign == -1);
        let rest = target - sum;
        debug_assert_eq!(rest % 360, 0, "face turning must close up");
        winding.insert(tree_edge, tree_sign * rest / 360);
    }
    debug_assert_eq!(
        {
            let mut s = 0;
            for &d in &faces[root] {
                let (e, sign) = edge_of(d);
                s += sign * (base[&e] + 360 * winding.get(&e).copied().unwrap_or(0)) + corner(d);
            }
            s
        },
        -360
    );
    base.into_iter().map(|(e, t)| (e, t + 360 * winding.get(&e).copied().unwrap_or(0))).collect()
}

/// Dense tensor over a list of edge legs, row-major with the first leg
/// most significant.
#[derive(Clone)]
struct Tensor {
    legs: Vec<EdgeKey>,
    data: Vec<LaurentZ>,
}

impl Tensor {
    fn index(&self, states: &HashMap<EdgeKey, usize>) -> usize {
        self.legs.iter().fold(0, |acc, l| acc * 3 + states[l])
    }

    /// Sums over a leg appearing twice.
    fn self_trace(self) -> Tensor {
        let legs: Vec<EdgeKey> =
            self.legs.iter().copied().filter(|l| self.legs.iter().filter(|m| *m == l).count() == 1).collect();
        if legs.len() == self.legs.len() {
            return self;
        }
        let mut data = vec![LaurentZ::zero(); 3usize.pow(legs.len() as u32)];
        for (i, x) in self.data.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let states = decode(i, self.legs.len());
            let mut assign: HashMap<EdgeKey, usize> = HashMap::new();
            let consistent = self.legs.iter().zip(&states).all(|(l, &s)| *assign.entry(*l).or_insert(s) == s);
            if consistent {
                let j = legs.iter().fold(0, |acc, l| acc * 3 + assign[l]);
                data[j] += x;
            }
        }
        Tensor { legs, data }
    }

    fn contract(&self, other: &Tensor) -> Tensor {
        let shared: Vec<EdgeKey> = self.legs.iter().copied().filter(|l| other.legs.contains(l)).collect();
        let mut legs: Vec<EdgeKey> = self.legs.iter().copied().filter(|l| !shared.contains(l)).collect();
        legs.extend(other.legs.iter().copied().filter(|l| !shared.contains(l)));
        let mut data = vec![LaurentZ::zero(); 3usize.pow(legs.len() as u32)];
        let mut states: HashMap<EdgeKey, usize> = HashMap::new();
        for (i, out) in data.iter_mut().enumerate() {
            for (l, s) in legs.iter().zip(decode(i, legs.len())) {
                states.insert(*l, s);
            }
            for k in 0..3usize.pow(shared.len() as u32) {
                for (l, s) in shared.iter().zip(decode(k, shared.len())) {
                    states.insert(*l, s);
                }
                let a = &self.data[self.index(&states)];
                if a.is_zero() {
                    continue;
                }
                let b = &other.data[other.index(&states)];
                if b.is_zero() {
                    continue;
                }
                *out += &(a * b);
            }
        }
        Tensor { legs, data }
    }
}

fn decode(mut i: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for k in (0..len).rev() {
        out[k] = i % 3;
        i /= 3;
    }
    out
}

fn vertex_tensor(g: &PortGraph, v: usize, consts: &VertexConstants, turning: &HashMap<EdgeKey, i64>) -> Tensor {
    let n = g.node(v);
    let legs: Vec<EdgeKey> = (0..n.degree() as u8)
        .map(|s| if n.outgoing[s as usize] { (v, s) } else { n.link[s as usize] })
        .collect();
    let frame = (n.kind == VertexKind::Crossing).then(|| crossing_frame(n));
    let size = 3usize.pow(legs.len() as u32);
    let mut data = Vec::with_capacity(size);
    for i in 0..size {
        let st = decode(i, legs.len());
        let mut x = match frame {
            None => consts.entry(n.kind, [st[0], st[1], st[2]]),
            Some(f) => {
                let at = |s: u8| st[s as usize];
                consts.crossing_entry(f.positive, [at(f.a_in), at(f.b_in), at(f.a_out), at(f.b_out)])
            }
        };
        if !x.is_zero() {
            // edge weights ride on the tail
            for s in 0..n.degree() {
                if n.outgoing[s] {
                    let t = turning[&(v, s as u8)];
                    x = &x * &LaurentZ::v_pow(WEIGHT[st[s]] * t / 60);
                }
            }
        }
        data.push(x);
    }
    Tensor { legs, data }.self_trace()
}

fn contract_component(g: &PortGraph, consts: &VertexConstants) -> LaurentZ {
    let turning = turning_angles(g);
    let mut pool: Vec<Tensor> = g.live().map(|(v, _)| vertex_tensor(g, v, consts, &turning)).collect();
    while pool.len() > 1 {
        // merge the pair sharing legs whose result is smallest
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                let shared = pool[i].legs.iter().filter(|l| pool[j].legs.contains(l)).count();
                if shared == 0 {
                    continue;
                }
                let size = pool[i].legs.len() + pool[j].legs.len() - 2 * shared;
                if best.is_none_or(|(_, _, s)| size < s) {
                    best = Some((i, j, size));
                }
            }
        }
        let (i, j, _) = best.expect("component is connected");
        let b = pool.swap_remove(j);
        let a = pool.swap_remove(i);
        pool.push(a.contract(&b).self_trace());
    }
    let last = pool.pop().expect("nonempty component");
    debug_assert!(last.legs.is_empty());
    last.data.into_iter().next().unwrap_or_default()
}

pub(crate) fn evaluate_with_constants(d: &WebDiagram, consts: &VertexConstants) -> LaurentZ {
    let g = PortGraph::from_diagram(d);
    let mut acc = loop_value().pow(g.loops.total());
    for members in g.components() {
        acc = &acc * &contract_component(&g.restrict(&members), consts);
    }
    acc
}

/// Closed-instance checks of the defining relations with `consts`.
pub fn relation_checks(consts: &VertexConstants) -> Vec<(&'static str, bool)> {
    use super::corpus::{self, Slice, Flow};
    let two = LaurentZ::from_terms([(6, BigInt::one()), (-6, BigInt::one())]);
    let three = loop_value();
    let eval = |d: &WebDiagram| evaluate_with_constants(d, consts);
    let mut out = Vec::new();

    let cw = WebDiagram::loops_only(super::doc::Loops { cw: 1, ccw: 0 });
    let ccw = WebDiagram::loops_only(super::doc::Loops { cw: 0, ccw: 1 });
    let traced_cw = corpus::build(&[Slice::Cup(0, Flow::Up), Slice::Cap(0)]).expect("loop");
    let traced_ccw = corpus::build(&[Slice::Cup(0, Flow::Down), Slice::Cap(0)]).expect("loop");
    out.push((
        "loop",
        eval(&cw) == three && eval(&ccw) == three && eval(&traced_cw) == three && eval(&traced_ccw) == three,
    ));
    let theta = corpus::theta();
    out.push(("bigon", eval(&theta) == -(&two * &three)));
    let cube = corpus::cube();
    out.push(("square", eval(&cube) == LaurentZ::from_terms([(0, BigInt::from(2))]) * two.pow(2) * three.clone()));
    for (name, positive) in [("crossing-positive", true), ("crossing-negative", false)] {
        let mut ok = true;
        for d in [corpus::kink(positive), corpus::hopf(positive)] {
            let direct = eval(&d);
            let expanded = super::resolve::resolve_crossings(&d)
                .iter()
                .fold(LaurentZ::zero(), |acc, (c, t)| acc + c * &eval(t));
            ok &= direct == expanded;
        }
        out.push((name, ok));
    }
    out
}

static SELF_CHECK: OnceLock<Result<(), String>> = OnceLock::new();

/// Verifies the frozen constants once per process.
pub fn self_check() -> Result<(), WebError> {
    SELF_CHECK
        .get_or_init(|| {
            let failed: Vec<&str> =
                relation_checks(&VertexConstants::frozen()).into_iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(failed.join(", "))
            }
        })
        .clone()
        .map_err(WebError::SelfCheck)
}

pub fn evaluate_closed_tensor(d: &WebDiagram) -> Result<LaurentZ, WebError> {
    self_check()?;
    Ok(evaluate_with_constants(d, &VertexConstants::frozen()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn candidates() -> Vec<LaurentZ> {
        let mut out = Vec::new();
        for k in -6..=6 {
            out.push(LaurentZ::v_pow(k));
            out.push(-LaurentZ::v_pow(k));
        }
        out
    }

    /// Rescaling sources by `x` and sinks by `1/x` changes nothing, so the
    /// even source entry is pinned to 1 and the rest searched.
    #[test]
    fn derive_vertex_constants() {
        let theta = super::super::corpus::theta();
        let expected = &super::super::reduce::bigon_value() * &loop_value();
        let mut found = Vec::new();
        for b in candidates() {
            for c in candidates() {
                for d in candidates() {
                    let consts = VertexConstants {
                        source_even: LaurentZ::one(),
                        source_odd: b.clone(),
                        sink_even: c.clone(),
                        sink_odd: d.clone(),
                    };
                    if evaluate_with_constants(&theta, &consts) != expected {
                        continue;
                    }
                    if relation_checks(&consts).iter().all(|(_, ok)| *ok) {
                        found.push(consts);
                    }
                }
            }
        }
        assert!(!found.is_empty());
        for k in &found {
            assert_eq!(&k.source_even * &k.sink_odd, -LaurentZ::v_pow(2));
            assert_eq!(&k.source_odd * &k.sink_even, -LaurentZ::v_pow(-2));
        }
        assert!(found.contains(&VertexConstants::frozen()));
    }

    #[test]
    fn frozen_constants_pass_every_relation() {
        let checks = relation_checks(&VertexConstants::frozen());
        assert!(checks.iter().all(|(_, ok)| *ok), "{checks:?}");
    }
}
