//! Elementary linear maps on graph sums.
//!
//! Each operation acts termwise on a [`GraphSum`], re-collapsing the result
//! immediately: attaching loops or edges, erasing them again, splitting a
//! vertex in two over all assignments of its incident edge ends, the
//! composed q-maps (split then reconnect with parallel edges), edge
//! contraction, and distribution or attachment of external legs.
//!
//! ```
//! use graphgen::graph::Graph;
//! use graphgen::sum::GraphSum;
//! use graphgen::transforms::q_map;
//! use graphgen::rational::Rational;
//!
//! let vertex = GraphSum::singleton(Graph::new(1).unwrap(), Rational::one());
//! let k2 = q_map(&vertex, 1, 1).unwrap();
//! assert_eq!(k2.class_count(), 1);
//! assert_eq!(k2.total_mass(), Rational::new(1, 2).unwrap());
//! ```

use std::collections::BTreeMap;

use num::bigint::BigInt;

use crate::graph::{factorial, Graph, GraphError, LegLabel, MAX_VERTICES};
use crate::rational::Rational;
use crate::sum::{GraphSum, SumError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("edge maps need two distinct vertices, got {v} twice (loops go through add_loop)")]
    SelfPair { v: usize },
    #[error("contraction expects i < j, got ({i}, {j})")]
    ContractionOrder { i: usize, j: usize },
    #[error("a term has no loop at vertex {v}")]
    MissingLoop { v: usize },
    #[error("a term has no edge between {u} and {v}")]
    MissingEdge { u: usize, v: usize },
    #[error("splitting would exceed the {MAX_VERTICES}-vertex maximum")]
    TooManyVertices,
    #[error("vertex {v} has {count} edge ends, more than a split can enumerate")]
    TooManyEnds { v: usize, count: usize },
    #[error("q-maps need rho >= 1")]
    ZeroRho,
    #[error("erasing from an edgeless sum")]
    NoEdgesToErase,
    #[error("leg label {0} already present")]
    LabelCollision(String),
    #[error("labels collide within the new label list")]
    DuplicateNewLabel,
    #[error("target vertices must be distinct")]
    DuplicateTarget,
    #[error("vertex {v} already has a leg")]
    TargetHasLeg { v: usize },
    #[error(transparent)]
    Shape(#[from] SumError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One end slot incident to a vertex: a loop contributes two, a non-loop
/// edge instance one, a leg one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndSlot {
    LoopEnd { pair: usize, side: u8 },
    EdgeEnd { neighbor: usize, instance: usize },
    LegEnd { label: LegLabel },
}

/// Enumerates the end slots of `v` in a fixed deterministic order.
pub fn end_slots(g: &Graph, v: usize) -> Vec<EndSlot> {
    let mut slots = Vec::with_capacity(g.degree(v));
    for pair in 0..g.loops_at(v) {
        slots.push(EndSlot::LoopEnd { pair, side: 0 });
        slots.push(EndSlot::LoopEnd { pair, side: 1 });
    }
    for ((a, b), m) in g.edge_multiplicities() {
        if a == b || (a != v && b != v) {
            continue;
        }
        let neighbor = if a == v { b } else { a };
        for instance in 0..m {
            slots.push(EndSlot::EdgeEnd { neighbor, instance });
        }
    }
    for label in g.leg_labels(v) {
        slots.push(EndSlot::LegEnd {
            label: label.clone(),
        });
    }
    slots
}

fn check_vertex(sum: &GraphSum, v: usize) -> Result<(), TransformError> {
    if v == 0 || v > sum.n() {
        Err(TransformError::VertexOutOfRange { v, n: sum.n() })
    } else {
        Ok(())
    }
}

/// Attaches one loop at vertex `i` of every term.
pub fn add_loop(sum: &GraphSum, i: usize) -> Result<GraphSum, TransformError> {
    check_vertex(sum, i)?;
    let raw = sum.terms().map(|(_, g, c)| {
        let mut h = g.clone();
        h.add_internal_edge(i, i).expect("index checked");
        (h, c.clone())
    });
    Ok(GraphSum::collapse_from(sum.n(), sum.m() + 1, sum.s(), raw)?)
}

/// Erases one loop at vertex `i` from every term; errors if a term has
/// none.
pub fn erase_loop(sum: &GraphSum, i: usize) -> Result<GraphSum, TransformError> {
    check_vertex(sum, i)?;
    let m_out = sum.m().checked_sub(1).ok_or(TransformError::NoEdgesToErase)?;
    let mut raw = Vec::new();
    for (_, g, c) in sum.terms() {
        let mut h = g.clone();
        if !h.remove_internal_edge(i, i) {
            return Err(TransformError::MissingLoop { v: i });
        }
        raw.push((h, c.clone()));
    }
    Ok(GraphSum::collapse_from(sum.n(), m_out, sum.s(), raw)?)
}

fn check_edge_pair(sum: &GraphSum, i: usize, j: usize) -> Result<(), TransformError> {
    check_vertex(sum, i)?;
    check_vertex(sum, j)?;
    if i == j {
        return Err(TransformError::SelfPair { v: i });
    }
    Ok(())
}

/// Connects the distinct vertices `i` and `j` with one new edge in every
/// term.
pub fn add_edge(sum: &GraphSum, i: usize, j: usize) -> Result<GraphSum, TransformError> {
    check_edge_pair(sum, i, j)?;
    let raw = sum.terms().map(|(_, g, c)| {
        let mut h = g.clone();
        h.add_internal_edge(i, j).expect("indices checked");
        (h, c.clone())
    });
    Ok(GraphSum::collapse_from(sum.n(), sum.m() + 1, sum.s(), raw)?)
}

/// Erases one edge instance between `i` and `j` from every term; errors if
/// a term has none.
pub fn erase_edge(sum: &GraphSum, i: usize, j: usize) -> Result<GraphSum, TransformError> {
    check_edge_pair(sum, i, j)?;
    let m_out = sum.m().checked_sub(1).ok_or(TransformError::NoEdgesToErase)?;
    let mut raw = Vec::new();
    for (_, g, c) in sum.terms() {
        let mut h = g.clone();
        if !h.remove_internal_edge(i, j) {
            return Err(TransformError::MissingEdge { u: i, v: j });
        }
        raw.push((h, c.clone()));
    }
    Ok(GraphSum::collapse_from(sum.n(), m_out, sum.s(), raw)?)
}

/// Adds the edge `{i, j}` only to terms where `i` and `j` are already
/// adjacent; other terms are dropped.
pub fn add_edge_adjacent(sum: &GraphSum, i: usize, j: usize) -> Result<GraphSum, TransformError> {
    check_edge_pair(sum, i, j)?;
    let raw = sum.terms().filter(|(_, g, _)| g.multiplicity(i, j) > 0).map(|(_, g, c)| {
        let mut h = g.clone();
        h.add_internal_edge(i, j).expect("indices checked");
        (h, c.clone())
    });
    Ok(GraphSum::collapse_from(sum.n(), sum.m() + 1, sum.s(), raw)?)
}

/// Adds the edge `{i, j}` only to terms where `i` and `j` are not yet
/// adjacent; other terms are dropped.
pub fn add_edge_nonadjacent(
    sum: &GraphSum,
    i: usize,
    j: usize,
) -> Result<GraphSum, TransformError> {
    check_edge_pair(sum, i, j)?;
    let raw = sum.terms().filter(|(_, g, _)| g.multiplicity(i, j) == 0).map(|(_, g, c)| {
        let mut h = g.clone();
        h.add_internal_edge(i, j).expect("indices checked");
        (h, c.clone())
    });
    Ok(GraphSum::collapse_from(sum.n(), sum.m() + 1, sum.s(), raw)?)
}

/// How a split restricts the two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SplitFilter {
    All,
    Connected,
    Disconnected,
    /// Both sides must keep at least this many end slots.
    MinEnds(usize),
}

/// Splits vertex `i` of every term into vertices `i` and `n + 1`, one
/// output per assignment of the `deg(i)` end slots to the two sides. A loop
/// whose ends land on different sides becomes an edge between them; legs
/// and edge ends follow their side.
pub fn split_vertex(sum: &GraphSum, i: usize) -> Result<GraphSum, TransformError> {
    split_with(sum, i, SplitFilter::All)
}

/// [`split_vertex`] keeping only connected outputs.
pub fn split_connected(sum: &GraphSum, i: usize) -> Result<GraphSum, TransformError> {
    split_with(sum, i, SplitFilter::Connected)
}

/// [`split_vertex`] keeping only disconnected outputs.
pub fn split_disconnected(sum: &GraphSum, i: usize) -> Result<GraphSum, TransformError> {
    split_with(sum, i, SplitFilter::Disconnected)
}

/// [`split_vertex`] keeping only assignments where each side receives at
/// least `nu - rho` end slots.
pub fn split_min_degree(
    sum: &GraphSum,
    i: usize,
    rho: usize,
    nu: usize,
) -> Result<GraphSum, TransformError> {
    if rho == 0 {
        return Err(TransformError::ZeroRho);
    }
    split_with(sum, i, SplitFilter::MinEnds(nu.saturating_sub(rho)))
}

fn split_with(sum: &GraphSum, i: usize, filter: SplitFilter) -> Result<GraphSum, TransformError> {
    let raw = split_raw(sum, i, filter)?;
    Ok(GraphSum::collapse_from(sum.n() + 1, sum.m(), sum.s(), raw)?)
}

/// Split without the final collapse, so callers can keep operating on the
/// split vertex `i` and the fresh vertex `n + 1` by position.
fn split_raw(
    sum: &GraphSum,
    i: usize,
    filter: SplitFilter,
) -> Result<BTreeMap<Graph, Rational>, TransformError> {
    check_vertex(sum, i)?;
    let n = sum.n();
    if n + 1 > MAX_VERTICES {
        return Err(TransformError::TooManyVertices);
    }
    let new_v = n + 1;
    let mut raw: BTreeMap<Graph, Rational> = BTreeMap::new();
    for (_, g, c) in sum.terms() {
        let slots = end_slots(g, i);
        let deg = slots.len();
        if deg >= 64 {
            return Err(TransformError::TooManyEnds { v: i, count: deg });
        }
        for mask in 0u64..(1u64 << deg) {
            if let SplitFilter::MinEnds(bound) = filter {
                let moved = mask.count_ones() as usize;
                if moved < bound || deg - moved < bound {
                    continue;
                }
            }
            let mut h = Graph::new(new_v)?;
            for ((a, b), m) in g.edge_multiplicities() {
                if a == i || b == i {
                    continue;
                }
                for _ in 0..m {
                    h.add_internal_edge(a, b)?;
                }
            }
            for (v, label) in g.legs() {
                if v != i {
                    h.add_leg(v, label.clone())?;
                }
            }
            let side = |idx: usize| -> usize {
                if mask & (1 << idx) != 0 {
                    new_v
                } else {
                    i
                }
            };
            let mut idx = 0;
            while idx < deg {
                match &slots[idx] {
                    EndSlot::LoopEnd { .. } => {
                        let (s0, s1) = (side(idx), side(idx + 1));
                        h.add_internal_edge(s0, s1)?;
                        idx += 2;
                    }
                    EndSlot::EdgeEnd { neighbor, .. } => {
                        h.add_internal_edge(side(idx), *neighbor)?;
                        idx += 1;
                    }
                    EndSlot::LegEnd { label } => {
                        h.add_leg(side(idx), label.clone())?;
                        idx += 1;
                    }
                }
            }
            let keep = match filter {
                SplitFilter::All | SplitFilter::MinEnds(_) => true,
                SplitFilter::Connected => h.is_connected(),
                SplitFilter::Disconnected => !h.is_connected(),
            };
            if keep {
                match raw.get_mut(&h) {
                    Some(acc) => *acc += c,
                    None => {
                        raw.insert(h, c.clone());
                    }
                }
            }
        }
    }
    Ok(raw)
}

fn q_scale(rho: usize) -> Rational {
    let denom = BigInt::from(2) * BigInt::from(factorial(rho - 1));
    Rational::from_big(BigInt::from(1), denom).expect("denominator is positive")
}

fn q_finish(
    sum: &GraphSum,
    i: usize,
    rho: usize,
    filter: SplitFilter,
) -> Result<GraphSum, TransformError> {
    if rho == 0 {
        return Err(TransformError::ZeroRho);
    }
    let new_v = sum.n() + 1;
    let raw = split_raw(sum, i, filter)?;
    let scale = q_scale(rho);
    let finished = raw.into_iter().map(|(mut h, c)| {
        for _ in 0..rho {
            h.add_internal_edge(i, new_v)
                .expect("both endpoints exist in the split graph");
        }
        let scaled = &c * &scale;
        (h, scaled)
    });
    Ok(GraphSum::collapse_from(new_v, sum.m() + rho, sum.s(), finished)?)
}

/// Splits vertex `i`, reconnects the two sides with `rho` parallel edges,
/// and scales by `1 / (2 (rho - 1)!)`.
pub fn q_map(sum: &GraphSum, i: usize, rho: usize) -> Result<GraphSum, TransformError> {
    q_finish(sum, i, rho, SplitFilter::All)
}

/// [`q_map`] restricted to connected splits.
pub fn q_map_connected(sum: &GraphSum, i: usize, rho: usize) -> Result<GraphSum, TransformError> {
    q_finish(sum, i, rho, SplitFilter::Connected)
}

/// [`q_map`] restricted to disconnected splits.
pub fn q_map_disconnected(
    sum: &GraphSum,
    i: usize,
    rho: usize,
) -> Result<GraphSum, TransformError> {
    q_finish(sum, i, rho, SplitFilter::Disconnected)
}

/// [`q_map`] restricted to splits where both sides keep at least `nu - rho`
/// end slots, so both endpoints of the new edge bundle end with degree at
/// least `nu`.
pub fn q_map_min_degree(
    sum: &GraphSum,
    i: usize,
    rho: usize,
    nu: usize,
) -> Result<GraphSum, TransformError> {
    q_finish(sum, i, rho, SplitFilter::MinEnds(nu.saturating_sub(rho)))
}

/// Contracts one edge instance `{i, j}`: the instance is removed, `j`'s
/// remaining ends move to `i` (other parallel `{i, j}` instances close into
/// loops), and vertices above `j` shift down by one.
pub fn contract_edge(sum: &GraphSum, i: usize, j: usize) -> Result<GraphSum, TransformError> {
    check_vertex(sum, i)?;
    check_vertex(sum, j)?;
    if i >= j {
        return Err(TransformError::ContractionOrder { i, j });
    }
    let m_out = sum.m().checked_sub(1).ok_or(TransformError::NoEdgesToErase)?;
    let rename = |w: usize| -> usize {
        if w == j {
            i
        } else if w > j {
            w - 1
        } else {
            w
        }
    };
    let mut raw = Vec::new();
    for (_, g, c) in sum.terms() {
        if g.multiplicity(i, j) == 0 {
            return Err(TransformError::MissingEdge { u: i, v: j });
        }
        let mut stripped = g.clone();
        stripped.remove_internal_edge(i, j);
        let mut h = Graph::new(sum.n() - 1)?;
        for (a, b) in stripped.edge_instances() {
            h.add_internal_edge(rename(a), rename(b))?;
        }
        for (v, label) in stripped.legs() {
            h.add_leg(rename(v), label.clone())?;
        }
        raw.push((h, c.clone()));
    }
    Ok(GraphSum::collapse_from(sum.n() - 1, m_out, sum.s(), raw)?)
}

fn check_new_labels(sum: &GraphSum, new_labels: &[LegLabel]) -> Result<(), TransformError> {
    for (a, label) in new_labels.iter().enumerate() {
        if new_labels[..a].contains(label) {
            return Err(TransformError::DuplicateNewLabel);
        }
        if sum.terms().any(|(_, g, _)| g.has_label(label)) {
            return Err(TransformError::LabelCollision(label.to_string()));
        }
    }
    Ok(())
}

/// Distributes the new labels over the target vertices: one output per
/// function from labels to targets.
pub fn distribute_legs(
    sum: &GraphSum,
    new_labels: &[LegLabel],
    targets: &[usize],
) -> Result<GraphSum, TransformError> {
    for &v in targets {
        check_vertex(sum, v)?;
    }
    for (a, &v) in targets.iter().enumerate() {
        if targets[..a].contains(&v) {
            return Err(TransformError::DuplicateTarget);
        }
    }
    check_new_labels(sum, new_labels)?;
    let s_out = sum.s() + new_labels.len();
    if !new_labels.is_empty() && targets.is_empty() {
        return Ok(GraphSum::empty(sum.n(), sum.m(), s_out));
    }
    let mut raw = Vec::new();
    for (_, g, c) in sum.terms() {
        let mut choice = vec![0usize; new_labels.len()];
        'assign: loop {
            let mut h = g.clone();
            for (label, &t) in new_labels.iter().zip(&choice) {
                h.add_leg(targets[t], label.clone())?;
            }
            raw.push((h, c.clone()));
            for pos in 0..=choice.len() {
                if pos == choice.len() {
                    break 'assign;
                }
                choice[pos] += 1;
                if choice[pos] < targets.len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }
    Ok(GraphSum::collapse_from(sum.n(), sum.m(), s_out, raw)?)
}

/// Attaches each label to its paired vertex, which must currently carry no
/// legs.
pub fn attach_legs(
    sum: &GraphSum,
    assignments: &[(LegLabel, usize)],
) -> Result<GraphSum, TransformError> {
    let labels: Vec<LegLabel> = assignments.iter().map(|(l, _)| l.clone()).collect();
    check_new_labels(sum, &labels)?;
    for (a, &(_, v)) in assignments.iter().enumerate() {
        check_vertex(sum, v)?;
        if assignments[..a].iter().any(|&(_, w)| w == v) {
            return Err(TransformError::DuplicateTarget);
        }
    }
    let mut raw = Vec::new();
    for (_, g, c) in sum.terms() {
        for &(_, v) in assignments {
            if g.leg_labels(v).next().is_some() {
                return Err(TransformError::TargetHasLeg { v });
            }
        }
        let mut h = g.clone();
        for (label, v) in assignments {
            h.add_leg(*v, label.clone())?;
        }
        raw.push((h, c.clone()));
    }
    Ok(GraphSum::collapse_from(
        sum.n(),
        sum.m(),
        sum.s() + assignments.len(),
        raw,
    )?)
}
