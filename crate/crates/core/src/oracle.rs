//! Brute-force cross-checks for the recursive generators.
//!
//! Everything here recomputes from first principles: classes by exhaustive
//! enumeration of edge multisets, automorphism counts by trying every
//! half-edge permutation, labeled counts by direct construction. The only
//! shared machinery is the `Graph` type and `canonicalize`; none of the
//! transform or recursion code is used.

use std::collections::BTreeMap;

use num::bigint::BigUint;
use thiserror::Error;

use crate::canonical::{canonicalize, CanonicalKey};
use crate::engine::{Engine, EngineError, Family, GenRequest};
use crate::graph::{permute, Graph, LegLabel, MAX_VERTICES};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("invalid enumeration request: {0}")]
    InvalidRequest(String),
    #[error("{what} {value} exceeds the oracle ceiling {limit}")]
    CeilingExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Ceilings for the exhaustive searches. The defaults keep every call well
/// under a second; raise them consciously.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_enum_edges: usize,
    pub max_halfedge_edges: usize,
    pub max_labeled_vertices: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_enum_edges: 6,
            max_halfedge_edges: 4,
            max_labeled_vertices: 6,
        }
    }
}

/// Family membership test used by the enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyPredicate {
    Connected,
    Biconnected,
    Simple,
    Loopless,
}

impl FamilyPredicate {
    pub fn holds(self, g: &Graph) -> bool {
        match self {
            FamilyPredicate::Connected => g.is_connected(),
            FamilyPredicate::Biconnected => g.is_biconnected(),
            FamilyPredicate::Simple => g.is_connected() && g.is_simple(),
            FamilyPredicate::Loopless => g.is_connected() && g.is_loopless(),
        }
    }

    /// Vertex-pair slots an edge may occupy without leaving the family.
    fn slots(self, n: usize) -> Vec<(usize, usize)> {
        let mut slots = Vec::new();
        for u in 1..=n {
            for v in u..=n {
                if u == v && self != FamilyPredicate::Connected && self != FamilyPredicate::Biconnected
                {
                    continue;
                }
                slots.push((u, v));
            }
        }
        slots
    }

    /// Largest multiplicity a single slot may carry.
    fn slot_cap(self, m: usize) -> usize {
        match self {
            FamilyPredicate::Simple => 1,
            _ => m,
        }
    }
}

impl From<Family> for FamilyPredicate {
    fn from(family: Family) -> Self {
        match family {
            Family::Connected => FamilyPredicate::Connected,
            Family::Biconnected => FamilyPredicate::Biconnected,
            Family::Simple => FamilyPredicate::Simple,
            Family::Loopless | Family::LooplessAlt => FamilyPredicate::Loopless,
        }
    }
}

/// One exhaustive-enumeration request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumSpec {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub predicate: FamilyPredicate,
}

impl EnumSpec {
    pub fn new(n: usize, k: usize, s: usize, predicate: FamilyPredicate) -> Self {
        EnumSpec { n, k, s, predicate }
    }

    pub fn edge_count(&self) -> usize {
        self.n + self.k - 1
    }
}

/// Verification record for one isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub key: CanonicalKey,
    pub coefficient: Rational,
    pub symmetry_factor: BigUint,
    pub ok: bool,
}

/// All isomorphism classes the request admits, keyed canonically, with the
/// canonical representative as value. Built by trying every multiset of
/// `m` edges over the vertex-pair slots and every placement of the labels
/// `x1..xs`, with no help from the recursion.
pub fn enumerate_classes(
    spec: &EnumSpec,
) -> Result<BTreeMap<CanonicalKey, Graph>, OracleError> {
    enumerate_classes_with(&OracleConfig::default(), spec)
}

pub fn enumerate_classes_with(
    config: &OracleConfig,
    spec: &EnumSpec,
) -> Result<BTreeMap<CanonicalKey, Graph>, OracleError> {
    if spec.n == 0 {
        return Err(OracleError::InvalidRequest(
            "vertex count must be at least 1".into(),
        ));
    }
    if spec.n > MAX_VERTICES {
        return Err(OracleError::CeilingExceeded {
            what: "vertex count",
            value: spec.n,
            limit: MAX_VERTICES,
        });
    }
    let m = spec.edge_count();
    if m > config.max_enum_edges {
        return Err(OracleError::CeilingExceeded {
            what: "internal edge count",
            value: m,
            limit: config.max_enum_edges,
        });
    }

    let slots = spec.predicate.slots(spec.n);
    let cap = spec.predicate.slot_cap(m);
    let labels = LegLabel::standard(spec.s);
    let mut classes = BTreeMap::new();
    let mut counts = vec![0usize; slots.len()];
    distribute_edges(
        &slots,
        cap,
        m,
        0,
        &mut counts,
        &mut |skeleton_counts| {
            let mut skeleton = Graph::new(spec.n).expect("n validated");
            for (slot, &count) in slots.iter().zip(skeleton_counts.iter()) {
                for _ in 0..count {
                    skeleton
                        .add_internal_edge(slot.0, slot.1)
                        .expect("slot vertices in range");
                }
            }
            if !spec.predicate.holds(&skeleton) {
                return;
            }
            debug_assert_eq!(skeleton.cyclomatic_number(), spec.k);
            for_each_leg_placement(&skeleton, &labels, &mut |g| {
                let (canon, key) = canonicalize(g);
                classes.entry(key).or_insert(canon);
            });
        },
    );
    Ok(classes)
}

fn distribute_edges(
    slots: &[(usize, usize)],
    cap: usize,
    remaining: usize,
    idx: usize,
    counts: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if idx == slots.len() {
        if remaining == 0 {
            visit(counts);
        }
        return;
    }
    let slots_left = slots.len() - idx;
    if remaining > cap * slots_left {
        return;
    }
    for take in 0..=remaining.min(cap) {
        counts[idx] = take;
        distribute_edges(slots, cap, remaining - take, idx + 1, counts, visit);
    }
    counts[idx] = 0;
}

fn for_each_leg_placement(skeleton: &Graph, labels: &[LegLabel], visit: &mut impl FnMut(&Graph)) {
    let n = skeleton.n();
    let mut choice = vec![1usize; labels.len()];
    loop {
        let mut g = skeleton.clone();
        for (label, &v) in labels.iter().zip(&choice) {
            g.add_leg(v, label.clone()).expect("labels are distinct");
        }
        visit(&g);
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return;
            }
            choice[pos] += 1;
            if choice[pos] <= n {
                break;
            }
            choice[pos] = 1;
            pos += 1;
        }
    }
}

/// The automorphism group order computed straight from the definition: a
/// relabeling of vertices together with a relabeling of edge ends that
/// respects end incidence, the end pairing into edges, and the leg labels.
pub fn halfedge_automorphism_count(g: &Graph) -> Result<BigUint, OracleError> {
    halfedge_automorphism_count_with(&OracleConfig::default(), g)
}

pub fn halfedge_automorphism_count_with(
    config: &OracleConfig,
    g: &Graph,
) -> Result<BigUint, OracleError> {
    let m = g.internal_edge_count();
    if m > config.max_halfedge_edges {
        return Err(OracleError::CeilingExceeded {
            what: "internal edge count",
            value: m,
            limit: config.max_halfedge_edges,
        });
    }
    let n = g.n();

    // End `2e` sits at the first endpoint of edge instance `e`, end
    // `2e + 1` at the second; partner(x) = x XOR 1.
    let mut end_vertex = Vec::with_capacity(2 * m);
    for (u, v) in g.edge_instances() {
        end_vertex.push(u);
        end_vertex.push(v);
    }

    let legs_by_vertex: Vec<Vec<&LegLabel>> = (1..=n)
        .map(|v| g.leg_labels(v).collect())
        .collect();

    let mut total = BigUint::from(0u32);
    let mut vertices: Vec<usize> = (1..=n).collect();
    permute(&mut vertices, 0, &mut |pi| {
        if (1..=n).any(|v| legs_by_vertex[v - 1] != legs_by_vertex[pi[v - 1] - 1]) {
            return;
        }
        let mut matched = 0u64;
        let mut ends: Vec<usize> = (0..2 * m).collect();
        permute(&mut ends, 0, &mut |tau| {
            for x in 0..2 * m {
                if end_vertex[tau[x]] != pi[end_vertex[x] - 1] {
                    return;
                }
                if tau[x ^ 1] != tau[x] ^ 1 {
                    return;
                }
            }
            matched += 1;
        });
        total += matched;
    });
    Ok(total)
}

/// What `labeled_count` counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabeledFamily {
    SimpleConnected,
    Trees,
}

/// Number of labeled graphs on `n` named vertices with `m` edges, by
/// exhaustive construction over edge subsets.
pub fn labeled_count(n: usize, m: usize, family: LabeledFamily) -> Result<u64, OracleError> {
    labeled_count_with(&OracleConfig::default(), n, m, family)
}

pub fn labeled_count_with(
    config: &OracleConfig,
    n: usize,
    m: usize,
    family: LabeledFamily,
) -> Result<u64, OracleError> {
    if n == 0 {
        return Err(OracleError::InvalidRequest(
            "vertex count must be at least 1".into(),
        ));
    }
    if n > config.max_labeled_vertices {
        return Err(OracleError::CeilingExceeded {
            what: "vertex count",
            value: n,
            limit: config.max_labeled_vertices,
        });
    }
    if family == LabeledFamily::Trees && m + 1 != n {
        return Err(OracleError::InvalidRequest(format!(
            "a tree on {n} vertices has {} edges, not {m}",
            n - 1
        )));
    }

    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    if m > pairs.len() {
        return Ok(0);
    }
    let mut count = 0u64;
    for mask in 0u32..1 << pairs.len() {
        if mask.count_ones() as usize != m {
            continue;
        }
        let mut g = Graph::new(n).expect("n validated");
        for (idx, &(u, v)) in pairs.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                g.add_internal_edge(u, v).expect("pair in range");
            }
        }
        if g.is_connected() {
            count += 1;
        }
    }
    Ok(count)
}

/// Runs the recursion for the request and checks every class against the
/// exhaustive enumeration: the class sets must agree and each coefficient
/// must equal the inverse symmetry factor. Mismatches come back as reports
/// with `ok = false`, not as errors.
pub fn verify(
    engine: &mut Engine,
    family: Family,
    n: usize,
    k: usize,
    s: usize,
) -> Result<Vec<ClassReport>, OracleError> {
    verify_with(&OracleConfig::default(), engine, family, n, k, s)
}

pub fn verify_with(
    config: &OracleConfig,
    engine: &mut Engine,
    family: Family,
    n: usize,
    k: usize,
    s: usize,
) -> Result<Vec<ClassReport>, OracleError> {
    let generated = engine.generate(&GenRequest::new(family, n, k, s))?;
    let expected = enumerate_classes_with(config, &EnumSpec::new(n, k, s, family.into()))?;

    let mut reports = Vec::new();
    let mut produced: BTreeMap<&CanonicalKey, (&Graph, &Rational)> = BTreeMap::new();
    for (key, g, c) in generated.terms() {
        produced.insert(key, (g, c));
    }

    for (key, representative) in &expected {
        let symmetry = representative.symmetry_factor();
        let target = Rational::inverse_of(&symmetry).expect("symmetry factor is positive");
        let coefficient = produced
            .remove(key)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero);
        let ok = coefficient == target;
        reports.push(ClassReport {
            key: key.clone(),
            coefficient,
            symmetry_factor: symmetry,
            ok,
        });
    }
    // Anything still unmatched was generated outside the family.
    for (key, (g, c)) in produced {
        reports.push(ClassReport {
            key: key.clone(),
            coefficient: c.clone(),
            symmetry_factor: g.symmetry_factor(),
            ok: false,
        });
    }
    reports.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(reports)
}
