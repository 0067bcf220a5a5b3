//! The multigraph value type.
//!
//! A [`Graph`] has `n` vertices indexed `1..=n`, a multiset of internal
//! edges over unordered vertex pairs (a pair `{v, v}` is a loop), and a set
//! of labeled external legs, each attached to exactly one vertex. Parallel
//! edges are stored as multiplicities; individual edge instances carry no
//! identity of their own.
//!
//! ```
//! use graphgen::graph::Graph;
//!
//! let mut g = Graph::new(3).unwrap();
//! g.add_internal_edge(1, 2).unwrap();
//! g.add_internal_edge(2, 3).unwrap();
//! g.add_internal_edge(1, 3).unwrap();
//! assert!(g.is_connected());
//! assert!(g.is_biconnected());
//! assert_eq!(g.cyclomatic_number(), 1);
//! assert_eq!(g.symmetry_factor(), 6u32.into());
//! ```

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::bigint::BigUint;
use num::One;
use thiserror::Error;

/// Hard cap on the vertex count. Canonical labeling enumerates all `n!`
/// relabelings, so the practical working range is a fair bit lower.
pub const MAX_VERTICES: usize = 12;

/// Error raised by graph construction and mutation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("vertex count {0} exceeds the supported maximum {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("leg label {0} is already attached")]
    DuplicateLegLabel(String),
}

/// External-leg label, ordered naturally: `x2 < x10`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LegLabel(String);

impl LegLabel {
    pub fn new(s: impl Into<String>) -> Self {
        LegLabel(s.into())
    }

    /// The conventional label set `x1..=xs`.
    pub fn standard(s: usize) -> Vec<LegLabel> {
        (1..=s).map(|z| LegLabel(format!("x{z}"))).collect()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, Option<u64>) {
        let head = self.0.trim_end_matches(|c: char| c.is_ascii_digit());
        let tail = &self.0[head.len()..];
        (head, tail.parse().ok())
    }
}

impl Ord for LegLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        let (ah, an) = self.split();
        let (bh, bn) = other.split();
        ah.cmp(bh)
            .then_with(|| an.cmp(&bn))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LegLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LegLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A vertex-labeled multigraph with loops and external legs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n: usize,
    /// `(u, v)` with `u <= v` mapped to multiplicity; `u == v` is a loop.
    edges: BTreeMap<(usize, usize), usize>,
    /// Vertex to its leg labels; only vertices with legs appear.
    legs: BTreeMap<usize, BTreeSet<LegLabel>>,
}

impl Graph {
    /// A graph of `n` bare vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            edges: BTreeMap::new(),
            legs: BTreeMap::new(),
        })
    }

    /// Builds a graph from an edge list (pairs may be given in any order)
    /// and leg attachments.
    pub fn from_parts(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        legs: impl IntoIterator<Item = (usize, LegLabel)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for (u, v) in edges {
            g.add_internal_edge(u, v)?;
        }
        for (v, label) in legs {
            g.add_leg(v, label)?;
        }
        Ok(g)
    }

    /// Single vertex carrying the standard labels `x1..=xs`.
    pub fn single_vertex(s: usize) -> Self {
        let mut g = Graph::new(1).expect("one vertex is always valid");
        for label in LegLabel::standard(s) {
            g.add_leg(1, label).expect("labels are distinct");
        }
        g
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds one internal edge instance between `u` and `v` (`u == v` adds a
    /// loop).
    pub fn add_internal_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let key = (u.min(v), u.max(v));
        *self.edges.entry(key).or_insert(0) += 1;
        Ok(())
    }

    /// Removes one instance of the edge `{u, v}`. Returns whether an
    /// instance was present.
    pub fn remove_internal_edge(&mut self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        match self.edges.get_mut(&key) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.edges.remove(&key);
                true
            }
            None => false,
        }
    }

    pub fn add_leg(&mut self, v: usize, label: LegLabel) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        if self.has_label(&label) {
            return Err(GraphError::DuplicateLegLabel(label.to_string()));
        }
        self.legs.entry(v).or_default().insert(label);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Internal edge count `m`, with multiplicity; a loop counts once.
    pub fn internal_edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    /// Total number of legs `s`.
    pub fn leg_count(&self) -> usize {
        self.legs.values().map(BTreeSet::len).sum()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges
            .get(&(u.min(v), u.max(v)))
            .copied()
            .unwrap_or(0)
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.multiplicity(v, v)
    }

    /// Iterates `((u, v), multiplicity)` with `u <= v`, ascending.
    pub fn edge_multiplicities(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().map(|(&k, &m)| (k, m))
    }

    /// Edge instances with repetition: a multiplicity-3 pair appears three
    /// times.
    pub fn edge_instances(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .flat_map(|(&k, &m)| std::iter::repeat(k).take(m))
    }

    pub fn leg_labels(&self, v: usize) -> impl Iterator<Item = &LegLabel> {
        self.legs.get(&v).into_iter().flatten()
    }

    /// Iterates `(vertex, label)` over all legs.
    pub fn legs(&self) -> impl Iterator<Item = (usize, &LegLabel)> {
        self.legs
            .iter()
            .flat_map(|(&v, set)| set.iter().map(move |l| (v, l)))
    }

    pub fn has_label(&self, label: &LegLabel) -> bool {
        self.legs.values().any(|set| set.contains(label))
    }

    /// Degree of `v`: two per loop, one per non-loop edge instance, one per
    /// leg.
    pub fn degree(&self, v: usize) -> usize {
        let mut d = 2 * self.loops_at(v);
        for (&(a, b), &m) in &self.edges {
            if a != b && (a == v || b == v) {
                d += m;
            }
        }
        d + self.legs.get(&v).map_or(0, BTreeSet::len)
    }

    /// Connected components over non-loop adjacency; isolated vertices are
    /// their own components.
    fn component_count(&self) -> usize {
        let mut comp: Vec<usize> = (0..self.n).collect();
        fn find(comp: &mut Vec<usize>, mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        for (&(u, v), _) in &self.edges {
            if u != v {
                let (ru, rv) = (find(&mut comp, u - 1), find(&mut comp, v - 1));
                if ru != rv {
                    comp[ru] = rv;
                }
            }
        }
        (0..self.n).filter(|&x| find(&mut comp, x) == x).count()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Connected and still connected after erasing any single internal
    /// edge. Loops never disconnect; a parallel pair protects its
    /// endpoints; a single vertex counts as biconnected.
    pub fn is_biconnected(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        for (&(u, v), &m) in &self.edges {
            if u == v || m >= 2 {
                continue;
            }
            let mut probe = self.clone();
            probe.remove_internal_edge(u, v);
            if !probe.is_connected() {
                return false;
            }
        }
        true
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|(&(u, v), &m)| u != v && m <= 1)
    }

    pub fn is_loopless(&self) -> bool {
        self.edges.keys().all(|&(u, v)| u != v)
    }

    /// `k = m - n + c`, the dimension of the cycle space.
    pub fn cyclomatic_number(&self) -> usize {
        self.internal_edge_count() + self.component_count() - self.n
    }

    /// The graph with vertex `v` renamed to `perm[v - 1]`; `perm` must be a
    /// permutation of `1..=n`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut edges = BTreeMap::new();
        for (&(u, v), &m) in &self.edges {
            let (a, b) = (perm[u - 1], perm[v - 1]);
            *edges.entry((a.min(b), a.max(b))).or_insert(0) += m;
        }
        let legs = self
            .legs
            .iter()
            .map(|(&v, set)| (perm[v - 1], set.clone()))
            .collect();
        Graph {
            n: self.n,
            edges,
            legs,
        }
    }

    /// Counts vertex permutations preserving loop counts, pairwise
    /// multiplicities, and per-vertex leg-label sets.
    pub fn vertex_automorphism_count(&self) -> BigUint {
        let mut count: u64 = 0;
        let mut perm: Vec<usize> = (1..=self.n).collect();
        permute(&mut perm, 0, &mut |p| {
            if self.is_fixed_by(p) {
                count += 1;
            }
        });
        count.into()
    }

    fn is_fixed_by(&self, perm: &[usize]) -> bool {
        for (&v, set) in &self.legs {
            let image = perm[v - 1];
            if self.legs.get(&image) != Some(set) {
                return false;
            }
        }
        for u in 1..=self.n {
            let pu = perm[u - 1];
            if self.loops_at(u) != self.loops_at(pu) {
                return false;
            }
            for v in u + 1..=self.n {
                if self.multiplicity(u, v) != self.multiplicity(pu, perm[v - 1]) {
                    return false;
                }
            }
        }
        true
    }

    /// Order of the automorphism group acting on vertices and half-edges:
    /// the vertex part times `2^l * l!` per vertex for its `l` loops times
    /// `mu!` per vertex pair of multiplicity `mu`.
    pub fn symmetry_factor(&self) -> BigUint {
        let mut s = self.vertex_automorphism_count();
        for (&(u, v), &m) in &self.edges {
            if u == v {
                s *= BigUint::one() << m;
                s *= factorial(m);
            } else {
                s *= factorial(m);
            }
        }
        s
    }
}

pub(crate) fn factorial(n: usize) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=n {
        f *= BigUint::from(i);
    }
    f
}

/// Heap's algorithm; calls `visit` on every permutation of `items`.
pub(crate) fn permute<T, F: FnMut(&[T])>(items: &mut [T], k: usize, visit: &mut F) {
    let n = items.len();
    if k == n {
        visit(items);
        return;
    }
    for i in k..n {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
