//! The recursive generators.
//!
//! Five families of connected multigraphs are generated as exact formal
//! sums over isomorphism classes, each class ending with coefficient
//! `1/|Aut|`. Every family shares the same skeleton: the sum for `(n, k)`
//! is assembled from the sums at `(n - 1, *)` by vertex splitting (the
//! q-maps) and from `(n, k - 1)` by attaching a loop or an extra edge,
//! scaled by `1/(k + n - 1)`.
//!
//! Evaluation is bottom-up over `(n, k)` in diagonals of constant
//! `m = k + n - 1`, with every level memoized per `(family, n, k, s)`.
//!
//! ```
//! use graphgen::engine::{Engine, Family, GenRequest};
//!
//! let mut engine = Engine::new();
//! let sum = engine.generate(&GenRequest::new(Family::Connected, 2, 1, 0)).unwrap();
//! assert_eq!(sum.class_count(), 2);
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, LegLabel, MAX_VERTICES};
use crate::rational::Rational;
use crate::sum::GraphSum;
use crate::transforms::{
    add_edge_adjacent, add_edge_nonadjacent, add_loop, distribute_legs, q_map, q_map_connected,
    q_map_disconnected, q_map_min_degree, TransformError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("{what} {value} exceeds the configured ceiling {limit}")]
    CeilingExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// Which class of connected graphs to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Connected,
    Biconnected,
    Simple,
    Loopless,
    /// Loopless graphs again, built purely from multi-edge q-maps instead
    /// of an edge-duplication summand. Agrees with `Loopless` termwise.
    LooplessAlt,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Connected,
        Family::Biconnected,
        Family::Simple,
        Family::Loopless,
        Family::LooplessAlt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Connected => "connected",
            Family::Biconnected => "biconnected",
            Family::Simple => "simple",
            Family::Loopless => "loopless",
            Family::LooplessAlt => "loopless-alt",
        }
    }

    /// Membership predicate for final outputs of this family.
    pub fn contains(self, g: &Graph) -> bool {
        match self {
            Family::Connected => g.is_connected(),
            Family::Biconnected => g.is_biconnected(),
            Family::Simple => g.is_connected() && g.is_simple(),
            Family::Loopless | Family::LooplessAlt => g.is_connected() && g.is_loopless(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "connected" => Ok(Family::Connected),
            "biconnected" => Ok(Family::Biconnected),
            "simple" => Ok(Family::Simple),
            "loopless" => Ok(Family::Loopless),
            "loopless-alt" => Ok(Family::LooplessAlt),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

/// One generation request.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenRequest {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    /// Restrict output to graphs whose every vertex has at least this
    /// degree. Only meaningful for the loopless families.
    pub min_degree: Option<usize>,
}

impl GenRequest {
    pub fn new(family: Family, n: usize, k: usize, s: usize) -> Self {
        GenRequest {
            family,
            n,
            k,
            s,
            min_degree: None,
        }
    }

    pub fn with_min_degree(mut self, nu: usize) -> Self {
        self.min_degree = Some(nu);
        self
    }

    /// Internal edge count of every graph in the requested sum.
    pub fn edge_count(&self) -> usize {
        self.n + self.k - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Largest internal edge count a request may ask for.
    pub max_edges: usize,
    /// Largest leg count; labels run `x1..=x{max_legs}`.
    pub max_legs: usize,
    /// Evaluate the per-level summands on a thread pool. Results are
    /// bit-identical to sequential evaluation.
    pub parallel: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_edges: 9,
            max_legs: 12,
            parallel: false,
        }
    }
}

/// Memoizing generator for all five families.
pub struct Engine {
    config: EngineConfig,
    levels: HashMap<(Family, usize, usize, usize), GraphSum>,
    filtered: HashMap<(Family, usize, usize, usize, usize), GraphSum>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine::with_config(EngineConfig::default())
    }

    pub fn with_config(config: EngineConfig) -> Self {
        Engine {
            config,
            levels: HashMap::new(),
            filtered: HashMap::new(),
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    fn validate(&self, req: &GenRequest) -> Result<(), EngineError> {
        if req.n == 0 {
            return Err(EngineError::InvalidRequest(
                "vertex count must be at least 1".into(),
            ));
        }
        if req.n > MAX_VERTICES {
            return Err(EngineError::CeilingExceeded {
                what: "vertex count",
                value: req.n,
                limit: MAX_VERTICES,
            });
        }
        if req.edge_count() > self.config.max_edges {
            return Err(EngineError::CeilingExceeded {
                what: "internal edge count",
                value: req.edge_count(),
                limit: self.config.max_edges,
            });
        }
        if req.s > self.config.max_legs {
            return Err(EngineError::CeilingExceeded {
                what: "leg count",
                value: req.s,
                limit: self.config.max_legs,
            });
        }
        if let Some(nu) = req.min_degree {
            if nu == 0 {
                return Err(EngineError::InvalidRequest(
                    "min_degree must be at least 1".into(),
                ));
            }
            if !matches!(req.family, Family::Loopless | Family::LooplessAlt) {
                return Err(EngineError::InvalidRequest(format!(
                    "min_degree applies to the loopless families, not {}",
                    req.family
                )));
            }
        }
        Ok(())
    }

    /// Generates the exact collapsed sum for the request.
    pub fn generate(&mut self, req: &GenRequest) -> Result<GraphSum, EngineError> {
        self.validate(req)?;
        match req.min_degree {
            Some(nu) => self.generate_filtered(req, nu),
            None => {
                self.fill_levels(req.family, req.n, req.k, req.s)?;
                Ok(self.levels[&(req.family, req.n, req.k, req.s)].clone())
            }
        }
    }

    /// Generates with the per-step degree restriction; the result equals
    /// unfiltered generation followed by a minimum-degree filter.
    pub fn generate_min_degree(&mut self, req: &GenRequest) -> Result<GraphSum, EngineError> {
        if req.min_degree.is_none() {
            return Err(EngineError::InvalidRequest(
                "generate_min_degree needs min_degree set".into(),
            ));
        }
        self.generate(req)
    }

    fn fill_levels(
        &mut self,
        family: Family,
        n_t: usize,
        k_t: usize,
        s: usize,
    ) -> Result<(), EngineError> {
        let m_t = n_t + k_t - 1;
        for m in 0..=m_t {
            for n in 1..=(m + 1).min(n_t) {
                let k = m + 1 - n;
                if k > k_t {
                    continue;
                }
                if self.levels.contains_key(&(family, n, k, s)) {
                    continue;
                }
                let sum = self.compute_level(family, n, k, s)?;
                debug_assert!(sum.terms().all(|(_, g, _)| family.contains(g)));
                self.levels.insert((family, n, k, s), sum);
            }
        }
        Ok(())
    }

    fn level(&self, family: Family, n: usize, k: usize, s: usize) -> &GraphSum {
        self.levels
            .get(&(family, n, k, s))
            .expect("diagonal order fills dependencies first")
    }

    fn compute_level(
        &self,
        family: Family,
        n: usize,
        k: usize,
        s: usize,
    ) -> Result<GraphSum, EngineError> {
        let m = n + k - 1;
        if (n, k) == (1, 0) {
            return Ok(GraphSum::singleton(
                Graph::single_vertex(s),
                Rational::one(),
            ));
        }
        let empty = GraphSum::empty(n, m, s);
        if n == 1 {
            // One vertex, k > 0: only the connected and biconnected
            // families reach it, through chains of loops.
            return match family {
                Family::Connected | Family::Biconnected => {
                    let prev = self.level(family, 1, k - 1, s);
                    let looped = add_loop(prev, 1)?;
                    Ok(looped.scale(&Rational::new(1, 2 * k as i64).expect("k > 0")))
                }
                Family::Simple | Family::Loopless | Family::LooplessAlt => Ok(empty),
            };
        }
        if family == Family::Biconnected && k == 0 {
            // The defining relation covers k > 0 only; with no cycles and
            // more than one vertex every edge is a bridge.
            return Ok(empty);
        }

        let mut acc = empty.clone();

        let q_parts: Vec<GraphSum> = match family {
            Family::Connected => {
                let prev = self.level(family, n - 1, k, s);
                self.indexed(n - 1, |i| q_map(prev, i + 1, 1))?
            }
            Family::Biconnected => {
                let prev = self.level(family, n - 1, k, s);
                self.indexed(n - 1, |i| q_map_connected(prev, i + 1, 1))?
            }
            Family::Simple => {
                let prev = self.level(family, n - 1, k, s);
                self.indexed(n - 1, |i| q_map_disconnected(prev, i + 1, 1))?
            }
            Family::Loopless => {
                let prev = self.level(family, n - 1, k, s);
                self.indexed(n - 1, |i| q_map(prev, i + 1, 1))?
            }
            Family::LooplessAlt => {
                let inputs: Vec<&GraphSum> = (1..=k + 1)
                    .map(|rho| self.level(family, n - 1, k + 1 - rho, s))
                    .collect();
                self.indexed((k + 1) * (n - 1), |idx| {
                    let rho = idx / (n - 1) + 1;
                    let i = idx % (n - 1) + 1;
                    q_map(inputs[rho - 1], i, rho)
                })?
            }
        };
        for part in q_parts {
            acc = acc.add(&part).map_err(TransformError::from)?;
        }

        if k >= 1 {
            let growth_parts: Vec<GraphSum> = match family {
                Family::Connected | Family::Biconnected => {
                    let prev = self.level(family, n, k - 1, s);
                    let looped = self.indexed(n, |i| add_loop(prev, i + 1))?;
                    looped
                        .into_iter()
                        .map(|p| p.scale(&Rational::new(1, 2).expect("nonzero")))
                        .collect()
                }
                Family::Simple => {
                    let prev = self.level(family, n, k - 1, s);
                    let pairs: Vec<(usize, usize)> =
                        (1..=n).flat_map(|i| (1..i).map(move |j| (i, j))).collect();
                    self.indexed(pairs.len(), |idx| {
                        let (i, j) = pairs[idx];
                        add_edge_nonadjacent(prev, i, j)
                    })?
                }
                Family::Loopless => {
                    let prev = self.level(family, n, k - 1, s);
                    let pairs: Vec<(usize, usize)> =
                        (1..=n).flat_map(|i| (1..i).map(move |j| (i, j))).collect();
                    self.indexed(pairs.len(), |idx| {
                        let (i, j) = pairs[idx];
                        add_edge_adjacent(prev, i, j)
                    })?
                }
                Family::LooplessAlt => Vec::new(),
            };
            for part in growth_parts {
                acc = acc.add(&part).map_err(TransformError::from)?;
            }
        }

        Ok(acc.scale(&Rational::new(1, m as i64).expect("m >= 1")))
    }

    fn indexed<F>(&self, count: usize, f: F) -> Result<Vec<GraphSum>, EngineError>
    where
        F: Fn(usize) -> Result<GraphSum, TransformError> + Sync,
    {
        let run = |i: usize| f(i).map_err(EngineError::from);
        if self.config.parallel {
            (0..count).into_par_iter().map(run).collect()
        } else {
            (0..count).map(run).collect()
        }
    }

    fn generate_filtered(&mut self, req: &GenRequest, nu: usize) -> Result<GraphSum, EngineError> {
        let key = (req.family, req.n, req.k, req.s, nu);
        if let Some(hit) = self.filtered.get(&key) {
            return Ok(hit.clone());
        }
        // Intermediate levels are pruned relative to this particular
        // target, so they get a per-request table instead of the shared
        // memo.
        let mut scratch: HashMap<(usize, usize), GraphSum> = HashMap::new();
        let m_t = req.edge_count();
        for m in 0..=m_t {
            for n in 1..=(m + 1).min(req.n) {
                let k = m + 1 - n;
                if k > req.k {
                    continue;
                }
                let sum = self.compute_filtered_level(req, nu, &scratch, n, k)?;
                scratch.insert((n, k), sum);
            }
        }
        let result = scratch.remove(&(req.n, req.k)).expect("target level filled");
        self.filtered.insert(key, result.clone());
        Ok(result)
    }

    /// Smallest degree a vertex may have at an intermediate level and still
    /// reach degree `nu` everywhere in some completion. `splits_left` is
    /// the number of vertex additions still to come, `cycles_left` the
    /// remaining growth of the cyclomatic number.
    fn min_keep_degree(
        family: Family,
        splits_left: usize,
        cycles_left: usize,
        nu: usize,
    ) -> usize {
        let repairable = |d: usize| {
            if d >= nu {
                return true;
            }
            // An unsplit vertex can still be boosted by edge duplication,
            // one degree unit per remaining cycle.
            if family == Family::Loopless && d + cycles_left >= nu {
                return true;
            }
            // Splitting its descendants r times spreads d over r + 1 final
            // vertices while adding two ends per split plus two per unit of
            // cyclomatic growth absorbed by those splits.
            (1..=splits_left).any(|r| d + 2 * r + 2 * cycles_left >= (r + 1) * nu)
        };
        (0..=nu).find(|&d| repairable(d)).unwrap_or(nu)
    }

    fn compute_filtered_level(
        &self,
        req: &GenRequest,
        nu: usize,
        scratch: &HashMap<(usize, usize), GraphSum>,
        n: usize,
        k: usize,
    ) -> Result<GraphSum, EngineError> {
        let family = req.family;
        let threshold = Self::min_keep_degree(family, req.n - n, req.k - k, nu);
        let keep = |g: &Graph| (1..=g.n()).all(|v| g.degree(v) >= threshold);
        let m = n + k - 1;
        if (n, k) == (1, 0) {
            let base = GraphSum::singleton(Graph::single_vertex(req.s), Rational::one());
            return Ok(base.filter(keep));
        }
        if n == 1 {
            return Ok(GraphSum::empty(n, m, req.s));
        }

        let mut acc = GraphSum::empty(n, m, req.s);

        let q_parts: Vec<GraphSum> = match family {
            Family::Loopless => {
                let prev = &scratch[&(n - 1, k)];
                self.indexed(n - 1, |i| q_map_min_degree(prev, i + 1, 1, threshold))?
            }
            Family::LooplessAlt => {
                let inputs: Vec<&GraphSum> = (1..=k + 1)
                    .map(|rho| &scratch[&(n - 1, k + 1 - rho)])
                    .collect();
                self.indexed((k + 1) * (n - 1), |idx| {
                    let rho = idx / (n - 1) + 1;
                    let i = idx % (n - 1) + 1;
                    q_map_min_degree(inputs[rho - 1], i, rho, threshold)
                })?
            }
            _ => unreachable!("validated as a loopless family"),
        };
        for part in q_parts {
            acc = acc.add(&part).map_err(TransformError::from)?;
        }

        if k >= 1 && family == Family::Loopless {
            let prev = &scratch[&(n, k - 1)];
            let pairs: Vec<(usize, usize)> =
                (1..=n).flat_map(|i| (1..i).map(move |j| (i, j))).collect();
            let parts = self.indexed(pairs.len(), |idx| {
                let (i, j) = pairs[idx];
                add_edge_adjacent(prev, i, j)
            })?;
            for part in parts {
                acc = acc.add(&part).map_err(TransformError::from)?;
            }
        }

        let scaled = acc.scale(&Rational::new(1, m as i64).expect("m >= 1"));
        Ok(scaled.filter(keep))
    }
}

/// Extends a generated sum by distributing fresh labels over all vertices;
/// equal to regenerating with the larger leg set.
pub fn leg_extension(base: &GraphSum, new_labels: &[LegLabel]) -> Result<GraphSum, EngineError> {
    let targets: Vec<usize> = (1..=base.n()).collect();
    Ok(distribute_legs(base, new_labels, &targets)?)
}
