//! Formal rational-weighted sums of graphs.
//!
//! A [`GraphSum`] is a finite linear combination of isomorphism classes:
//! canonical key to (representative, coefficient). The representative is
//! the first graph accumulated into its class, with its vertex numbering
//! intact, so a chain of positional operations on a sum built from one
//! graph keeps meaning what the caller constructed. Two sums are equal
//! when they assign the same coefficients to the same classes, whatever
//! representatives they happen to hold.
//!
//! All terms share the same vertex count `n`, internal edge count `m`, and
//! leg count `s`; the cyclomatic number follows as `k = m - n + 1` once
//! every term is connected. Zero coefficients are never stored.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::canonical::{canonicalize, CanonicalKey};
use crate::graph::Graph;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumError {
    #[error("sum shapes differ: (n={0}, m={1}, s={2}) vs (n={3}, m={4}, s={5})", .left.0, .left.1, .left.2, .right.0, .right.1, .right.2)]
    ShapeMismatch {
        left: (usize, usize, usize),
        right: (usize, usize, usize),
    },
    #[error("term has shape (n={0}, m={1}, s={2}), expected (n={3}, m={4}, s={5})", .found.0, .found.1, .found.2, .expected.0, .expected.1, .expected.2)]
    TermShapeMismatch {
        found: (usize, usize, usize),
        expected: (usize, usize, usize),
    },
}

/// A collapsed formal sum over one shape class `(n, m, s)`.
#[derive(Debug, Clone)]
pub struct GraphSum {
    n: usize,
    m: usize,
    s: usize,
    terms: BTreeMap<CanonicalKey, (Graph, Rational)>,
}

impl PartialEq for GraphSum {
    fn eq(&self, other: &Self) -> bool {
        (self.n, self.m, self.s) == (other.n, other.m, other.s)
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ka, (_, ca)), (kb, (_, cb)))| ka == kb && ca == cb)
    }
}

impl Eq for GraphSum {}

impl GraphSum {
    /// The empty sum of the given shape.
    pub fn empty(n: usize, m: usize, s: usize) -> Self {
        GraphSum {
            n,
            m,
            s,
            terms: BTreeMap::new(),
        }
    }

    /// A sum holding a single graph with the given coefficient.
    pub fn singleton(g: Graph, coeff: Rational) -> Self {
        let mut sum = GraphSum::empty(g.n(), g.internal_edge_count(), g.leg_count());
        sum.accumulate(g, coeff).expect("shape taken from the graph");
        sum
    }

    /// Collapses an iterator of raw `(graph, coefficient)` pairs into a sum
    /// of the given shape.
    pub fn collapse_from(
        n: usize,
        m: usize,
        s: usize,
        raw: impl IntoIterator<Item = (Graph, Rational)>,
    ) -> Result<Self, SumError> {
        let mut sum = GraphSum::empty(n, m, s);
        for (g, c) in raw {
            sum.accumulate(g, c)?;
        }
        Ok(sum)
    }

    /// Adds `coeff * g`, canonicalizing and merging; drops the class if its
    /// coefficient becomes zero.
    pub fn accumulate(&mut self, g: Graph, coeff: Rational) -> Result<(), SumError> {
        let found = (g.n(), g.internal_edge_count(), g.leg_count());
        let expected = (self.n, self.m, self.s);
        if found != expected {
            return Err(SumError::TermShapeMismatch { found, expected });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let (_, key) = canonicalize(&g);
        match self.terms.get_mut(&key) {
            Some((_, c)) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, (g, coeff));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Cyclomatic number shared by all terms, assuming they are connected.
    pub fn k(&self) -> usize {
        (self.m + 1).saturating_sub(self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates classes in canonical-key order.
    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalKey, &Graph, &Rational)> {
        self.terms.iter().map(|(k, (g, c))| (k, g, c))
    }

    pub fn coefficient_of(&self, key: &CanonicalKey) -> Option<&Rational> {
        self.terms.get(key).map(|(_, c)| c)
    }

    /// Looks up the coefficient of the class containing `g`.
    pub fn coefficient_of_graph(&self, g: &Graph) -> Option<&Rational> {
        self.coefficient_of(&canonicalize(g).1)
    }

    /// Sum of all class coefficients.
    pub fn total_mass(&self) -> Rational {
        let mut total = Rational::zero();
        for (_, (_, c)) in &self.terms {
            total += c;
        }
        total
    }

    /// Termwise addition; shapes must match.
    pub fn add(&self, other: &GraphSum) -> Result<GraphSum, SumError> {
        if (self.n, self.m, self.s) != (other.n, other.m, other.s) {
            return Err(SumError::ShapeMismatch {
                left: (self.n, self.m, self.s),
                right: (other.n, other.m, other.s),
            });
        }
        let mut out = self.clone();
        for (key, (g, c)) in &other.terms {
            match out.terms.get_mut(key) {
                Some((_, acc)) => {
                    *acc += c;
                    if acc.is_zero() {
                        out.terms.remove(key);
                    }
                }
                None => {
                    out.terms.insert(key.clone(), (g.clone(), c.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Scales every coefficient; scaling by zero empties the sum.
    pub fn scale(&self, factor: &Rational) -> GraphSum {
        if factor.is_zero() {
            return GraphSum::empty(self.n, self.m, self.s);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, (g, c))| (k.clone(), (g.clone(), c * factor)))
            .collect();
        GraphSum {
            n: self.n,
            m: self.m,
            s: self.s,
            terms,
        }
    }

    /// Drops classes failing the predicate.
    pub fn filter(&self, mut keep: impl FnMut(&Graph) -> bool) -> GraphSum {
        let terms = self
            .terms
            .iter()
            .filter(|(_, (g, _))| keep(g))
            .map(|(k, t)| (k.clone(), t.clone()))
            .collect();
        GraphSum {
            n: self.n,
            m: self.m,
            s: self.s,
            terms,
        }
    }
}
