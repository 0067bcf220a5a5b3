//! Serializable view of one generated level.
//!
//! Representatives are re-canonicalized here so the emitted edge lists do
//! not depend on which labeling the engine happened to see first. Classes
//! appear in canonical-key order, which makes every rendering of the same
//! request byte-identical across runs.

use std::collections::BTreeMap;
use std::fmt::Write;

use graphgen::canonicalize;
use graphgen::engine::Family;
use graphgen::sum::GraphSum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    /// Edge instances of the canonical representative, sorted; loops as
    /// `(v, v)`, parallel edges repeated.
    pub edges: Vec<(usize, usize)>,
    /// Vertex to its sorted external leg labels.
    pub legs: BTreeMap<usize, Vec<String>>,
    /// Exact rational weight, e.g. "1/6".
    pub coefficient: String,
    pub symmetry_factor: u64,
    pub canonical_key: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub classes: Vec<ClassEntry>,
}

impl OutputRecord {
    pub fn from_sum(family: Family, sum: &GraphSum) -> Result<Self, CliError> {
        let mut classes = Vec::with_capacity(sum.class_count());
        for (key, rep, coeff) in sum.terms() {
            let (canon, _) = canonicalize(rep);
            let mut legs: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for (v, label) in canon.legs() {
                legs.entry(v).or_default().push(label.as_str().to_owned());
            }
            let symmetry_factor = u64::try_from(canon.symmetry_factor())
                .map_err(|_| CliError::SymmetryOverflow)?;
            classes.push(ClassEntry {
                edges: canon.edge_instances().collect(),
                legs,
                coefficient: coeff.to_string(),
                symmetry_factor,
                canonical_key: key.to_hex(),
            });
        }
        Ok(OutputRecord {
            family: family.as_str().to_owned(),
            n: sum.n(),
            k: sum.k(),
            s: sum.s(),
            classes,
        })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        text
    }

    /// One line per class: coefficient, group order, edges, legs, key.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for class in &self.classes {
            let edges = class
                .edges
                .iter()
                .map(|(u, v)| format!("{u}-{v}"))
                .collect::<Vec<_>>()
                .join(" ");
            let legs = class
                .legs
                .iter()
                .flat_map(|(v, labels)| labels.iter().map(move |l| format!("{v}:{l}")))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(
                out,
                "{} S={} edges=[{edges}] legs=[{legs}] key={}",
                class.coefficient, class.symmetry_factor, class.canonical_key
            )
            .expect("string writes succeed");
        }
        out
    }

    /// One DOT graph block per class, named `{prefix}{index}`. Legs render
    /// as dashed edges to bare label nodes; this output is for viewing,
    /// `to_json` is the interchange format.
    pub fn to_dot(&self, prefix: &str) -> String {
        let mut out = String::new();
        for (idx, class) in self.classes.iter().enumerate() {
            writeln!(out, "graph {prefix}{idx} {{").expect("string writes succeed");
            writeln!(out, "  label=\"{}\";", class.coefficient).expect("string writes succeed");
            for v in 1..=self.n {
                writeln!(out, "  {v};").expect("string writes succeed");
            }
            for (u, v) in &class.edges {
                writeln!(out, "  {u} -- {v};").expect("string writes succeed");
            }
            for (v, labels) in &class.legs {
                for label in labels {
                    writeln!(out, "  leg_{label} [shape=none, label=\"{label}\"];")
                        .expect("string writes succeed");
                    writeln!(out, "  {v} -- leg_{label} [style=dashed];")
                        .expect("string writes succeed");
                }
            }
            writeln!(out, "}}").expect("string writes succeed");
        }
        out
    }
}
