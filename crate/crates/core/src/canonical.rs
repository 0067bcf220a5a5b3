//! Canonical labeling by exhaustive relabeling.
//!
//! Two graphs are isomorphic exactly when a vertex relabeling carries one
//! onto the other while preserving loop counts, edge multiplicities, and
//! leg labels. [`canonicalize`] tries all `n!` relabelings and keeps the one
//! whose byte encoding is lexicographically least; that encoding is the
//! [`CanonicalKey`] shared by every member of the isomorphism class.

use std::fmt;

use crate::graph::{permute, Graph};

/// Total-order byte fingerprint of an isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Encodes the graph as seen through `inv`, where `inv[a - 1]` is the old
/// vertex renamed to `a`.
fn encode_into(n: usize, mult: &[Vec<u8>], legs_enc: &[Vec<u8>], inv: &[usize], out: &mut Vec<u8>) {
    out.clear();
    out.push(n as u8);
    for a in 0..n {
        let u = inv[a] - 1;
        for b in a..n {
            out.push(mult[u][inv[b] - 1]);
        }
    }
    for a in 0..n {
        out.extend_from_slice(&legs_enc[inv[a] - 1]);
    }
}

/// Returns the lexicographically minimal relabeling of `g` together with
/// its key. Idempotent: canonical representatives encode to their own key.
pub fn canonicalize(g: &Graph) -> (Graph, CanonicalKey) {
    let n = g.n();
    let mut mult = vec![vec![0u8; n]; n];
    for ((u, v), m) in g.edge_multiplicities() {
        let m: u8 = m.try_into().expect("edge multiplicity fits a byte");
        mult[u - 1][v - 1] = m;
        mult[v - 1][u - 1] = m;
    }
    let legs_enc: Vec<Vec<u8>> = (1..=n)
        .map(|v| {
            let labels: Vec<_> = g.leg_labels(v).collect();
            let mut enc = vec![labels.len() as u8];
            for label in labels {
                let bytes = label.as_str().as_bytes();
                enc.push(bytes.len() as u8);
                enc.extend_from_slice(bytes);
            }
            enc
        })
        .collect();

    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    let mut cand = Vec::new();
    let mut inv: Vec<usize> = (1..=n).collect();
    permute(&mut inv, 0, &mut |inv| {
        encode_into(n, &mult, &legs_enc, inv, &mut cand);
        match &best {
            Some((b, _)) if *b <= cand => {}
            _ => best = Some((cand.clone(), inv.to_vec())),
        }
    });

    let (bytes, inv) = best.expect("n >= 1 guarantees at least one relabeling");
    let mut perm = vec![0usize; n];
    for (a, &old) in inv.iter().enumerate() {
        perm[old - 1] = a + 1;
    }
    (g.relabeled(&perm), CanonicalKey(bytes))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n()
        || g.internal_edge_count() != h.internal_edge_count()
        || g.leg_count() != h.leg_count()
    {
        return false;
    }
    canonicalize(g).1 == canonicalize(h).1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LegLabel;

    #[test]
    fn relabeled_path_canonicalizes_to_same_key() {
        let a = Graph::from_parts(3, [(1, 3), (2, 3)], []).unwrap();
        let b = Graph::from_parts(3, [(1, 2), (2, 3)], []).unwrap();
        let (rep_a, key_a) = canonicalize(&a);
        let (_, key_b) = canonicalize(&b);
        assert_eq!(key_a, key_b);
        assert_eq!(rep_a.internal_edge_count(), 2);
    }

    #[test]
    fn idempotent() {
        let g = Graph::from_parts(4, [(1, 2), (2, 3), (3, 4), (1, 4)], []).unwrap();
        let (rep, key) = canonicalize(&g);
        let (rep2, key2) = canonicalize(&rep);
        assert_eq!(rep, rep2);
        assert_eq!(key, key2);
    }

    #[test]
    fn single_vertex_is_its_own_form() {
        let g = Graph::new(1).unwrap();
        let (rep, _) = canonicalize(&g);
        assert_eq!(rep, g);
    }

    #[test]
    fn four_cycles_with_different_orderings_agree() {
        let a = Graph::from_parts(4, [(1, 2), (2, 3), (3, 4), (1, 4)], []).unwrap();
        let b = Graph::from_parts(4, [(1, 3), (3, 2), (2, 4), (1, 4)], []).unwrap();
        assert!(is_isomorphic(&a, &b));
    }

    #[test]
    fn leg_placement_distinguishes() {
        let x1 = || LegLabel::new("x1");
        let x2 = || LegLabel::new("x2");
        let split = Graph::from_parts(2, [(1, 2)], [(1, x1()), (2, x2())]).unwrap();
        let both = Graph::from_parts(2, [(1, 2)], [(1, x1()), (1, x2())]).unwrap();
        assert!(!is_isomorphic(&split, &both));

        let on_v1 = Graph::from_parts(2, [(1, 2)], [(1, x1())]).unwrap();
        let on_v2 = Graph::from_parts(2, [(1, 2)], [(2, x1())]).unwrap();
        assert!(is_isomorphic(&on_v1, &on_v2));
    }

    #[test]
    fn loop_count_distinguishes() {
        let one = Graph::from_parts(1, [(1, 1)], []).unwrap();
        let two = Graph::from_parts(1, [(1, 1), (1, 1)], []).unwrap();
        assert!(!is_isomorphic(&one, &two));
    }
}
