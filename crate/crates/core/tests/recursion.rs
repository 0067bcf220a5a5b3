//! End-to-end checks of the five family recursions.
//!
//! The heaviest check here re-runs each recursion with no intermediate
//! collapsing at all, using an evaluator written from scratch on plain
//! graph lists, and compares the collapsed end results. That exercises
//! both the per-level collapse and the split enumeration against an
//! independent implementation.

use std::collections::HashMap;

use graphgen::engine::{leg_extension, Engine, EngineConfig, Family, GenRequest};
use graphgen::graph::{Graph, LegLabel};
use graphgen::oracle::{labeled_count, LabeledFamily};
use graphgen::rational::Rational;
use graphgen::sum::GraphSum;
use graphgen::transforms::{add_edge_adjacent, add_edge_nonadjacent, add_loop, q_map};

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den).unwrap()
}

// ---------------------------------------------------------------------
// An uncollapsed evaluator, independent of the transforms module.

type Raw = Vec<(Graph, Rational)>;

/// All ordered ways to divide the edge ends and legs at vertex `i`
/// between `i` and a fresh vertex `n + 1`.
fn raw_splits(g: &Graph, i: usize) -> Vec<Graph> {
    let n = g.n();
    #[derive(Clone)]
    enum End {
        HalfLoop,
        Edge(usize),
        Leg(LegLabel),
    }
    let mut ends = Vec::new();
    for _ in 0..g.loops_at(i) {
        ends.push(End::HalfLoop);
        ends.push(End::HalfLoop);
    }
    for ((u, v), mult) in g.edge_multiplicities() {
        let other = if u == i && v != i {
            v
        } else if v == i && u != i {
            u
        } else {
            continue;
        };
        for _ in 0..mult {
            ends.push(End::Edge(other));
        }
    }
    for label in g.leg_labels(i) {
        ends.push(End::Leg(label.clone()));
    }

    let mut out = Vec::new();
    for mask in 0u64..1 << ends.len() {
        let side = |idx: usize| if mask >> idx & 1 == 1 { n + 1 } else { i };
        let mut h = Graph::new(n + 1).unwrap();
        for ((u, v), mult) in g.edge_multiplicities() {
            if u == i || v == i {
                continue;
            }
            for _ in 0..mult {
                h.add_internal_edge(u, v).unwrap();
            }
        }
        for (v, label) in g.legs() {
            if v != i {
                h.add_leg(v, label.clone()).unwrap();
            }
        }
        let mut idx = 0;
        while idx < ends.len() {
            match &ends[idx] {
                End::HalfLoop => {
                    h.add_internal_edge(side(idx), side(idx + 1)).unwrap();
                    idx += 2;
                }
                End::Edge(other) => {
                    h.add_internal_edge(side(idx), *other).unwrap();
                    idx += 1;
                }
                End::Leg(label) => {
                    h.add_leg(side(idx), label.clone()).unwrap();
                    idx += 1;
                }
            }
        }
        out.push(h);
    }
    out
}

#[derive(Clone, Copy, PartialEq)]
enum SplitKind {
    Any,
    Connected,
    Disconnected,
}

fn raw_q(g: &Graph, c: &Rational, i: usize, rho: usize, kind: SplitKind) -> Raw {
    let mut denom = 2i64;
    for f in 1..rho as i64 {
        denom *= f;
    }
    let scale = rat(1, denom);
    let new_v = g.n() + 1;
    raw_splits(g, i)
        .into_iter()
        .filter(|h| match kind {
            SplitKind::Any => true,
            SplitKind::Connected => h.is_connected(),
            SplitKind::Disconnected => !h.is_connected(),
        })
        .map(|mut h| {
            for _ in 0..rho {
                h.add_internal_edge(i, new_v).unwrap();
            }
            (h, c * &scale)
        })
        .collect()
}

fn naive_level(
    family: Family,
    n: usize,
    k: usize,
    s: usize,
    memo: &mut HashMap<(usize, usize), Raw>,
) -> Raw {
    if let Some(hit) = memo.get(&(n, k)) {
        return hit.clone();
    }
    let result: Raw = if (n, k) == (1, 0) {
        vec![(Graph::single_vertex(s), Rational::one())]
    } else if n == 1 {
        match family {
            Family::Connected | Family::Biconnected => {
                let prev = naive_level(family, 1, k - 1, s, memo);
                let mut out = Raw::new();
                for (g, c) in &prev {
                    let mut h = g.clone();
                    h.add_internal_edge(1, 1).unwrap();
                    out.push((h, &(c * &rat(1, 2)) * &rat(1, k as i64)));
                }
                out
            }
            _ => Raw::new(),
        }
    } else if family == Family::Biconnected && k == 0 {
        Raw::new()
    } else {
        let m = n + k - 1;
        let pre = rat(1, m as i64);
        let mut out = Raw::new();

        match family {
            Family::LooplessAlt => {
                for rho in 1..=k + 1 {
                    let prev = naive_level(family, n - 1, k + 1 - rho, s, memo);
                    for i in 1..n {
                        for (g, c) in &prev {
                            out.extend(raw_q(g, c, i, rho, SplitKind::Any));
                        }
                    }
                }
            }
            _ => {
                let kind = match family {
                    Family::Biconnected => SplitKind::Connected,
                    Family::Simple => SplitKind::Disconnected,
                    _ => SplitKind::Any,
                };
                let prev = naive_level(family, n - 1, k, s, memo);
                for i in 1..n {
                    for (g, c) in &prev {
                        out.extend(raw_q(g, c, i, 1, kind));
                    }
                }
            }
        }

        if k >= 1 {
            let prev = naive_level(family, n, k - 1, s, memo);
            match family {
                Family::Connected | Family::Biconnected => {
                    for i in 1..=n {
                        for (g, c) in &prev {
                            let mut h = g.clone();
                            h.add_internal_edge(i, i).unwrap();
                            out.push((h, c * &rat(1, 2)));
                        }
                    }
                }
                Family::Simple | Family::Loopless => {
                    for i in 1..=n {
                        for j in 1..i {
                            for (g, c) in &prev {
                                let adjacent = g.multiplicity(i, j) > 0;
                                let wanted = family == Family::Loopless;
                                if adjacent != wanted {
                                    continue;
                                }
                                let mut h = g.clone();
                                h.add_internal_edge(i, j).unwrap();
                                out.push((h, c.clone()));
                            }
                        }
                    }
                }
                Family::LooplessAlt => {}
            }
        }

        out.into_iter().map(|(g, c)| (g, &c * &pre)).collect()
    };
    memo.insert((n, k), result.clone());
    result
}

fn collapse(n: usize, k: usize, s: usize, raw: Raw) -> GraphSum {
    GraphSum::collapse_from(n, n + k - 1, s, raw).unwrap()
}

#[test]
fn collapsing_between_levels_changes_nothing() {
    let mut engine = Engine::new();
    for family in Family::ALL {
        for s in 0..=1usize {
            let max_m = if s == 0 { 4 } else { 3 };
            for n in 1..=max_m + 1 {
                for k in 0..=max_m + 1 - n {
                    if n + k - 1 > max_m {
                        continue;
                    }
                    let mut memo = HashMap::new();
                    let raw = naive_level(family, n, k, s, &mut memo);
                    let uncollapsed = collapse(n, k, s, raw);
                    let collapsed = engine
                        .generate(&GenRequest::new(family, n, k, s))
                        .unwrap();
                    assert_eq!(
                        uncollapsed, collapsed,
                        "{family} n={n} k={k} s={s} diverged"
                    );
                }
            }
        }
    }
}

// ---------------------------------------------------------------------

#[test]
fn prefactor_bookkeeping_identity() {
    let mut engine = Engine::new();
    let cases = [
        (Family::Connected, 3, 1, 0),
        (Family::Biconnected, 3, 1, 0),
        (Family::Simple, 4, 1, 0),
        (Family::Loopless, 3, 2, 0),
    ];
    for (family, n, k, s) in cases {
        let m = n + k - 1;
        let level = engine.generate(&GenRequest::new(family, n, k, s)).unwrap();

        let mut summand_mass = Rational::zero();
        let prev_n = engine
            .generate(&GenRequest::new(family, n - 1, k, s))
            .unwrap();
        for i in 1..n {
            let part = match family {
                Family::Biconnected => {
                    graphgen::transforms::q_map_connected(&prev_n, i, 1).unwrap()
                }
                Family::Simple => {
                    graphgen::transforms::q_map_disconnected(&prev_n, i, 1).unwrap()
                }
                _ => q_map(&prev_n, i, 1).unwrap(),
            };
            summand_mass += &part.total_mass();
        }
        let prev_k = engine
            .generate(&GenRequest::new(family, n, k - 1, s))
            .unwrap();
        match family {
            Family::Connected | Family::Biconnected => {
                for i in 1..=n {
                    let part = add_loop(&prev_k, i).unwrap();
                    summand_mass += &(&part.total_mass() * &rat(1, 2));
                }
            }
            Family::Simple => {
                for i in 1..=n {
                    for j in 1..i {
                        let part = add_edge_nonadjacent(&prev_k, i, j).unwrap();
                        summand_mass += &part.total_mass();
                    }
                }
            }
            Family::Loopless => {
                for i in 1..=n {
                    for j in 1..i {
                        let part = add_edge_adjacent(&prev_k, i, j).unwrap();
                        summand_mass += &part.total_mass();
                    }
                }
            }
            Family::LooplessAlt => {}
        }

        let scaled = &level.total_mass() * &Rational::from_integer(m as i64);
        assert_eq!(scaled, summand_mass, "{family} n={n} k={k}");
    }
}

#[test]
fn loop_chains_carry_inverse_factorial_powers() {
    let mut engine = Engine::new();
    for family in [Family::Connected, Family::Biconnected] {
        let mut denom = 1i64;
        for k in 1..=5usize {
            denom *= 2 * k as i64;
            let sum = engine
                .generate(&GenRequest::new(family, 1, k, 0))
                .unwrap();
            assert_eq!(sum.class_count(), 1, "{family} k={k}");
            let (_, _, c) = sum.terms().next().unwrap();
            assert_eq!(*c, rat(1, denom), "{family} k={k}");
        }
    }
}

#[test]
fn loopless_recursions_agree_termwise() {
    let mut engine = Engine::new();
    for s in 0..=1usize {
        for n in 1..=5usize {
            for k in 0..=4usize {
                if n + k - 1 > 4 {
                    continue;
                }
                let a = engine
                    .generate(&GenRequest::new(Family::Loopless, n, k, s))
                    .unwrap();
                let b = engine
                    .generate(&GenRequest::new(Family::LooplessAlt, n, k, s))
                    .unwrap();
                assert_eq!(a, b, "n={n} k={k} s={s}");
            }
        }
    }
}

#[test]
fn simple_and_connected_trees_coincide() {
    let mut engine = Engine::new();
    for n in 1..=6usize {
        let conn = engine
            .generate(&GenRequest::new(Family::Connected, n, 0, 0))
            .unwrap();
        let simp = engine
            .generate(&GenRequest::new(Family::Simple, n, 0, 0))
            .unwrap();
        assert_eq!(conn, simp, "n={n}");
    }
}

#[test]
fn orbit_mass_counts_labeled_trees() {
    let mut engine = Engine::new();
    for n in 1..=6usize {
        let sum = engine
            .generate(&GenRequest::new(Family::Connected, n, 0, 0))
            .unwrap();
        let mut factorial = Rational::one();
        for i in 2..=n as i64 {
            factorial = &factorial * &Rational::from_integer(i);
        }
        let labeled = &sum.total_mass() * &factorial;
        let expected = labeled_count(n, n - 1, LabeledFamily::Trees).unwrap();
        assert_eq!(labeled, Rational::from_integer(expected as i64), "n={n}");
    }
}

#[test]
fn desk_trace_matches_spelled_out_coefficients() {
    let mut engine = Engine::new();
    let sum = engine
        .generate(&GenRequest::new(Family::Connected, 2, 1, 0))
        .unwrap();
    let loop_on_edge = Graph::from_parts(2, [(1, 2), (1, 1)], []).unwrap();
    let double_edge = Graph::from_parts(2, [(1, 2), (1, 2)], []).unwrap();
    assert_eq!(sum.coefficient_of_graph(&loop_on_edge), Some(&rat(1, 2)));
    assert_eq!(sum.coefficient_of_graph(&double_edge), Some(&rat(1, 4)));
    assert_eq!(sum.total_mass(), rat(3, 4));
}

#[test]
fn fresh_engines_agree_with_each_other() {
    let req = GenRequest::new(Family::Loopless, 4, 2, 1);
    let mut first = Engine::new();
    let mut second = Engine::new();
    let a = first.generate(&req).unwrap();
    let b = second.generate(&req).unwrap();
    assert_eq!(a, b);
    assert_eq!(format!("{a:?}"), format!("{b:?}"));

    let mut parallel = Engine::with_config(EngineConfig {
        parallel: true,
        ..EngineConfig::default()
    });
    let c = parallel.generate(&req).unwrap();
    assert_eq!(a, c);
    assert_eq!(format!("{a:?}"), format!("{c:?}"));
}

#[test]
fn leg_extension_agrees_with_direct_generation() {
    let mut engine = Engine::new();
    for family in [Family::Connected, Family::Loopless] {
        for (n, k) in [(2, 1), (3, 1)] {
            let base = engine.generate(&GenRequest::new(family, n, k, 0)).unwrap();
            let direct = engine.generate(&GenRequest::new(family, n, k, 2)).unwrap();
            let extended = leg_extension(&base, &LegLabel::standard(2)).unwrap();
            assert_eq!(extended, direct, "{family} n={n} k={k}");
        }
    }
}
