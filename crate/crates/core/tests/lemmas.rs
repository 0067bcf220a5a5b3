//! The closure and exclusion laws behind the family recursions, exercised
//! on randomized inputs. Each law runs on at least 500 sampled graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use graphgen::graph::{Graph, LegLabel};
use graphgen::rational::Rational;
use graphgen::sum::GraphSum;
use graphgen::transforms::{
    add_edge, add_edge_nonadjacent, add_loop, erase_edge, erase_loop, q_map, q_map_connected,
    q_map_disconnected,
};

const CASES: usize = 500;

/// Random connected multigraph: a random tree skeleton, then extra edges
/// (loops and parallels allowed), then up to two legs.
fn random_connected(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(1..=5);
    let mut g = Graph::new(n).unwrap();
    for v in 2..=n {
        g.add_internal_edge(rng.gen_range(1..v), v).unwrap();
    }
    for _ in 0..rng.gen_range(0..=2) {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        g.add_internal_edge(u, v).unwrap();
    }
    for idx in 0..rng.gen_range(0..=2usize) {
        let v = rng.gen_range(1..=n);
        g.add_leg(v, LegLabel::new(format!("x{}", idx + 1))).unwrap();
    }
    g
}

fn random_tree(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(1..=6);
    let mut g = Graph::new(n).unwrap();
    for v in 2..=n {
        g.add_internal_edge(rng.gen_range(1..v), v).unwrap();
    }
    g
}

fn random_simple_connected(rng: &mut ChaCha8Rng) -> Graph {
    let mut g = random_tree(rng);
    let n = g.n();
    for _ in 0..rng.gen_range(0..=2) {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        if u != v && g.multiplicity(u, v) == 0 {
            g.add_internal_edge(u, v).unwrap();
        }
    }
    g
}

/// A cycle with chords, parallels, and loops sprinkled on: adding edges
/// never creates a bridge, so the result stays biconnected.
fn random_biconnected(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(1..=5);
    let mut g = Graph::new(n).unwrap();
    match n {
        1 => g.add_internal_edge(1, 1).unwrap(),
        2 => {
            g.add_internal_edge(1, 2).unwrap();
            g.add_internal_edge(1, 2).unwrap();
        }
        _ => {
            for v in 1..n {
                g.add_internal_edge(v, v + 1).unwrap();
            }
            g.add_internal_edge(1, n).unwrap();
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        g.add_internal_edge(u, v).unwrap();
    }
    g
}

/// Connected but never biconnected: a tree on at least two vertices keeps
/// its bridges when only loops are added.
fn random_bridged(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(2..=5);
    let mut g = Graph::new(n).unwrap();
    for v in 2..=n {
        g.add_internal_edge(rng.gen_range(1..v), v).unwrap();
    }
    for _ in 0..rng.gen_range(0..=2) {
        let v = rng.gen_range(1..=n);
        g.add_internal_edge(v, v).unwrap();
    }
    g
}

fn singleton(g: Graph) -> GraphSum {
    GraphSum::singleton(g, Rational::one())
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_cafe)
}

#[test]
fn connected_stays_connected() {
    let mut rng = rng();
    for _ in 0..CASES {
        let g = random_connected(&mut rng);
        let n = g.n();
        let i = rng.gen_range(1..=n);
        let sum = singleton(g);

        for (_, h, _) in add_loop(&sum, i).unwrap().terms() {
            assert!(h.is_connected(), "loop at {i} broke {h:?}");
        }
        for (_, h, _) in q_map(&sum, i, 1).unwrap().terms() {
            assert!(h.is_connected(), "split at {i} broke {h:?}");
        }
        if n >= 2 {
            let j = loop {
                let j = rng.gen_range(1..=n);
                if j != i {
                    break j;
                }
            };
            for (_, h, _) in add_edge(&sum, i, j).unwrap().terms() {
                assert!(h.is_connected(), "edge {i}-{j} broke {h:?}");
            }
        }
    }
}

#[test]
fn simple_maps_stay_simple() {
    let mut rng = rng();
    for _ in 0..CASES {
        let g = random_simple_connected(&mut rng);
        let n = g.n();
        let i = rng.gen_range(1..=n);
        let sum = singleton(g);

        for (_, h, _) in q_map(&sum, i, 1).unwrap().terms() {
            assert!(h.is_simple() && h.is_connected(), "split produced {h:?}");
        }
        if n >= 2 {
            let j = loop {
                let j = rng.gen_range(1..=n);
                if j != i {
                    break j;
                }
            };
            for (_, h, _) in add_edge_nonadjacent(&sum, i, j).unwrap().terms() {
                assert!(h.is_simple() && h.is_connected(), "edge produced {h:?}");
            }
        }
    }
}

#[test]
fn non_simple_inputs_never_yield_simple_outputs() {
    let mut rng = rng();
    let mut seen = 0;
    while seen < CASES {
        let mut g = random_connected(&mut rng);
        if g.is_simple() {
            let v = rng.gen_range(1..=g.n());
            if rng.gen_bool(0.5) || g.n() == 1 {
                g.add_internal_edge(v, v).unwrap();
            } else {
                let (u, w) = g.edge_instances().next().unwrap();
                g.add_internal_edge(u, w).unwrap();
            }
        }
        assert!(!g.is_simple());
        seen += 1;
        let n = g.n();
        let i = rng.gen_range(1..=n);
        let sum = singleton(g);

        for (_, h, _) in q_map_disconnected(&sum, i, 1).unwrap().terms() {
            assert!(!h.is_simple(), "disconnected split cleaned up {h:?}");
        }
        if n >= 2 {
            let j = loop {
                let j = rng.gen_range(1..=n);
                if j != i {
                    break j;
                }
            };
            for (_, h, _) in add_edge_nonadjacent(&sum, i, j).unwrap().terms() {
                assert!(!h.is_simple(), "edge addition cleaned up {h:?}");
            }
        }
    }
}

#[test]
fn disconnected_splits_take_trees_to_trees() {
    let mut rng = rng();
    for _ in 0..CASES {
        let g = random_tree(&mut rng);
        let i = rng.gen_range(1..=g.n());
        let sum = singleton(g);
        for (_, h, _) in q_map_disconnected(&sum, i, 1).unwrap().terms() {
            assert!(h.is_connected(), "tree split produced {h:?}");
            assert_eq!(h.cyclomatic_number(), 0, "tree split produced {h:?}");
        }
    }
}

#[test]
fn non_biconnected_inputs_never_yield_biconnected_outputs() {
    let mut rng = rng();
    for _ in 0..CASES {
        let g = random_bridged(&mut rng);
        assert!(g.is_connected() && !g.is_biconnected());
        let n = g.n();
        let i = rng.gen_range(1..=n);
        let sum = singleton(g);

        for (_, h, _) in add_loop(&sum, i).unwrap().terms() {
            assert!(!h.is_biconnected(), "loop healed a bridge in {h:?}");
        }
        for (_, h, _) in q_map(&sum, i, 1).unwrap().terms() {
            assert!(!h.is_biconnected(), "split healed a bridge in {h:?}");
        }
    }
}

#[test]
fn biconnected_maps_stay_biconnected() {
    let mut rng = rng();
    for _ in 0..CASES {
        let g = random_biconnected(&mut rng);
        assert!(g.is_biconnected());
        let n = g.n();
        let i = rng.gen_range(1..=n);
        let sum = singleton(g);

        for (_, h, _) in add_loop(&sum, i).unwrap().terms() {
            assert!(h.is_biconnected(), "loop broke {h:?}");
        }
        for (_, h, _) in q_map_connected(&sum, i, 1).unwrap().terms() {
            assert!(h.is_biconnected(), "connected split broke {h:?}");
        }
    }
}

#[test]
fn add_then_erase_is_the_identity() {
    let mut rng = rng();
    for _ in 0..CASES {
        let g = random_connected(&mut rng);
        let n = g.n();
        let i = rng.gen_range(1..=n);
        let sum = singleton(g);

        assert_eq!(erase_loop(&add_loop(&sum, i).unwrap(), i).unwrap(), sum);
        if n >= 2 {
            let j = loop {
                let j = rng.gen_range(1..=n);
                if j != i {
                    break j;
                }
            };
            assert_eq!(erase_edge(&add_edge(&sum, i, j).unwrap(), i, j).unwrap(), sum);
        }
    }
}
