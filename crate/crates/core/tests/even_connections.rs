use std::collections::BTreeSet;

use mfq::even_conn::{colon_oracle_verify, even_conn_edges, even_connected};
use mfq::graph::{connected_classes, enumerate_matchings, path, MatchingTable};
use mfq::{Graph, Matching, VertexSet, WhiskerGraph};

fn whiskered_corpus(max_n: usize) -> Vec<WhiskerGraph> {
    (1..=max_n)
        .flat_map(|n| connected_classes(n).unwrap())
        .map(|h| WhiskerGraph::new(h).unwrap())
        .collect()
}

fn edge_set(edges: Vec<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    edges.into_iter().collect()
}

fn adjacent_or_connected(g: &Graph, m: &Matching, x: usize, y: usize) -> bool {
    g.has_edge(x, y) || even_connected(g, m, x, y).unwrap().is_some()
}

#[test]
fn removing_a_matched_leaf_edge() {
    for w in whiskered_corpus(5) {
        let g = w.graph();
        for k in 1..=3 {
            for m in enumerate_matchings(g, k) {
                for &e in m.edges().iter().filter(|&&e| w.is_whisker_edge(e)) {
                    let pair = VertexSet::from_slice(&[e.0, e.1]);
                    let smaller = g.restrict(g.vertices().difference(pair));
                    let rest = m.without_edge(e);
                    let lhs = edge_set(even_conn_edges(g, &m));
                    let rhs: BTreeSet<_> = edge_set(even_conn_edges(&smaller, &rest))
                        .into_iter()
                        .filter(|&(a, b)| !pair.contains(a) && !pair.contains(b))
                        .collect();
                    assert_eq!(lhs, rhs, "{g:?} {m:?}");
                }
            }
        }
    }
}

#[test]
fn deleting_an_unmatched_vertex_commutes() {
    for w in whiskered_corpus(5) {
        let g = w.graph();
        for k in 1..=3 {
            for m in enumerate_matchings(g, k) {
                let full = edge_set(even_conn_edges(g, &m));
                for x in g.vertices().difference(m.support()).iter() {
                    let lhs: BTreeSet<_> = full.iter().copied().filter(|&(a, b)| a != x && b != x).collect();
                    let without = g.restrict(g.vertices().difference(VertexSet::singleton(x)));
                    let rhs: BTreeSet<_> = edge_set(even_conn_edges(&without, &m))
                        .into_iter()
                        .filter(|&(a, b)| a != x && b != x)
                        .collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn colon_ideals_are_the_even_connection_graphs() {
    for w in whiskered_corpus(4) {
        for k in 1..=3 {
            for m in enumerate_matchings(w.graph(), k) {
                assert!(colon_oracle_verify(w.graph(), &m).unwrap());
            }
        }
    }
}

/// Two vertices outside `Supp(M)` complete a `(|M|+1)`-matching exactly when
/// they are adjacent or even-connected.
#[test]
fn pairs_extending_a_matching_support() {
    for w in whiskered_corpus(4) {
        let g = w.graph();
        let table = MatchingTable::new(g);
        for q in 2..=w.n() {
            for m in enumerate_matchings(g, q - 1) {
                let f = m.support();
                let outside = g.vertices().difference(f).to_vec();
                for (i, &x) in outside.iter().enumerate() {
                    for &y in &outside[i + 1..] {
                        let grown = f.union(VertexSet::from_slice(&[x, y]));
                        assert_eq!(table.nu(grown) >= q, adjacent_or_connected(g, &m, x, y));
                    }
                }
            }
        }
    }
}

#[test]
fn sets_extending_a_matching_support() {
    for w in whiskered_corpus(4) {
        let g = w.graph();
        let table = MatchingTable::new(g);
        for q in 2..=w.n() {
            for m in enumerate_matchings(g, q - 1) {
                let f = m.support();
                let outside = g.vertices().difference(f);
                for s in outside.subsets() {
                    let pairs = s.to_vec();
                    let witnessed = pairs.iter().enumerate().any(|(i, &x)| {
                        pairs[i + 1..].iter().any(|&y| adjacent_or_connected(g, &m, x, y))
                    });
                    assert_eq!(table.nu(f.union(s)) >= q, witnessed);
                }
            }
        }
    }
}

/// When the face has vertices beyond the support of its `q − 1` edges, a
/// single outside vertex can already complete a `q`-matching, and the pair
/// criterion no longer describes non-faces.
#[test]
fn larger_faces_break_the_pair_criterion() {
    let w = WhiskerGraph::new(path(3).unwrap()).unwrap();
    let g = w.graph();
    // x1 - x2 - x3 with whiskers y1, y2, y3 (vertices 3, 4, 5); q = 2.
    let m = Matching::in_graph(g, [(0, 3)]).unwrap();
    let f = VertexSet::from_slice(&[0, 3, 2]);
    let table = MatchingTable::new(g);
    assert_eq!(table.nu(f), 1);
    let (x, y) = (5, 4);
    assert!(table.nu(f.union(VertexSet::from_slice(&[x, y]))) >= 2);
    assert!(!adjacent_or_connected(g, &m, x, y));
}

#[test]
fn even_connection_is_symmetric_and_contains_the_induced_edges() {
    for w in whiskered_corpus(4) {
        let g = w.graph();
        for k in 1..=2 {
            for m in enumerate_matchings(g, k) {
                let rest = g.vertices().difference(m.support());
                let edges = edge_set(even_conn_edges(g, &m));
                for (a, b) in g.restrict(rest).edges() {
                    assert!(edges.contains(&(a, b)));
                }
                let vs = rest.to_vec();
                for &a in &vs {
                    for &b in &vs {
                        if a == b {
                            continue;
                        }
                        if let Some(wit) = even_connected(g, &m, a, b).unwrap() {
                            assert!(wit.is_valid(g, &m));
                            assert!(wit.reversed().is_valid(g, &m));
                            assert!(even_connected(g, &m, b, a).unwrap().is_some());
                        }
                    }
                }
            }
        }
    }
}
