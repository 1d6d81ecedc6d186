//! Brute-force semi-transitivity straight from the definition.
//!
//! A digraph is semi-transitive iff it is acyclic and, for every directed
//! path `u_1 -> ... -> u_t` together with an edge `u_1 -> u_t`, every
//! chord `u_i -> u_j` (`i < j`) is present. For each edge `(u, v)` the
//! oracle enumerates every path `u ~> v` with at least one interior vertex,
//! restricted to vertices reachable from `u` that also reach `v`.

use thiserror::Error;

use crate::graph::Digraph;
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_paths: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_vertices: 24, max_paths: 10_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {vertices} vertices, above the oracle bound of {limit}")]
    TooManyVertices { vertices: usize, limit: usize },
    #[error("path enumeration exceeded the bound of {limit} paths")]
    TooManyPaths { limit: u64 },
}

/// Some directed cycle of `g`, found by depth-first search from the
/// smallest vertex, visiting successors in increasing order.
pub fn find_cycle(g: &Digraph) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = g.vertex_count();
    let succ: Vec<Vec<usize>> = (0..=n).map(|u| if u == 0 { Vec::new() } else { g.successors(u).collect() }).collect();
    let mut mark = vec![Mark::New; n + 1];
    for root in 1..=n {
        if mark[root] != Mark::New {
            continue;
        }
        // (vertex, index of next successor to try)
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        mark[root] = Mark::Active;
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if let Some(&w) = succ[u].get(*next) {
                *next += 1;
                match mark[w] {
                    Mark::New => {
                        mark[w] = Mark::Active;
                        stack.push((w, 0));
                    }
                    Mark::Active => {
                        let start = stack.iter().position(|&(x, _)| x == w).expect("active vertex is on the stack");
                        return Some(stack[start..].iter().map(|&(x, _)| x).collect());
                    }
                    Mark::Done => {}
                }
            } else {
                mark[u] = Mark::Done;
                stack.pop();
            }
        }
    }
    None
}

pub fn is_acyclic(g: &Digraph) -> bool {
    find_cycle(g).is_none()
}

fn reach(g: &Digraph, from: usize, forward: bool) -> Vec<bool> {
    let n = g.vertex_count();
    let mut seen = vec![false; n + 1];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        let next: Vec<usize> = if forward { g.successors(u).collect() } else { g.predecessors(u).collect() };
        for w in next {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

fn missing_chord(g: &Digraph, path: &[usize]) -> Option<(usize, usize)> {
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            if !g.has_edge(path[i], path[j]) {
                return Some((path[i], path[j]));
            }
        }
    }
    None
}

struct PathSearch<'a> {
    g: &'a Digraph,
    allowed: Vec<bool>,
    target: usize,
    path: Vec<usize>,
    paths: u64,
    limit: u64,
}

impl PathSearch<'_> {
    fn run(&mut self) -> Result<Option<Witness>, OracleError> {
        let u = *self.path.last().expect("path starts at the edge tail");
        for w in self.g.successors(u).collect::<Vec<_>>() {
            if w == self.target {
                if self.path.len() < 2 {
                    // the edge itself
                    continue;
                }
                self.paths += 1;
                if self.paths > self.limit {
                    return Err(OracleError::TooManyPaths { limit: self.limit });
                }
                self.path.push(w);
                let missing = missing_chord(self.g, &self.path);
                if let Some(missing) = missing {
                    return Ok(Some(Witness::Shortcut { path: self.path.clone(), missing }));
                }
                self.path.pop();
            } else if self.allowed[w] {
                self.path.push(w);
                let found = self.run()?;
                self.path.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }
}

pub fn semi_transitive_oracle(g: &Digraph) -> Result<Verdict, OracleError> {
    semi_transitive_oracle_with(g, OracleLimits::default())
}

pub fn semi_transitive_oracle_with(g: &Digraph, limits: OracleLimits) -> Result<Verdict, OracleError> {
    if g.vertex_count() > limits.max_vertices {
        return Err(OracleError::TooManyVertices { vertices: g.vertex_count(), limit: limits.max_vertices });
    }
    if let Some(vertices) = find_cycle(g) {
        return Ok(Verdict::NotSemiTransitive(Witness::Cycle { vertices }));
    }
    let mut paths = 0;
    for &(u, v) in g.edges() {
        let from_u = reach(g, u, true);
        let to_v = reach(g, v, false);
        let allowed = from_u.iter().zip(&to_v).map(|(&a, &b)| a && b).collect();
        let mut search = PathSearch { g, allowed, target: v, path: vec![u], paths, limit: limits.max_paths };
        let found = search.run()?;
        paths = search.paths;
        if let Some(w) = found {
            return Ok(Verdict::NotSemiTransitive(w));
        }
    }
    Ok(Verdict::SemiTransitive)
}

/// Re-checks a witness against the edge set of `g`.
pub fn witness_holds(g: &Digraph, w: &Witness) -> bool {
    match w {
        Witness::Cycle { vertices } => {
            !vertices.is_empty()
                && vertices.windows(2).all(|p| g.has_edge(p[0], p[1]))
                && g.has_edge(*vertices.last().unwrap(), vertices[0])
        }
        Witness::Shortcut { path, missing } => {
            let pos = |x: usize| path.iter().position(|&p| p == x);
            path.len() >= 3
                && path.windows(2).all(|p| g.has_edge(p[0], p[1]))
                && g.has_edge(path[0], *path.last().unwrap())
                && !g.has_edge(missing.0, missing.1)
                && matches!((pos(missing.0), pos(missing.1)), (Some(i), Some(j)) if i < j)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::split_graph;
    use crate::matrix::TritMatrix;
    use proptest::prelude::*;

    fn transitive(n: usize) -> Digraph {
        Digraph::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn example_graph_cycle() {
        let g = Digraph::new(6, [(1, 2), (2, 4), (1, 6), (5, 6), (3, 1), (5, 1), (4, 3), (6, 4)]).unwrap();
        assert!(!is_acyclic(&g));
        assert_eq!(find_cycle(&g), Some(vec![1, 2, 4, 3]));
        let v = semi_transitive_oracle(&g).unwrap();
        assert_eq!(v, Verdict::NotSemiTransitive(Witness::Cycle { vertices: vec![1, 2, 4, 3] }));
    }

    #[test]
    fn trivially_acyclic() {
        assert!(is_acyclic(&transitive(4)));
        assert!(is_acyclic(&Digraph::new(1, []).unwrap()));
        assert!(semi_transitive_oracle(&transitive(6)).unwrap().is_semi_transitive());
    }

    #[test]
    fn shortcut_found() {
        let g = split_graph(&TritMatrix::from_values(&[[0i64, 1, 0, 1], [-1, 0, -1, -1], [0, 0, 0, 1]]).unwrap());
        let v = semi_transitive_oracle(&g).unwrap();
        let w = v.witness().expect("not semi-transitive");
        assert!(matches!(w, Witness::Shortcut { .. }));
        assert!(witness_holds(&g, w));
    }

    #[test]
    fn zero_matrix_graphs() {
        for (r, c) in [(1, 1), (2, 3), (4, 4)] {
            let g = split_graph(&TritMatrix::zeros(r, c).unwrap());
            assert!(semi_transitive_oracle(&g).unwrap().is_semi_transitive());
        }
    }

    #[test]
    fn text_counterexample_is_semi_transitive() {
        let g = split_graph(&TritMatrix::from_values(&[[1i64, 0, -1, -1], [1, 1, -1, -1], [0, 0, 1, 0]]).unwrap());
        assert!(semi_transitive_oracle(&g).unwrap().is_semi_transitive());
    }

    #[test]
    fn limits() {
        let g = transitive(25);
        assert_eq!(
            semi_transitive_oracle(&g),
            Err(OracleError::TooManyVertices { vertices: 25, limit: 24 })
        );
        let g = transitive(12);
        let tight = OracleLimits { max_vertices: 24, max_paths: 100 };
        assert_eq!(semi_transitive_oracle_with(&g, tight), Err(OracleError::TooManyPaths { limit: 100 }));
    }

    fn random_graph(n: usize) -> impl Strategy<Value = Digraph> {
        prop::collection::vec(0u8..4, n * (n - 1) / 2).prop_map(move |codes| {
            let mut edges = Vec::new();
            let mut it = codes.into_iter();
            for i in 1..=n {
                for j in i + 1..=n {
                    match it.next().unwrap() {
                        1 => edges.push((i, j)),
                        2 => edges.push((j, i)),
                        _ => {}
                    }
                }
            }
            Digraph::new(n, edges).unwrap()
        })
    }

    fn acyclic_graph(n: usize) -> impl Strategy<Value = Digraph> {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for i in 1..=n {
                for j in i + 1..=n {
                    if it.next().unwrap() {
                        edges.push((i, j));
                    }
                }
            }
            Digraph::new(n, edges).unwrap()
        })
    }

    proptest! {
        #[test]
        fn relabeling_invariance(g in random_graph(6), perm in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle()) {
            let a = semi_transitive_oracle(&g).unwrap().is_semi_transitive();
            let b = semi_transitive_oracle(&g.relabel(&perm).unwrap()).unwrap().is_semi_transitive();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn hereditary(g in acyclic_graph(8), keep in prop::collection::vec(any::<bool>(), 8)) {
            let vertices: Vec<usize> = (1..=8).filter(|&v| keep[v - 1]).collect();
            prop_assume!(!vertices.is_empty());
            if semi_transitive_oracle(&g).unwrap().is_semi_transitive() {
                let sub = g.induced(&vertices).unwrap();
                prop_assert!(semi_transitive_oracle(&sub).unwrap().is_semi_transitive());
            }
        }

        #[test]
        fn witnesses_revalidate(g in random_graph(7)) {
            if let Verdict::NotSemiTransitive(w) = semi_transitive_oracle(&g).unwrap() {
                prop_assert!(witness_holds(&g, &w));
            }
        }

        #[test]
        fn transitive_subsets_are_semi_transitive(keep in prop::collection::vec(any::<bool>(), 9)) {
            let vertices: Vec<usize> = (1..=9).filter(|&v| keep[v - 1]).collect();
            prop_assume!(!vertices.is_empty());
            let g = transitive(9).induced(&vertices).unwrap();
            prop_assert!(semi_transitive_oracle(&g).unwrap().is_semi_transitive());
        }
    }
}
