//! Directed graphs, lower-triangular trit encodings and the split-graph
//! matrix `S_o(M)`.
//!
//! Vertices are `1..=N`. In a lower-triangular matrix `L`, for `i > j` an
//! entry `L[i][j] = 1` encodes the edge `j -> i`, `-1` encodes `i -> j`
//! and `0` means no edge.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::TritMatrix;
use crate::trit::Trit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("edge ({0}, {1}) is out of range")]
    OutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertices {0} and {1} form a 2-cycle, which a lower-triangular matrix cannot encode")]
    TwoCycle(usize, usize),
    #[error("adjacency matrix must be square, row {row} has {found} entries (expected {expected})")]
    NotSquare { row: usize, expected: usize, found: usize },
    #[error("entry ({0}, {1}) on or above the diagonal must be 0")]
    NotStrictlyLower(usize, usize),
}

/// A loop-free directed graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<bool>,
}

impl Digraph {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut g = Digraph { n, edges: BTreeSet::new(), adj: vec![false; n * n] };
        for (u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(GraphError::OutOfRange(u, v));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    fn insert(&mut self, u: usize, v: usize) {
        self.adj[(u - 1) * self.n + v - 1] = true;
        self.edges.insert((u, v));
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic `(u, v)` order.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.adj[(u - 1) * self.n + v - 1]
    }

    /// Out-neighbours of `u` in increasing order.
    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(move |&v| self.has_edge(u, v))
    }

    pub fn predecessors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(move |&u| self.has_edge(u, v))
    }

    /// The subgraph induced by `vertices`, relabelled `1..=k` in the given
    /// order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Digraph, GraphError> {
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        Digraph::new(vertices.len(), edges)
    }

    /// Relabels vertex `v` as `perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Digraph, GraphError> {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        Digraph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])))
    }

    /// Binary adjacency with the convention `a[i][j] = 1` iff `j -> i`.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        (1..=self.n).map(|i| (1..=self.n).map(|j| self.has_edge(j, i)).collect()).collect()
    }

    /// DOT text; `labels[v - 1]` is used as the label of vertex `v` when
    /// given.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("digraph G {\n");
        for v in 1..=self.n {
            match labels.and_then(|l| l.get(v - 1)) {
                Some(label) => {
                    let _ = writeln!(out, "  {v} [label=\"{}\"];", label.replace('\\', "\\\\").replace('"', "\\\""));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -> {v};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList { n: self.n, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }
}

/// JSON edge-list export: `{"n": N, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

pub fn export_dot(g: &Digraph, labels: Option<&[String]>) -> String {
    g.to_dot(labels)
}

/// An `N x N` trit matrix whose entries on and above the diagonal are 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerTriangular(TritMatrix);

impl LowerTriangular {
    pub fn new(m: TritMatrix) -> Result<Self, GraphError> {
        if m.rows() != m.cols() {
            return Err(GraphError::NotSquare { row: 1, expected: m.rows(), found: m.cols() });
        }
        for i in 1..=m.rows() {
            for j in i..=m.cols() {
                if m.get(i, j) != Trit::Zero {
                    return Err(GraphError::NotStrictlyLower(i, j));
                }
            }
        }
        Ok(LowerTriangular(m))
    }

    pub fn order(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> Trit {
        self.0.get(i, j)
    }

    pub fn as_matrix(&self) -> &TritMatrix {
        &self.0
    }
}

/// `S_o(M) = [[L_n, 0], [M, 0]]` for an `m x n` matrix `M`; `L_n` has 1's
/// strictly below its diagonal.
pub fn split_adjacency(m: &TritMatrix) -> LowerTriangular {
    let n = m.cols();
    let order = n + m.rows();
    let mut s = TritMatrix::zeros(order, order).expect("order >= 2");
    for i in 2..=n {
        for j in 1..i {
            s.set(i, j, Trit::Pos);
        }
    }
    for p in 1..=m.rows() {
        for j in 1..=n {
            s.set(n + p, j, m.get(p, j));
        }
    }
    LowerTriangular(s)
}

pub fn graph_from_lower(l: &LowerTriangular) -> Digraph {
    let mut edges = Vec::new();
    for i in 2..=l.order() {
        for j in 1..i {
            match l.get(i, j) {
                Trit::Pos => edges.push((j, i)),
                Trit::Neg => edges.push((i, j)),
                Trit::Zero => {}
            }
        }
    }
    Digraph::new(l.order(), edges).expect("lower-triangular entries give valid edges")
}

/// `L(A)` from a binary adjacency matrix where `a[i][j]` means `j -> i`.
pub fn lower_from_digraph(adjacency: &[Vec<bool>]) -> Result<LowerTriangular, GraphError> {
    let n = adjacency.len();
    if n == 0 {
        return Err(GraphError::NoVertices);
    }
    for (i, row) in adjacency.iter().enumerate() {
        if row.len() != n {
            return Err(GraphError::NotSquare { row: i + 1, expected: n, found: row.len() });
        }
        if row[i] {
            return Err(GraphError::Loop(i + 1));
        }
    }
    let mut l = TritMatrix::zeros(n, n).expect("n >= 1");
    for i in 1..n {
        for j in 0..i {
            let (aij, aji) = (adjacency[i][j], adjacency[j][i]);
            let entry = match (aij, aji) {
                (true, true) => return Err(GraphError::TwoCycle(j + 1, i + 1)),
                (true, false) => Trit::Pos,
                (false, true) => Trit::Neg,
                (false, false) => Trit::Zero,
            };
            l.set(i + 1, j + 1, entry);
        }
    }
    Ok(LowerTriangular(l))
}

/// `G_o(M)`: clique vertices `1..=n`, row `p` of `M` is vertex `n + p`.
pub fn split_graph(m: &TritMatrix) -> Digraph {
    graph_from_lower(&split_adjacency(m))
}
