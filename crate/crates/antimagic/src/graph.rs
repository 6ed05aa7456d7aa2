//! Simple undirected graphs without isolated vertices, plus the family generators.
//!
//! Vertices are `1..=n`. Edges are stored as `(u, v)` with `u < v` in lexicographic
//! order, and an edge is identified by its position in that order.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // adj[v] = (neighbor, edge index), sorted by neighbor
    adj: Vec<Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;
    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        Graph::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson { n: g.n, edges: g.edges.iter().map(|&(u, v)| [u, v]).collect() }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// One member of a total open neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(usize),
    /// Edge by canonical index (0-based).
    Edge(usize),
}

impl Graph {
    /// Builds a graph from an arbitrary edge list, normalizing each pair to `u < v`
    /// and sorting. Rejects loops, duplicates, out-of-range ends and isolated vertices.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n + 1];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        for (v, list) in adj.iter_mut().enumerate().skip(1) {
            if list.is_empty() {
                return Err(GraphError::IsolatedVertex(v));
            }
            list.sort_unstable();
        }
        if n == 0 {
            return Err(GraphError::InvalidParams("graph has no vertices".into()));
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbors of `v` with the index of the connecting edge.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = (u.min(v), u.max(v));
        self.edges.binary_search(&(a, b)).ok()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regularity(&self) -> Option<usize> {
        let r = self.degree(1);
        self.vertices().all(|v| self.degree(v) == r).then_some(r)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// NT(v): the neighbors of `v` and its incident edges, `v` itself excluded.
    pub fn total_open_neighborhood(&self, v: usize) -> Result<BTreeSet<Element>, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v].iter().flat_map(|&(u, e)| [Element::Vertex(u), Element::Edge(e)]).collect())
    }

    /// G ∘ K_1: vertex `n + i` becomes a pendant attached to `i`.
    pub fn corona_with_k1(&self) -> Graph {
        let n = self.n;
        let edges = self.edges.iter().copied().chain((1..=n).map(|i| (i, n + i)));
        Graph::new(2 * n, edges).expect("corona of a valid graph is valid")
    }
}

/// Graph families with frozen vertex naming.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// `v_1 .. v_n` in walk order.
    Path {
        n: usize,
    },
    /// `v_1 .. v_n` in walk order, closing edge `v_n v_1`.
    Cycle {
        n: usize,
    },
    /// Leaves `1..=n`, center `n + 1`.
    Star {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// `x_i = i`, `y_j = m + j`.
    CompleteBipartite {
        m: usize,
        n: usize,
    },
    /// `v_{i,j} = i + n(j-1)` for `j = 1..=t+1`; the center is the last vertex.
    Spider {
        n: usize,
        t: usize,
    },
    /// `x_i = 1..=m`, `y_j = m+1..=m+n`, `x = m+n+1`, `y = m+n+2`.
    Bistar {
        m: usize,
        n: usize,
    },
    /// Corona with `K_1` over a base family; pendant `x_i = n + i`.
    Corona(Box<FamilySpec>),
}

impl FamilySpec {
    pub fn generate(&self) -> Result<Graph, GraphError> {
        use FamilySpec::*;
        let bad = |msg: &str| Err(GraphError::InvalidParams(format!("{self:?}: {msg}")));
        let g = match *self {
            Path { n } => {
                if n < 2 {
                    return bad("path needs n >= 2");
                }
                Graph::new(n, (1..n).map(|i| (i, i + 1)))
            }
            Cycle { n } => {
                if n < 3 {
                    return bad("cycle needs n >= 3");
                }
                Graph::new(n, (1..n).map(|i| (i, i + 1)).chain([(n, 1)]))
            }
            Star { n } => {
                if n < 1 {
                    return bad("star needs n >= 1");
                }
                Graph::new(n + 1, (1..=n).map(|i| (i, n + 1)))
            }
            Complete { n } => {
                if n < 2 {
                    return bad("complete graph needs n >= 2");
                }
                Graph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
            }
            CompleteBipartite { m, n } => {
                if m < 1 || n < 1 {
                    return bad("both parts must be non-empty");
                }
                Graph::new(m + n, (1..=m).flat_map(|i| (1..=n).map(move |j| (i, m + j))))
            }
            Spider { n, t } => {
                if n < 1 || t < 1 {
                    return bad("spider needs n >= 1 and t >= 1");
                }
                let center = n * (t + 1) + 1;
                let legs = (1..=n).flat_map(|i| {
                    std::iter::once((center, i)).chain((2..=t + 1).map(move |j| (i + n * (j - 2), i + n * (j - 1))))
                });
                Graph::new(center, legs)
            }
            Bistar { m, n } => {
                if m < 1 || n < 1 {
                    return bad("bistar needs m, n >= 1");
                }
                let (x, y) = (m + n + 1, m + n + 2);
                let edges = (1..=m).map(|i| (i, x)).chain((1..=n).map(|j| (m + j, y))).chain([(x, y)]);
                Graph::new(m + n + 2, edges)
            }
            Corona(ref base) => return Ok(base.generate()?.corona_with_k1()),
        };
        Ok(g.expect("family generators produce valid graphs"))
    }
}
