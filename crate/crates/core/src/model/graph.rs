use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![false; vertex_count * vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::EdgeOutOfRange(u, v, vertex_count));
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u * vertex_count + v] = true;
            adj[v * vertex_count + u] = true;
        }
        Ok(Graph { vertex_count, adj })
    }

    /// Graph with no edges.
    pub fn discrete(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            adj: vec![false; vertex_count * vertex_count],
        }
    }

    /// Complete graph.
    pub fn complete(vertex_count: usize) -> Self {
        let mut adj = vec![true; vertex_count * vertex_count];
        for v in 0..vertex_count {
            adj[v * vertex_count + v] = false;
        }
        Graph { vertex_count, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.vertex_count + v]
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count;
        let mut out = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut adj = vec![false; k * k];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                adj[i * k + j] = self.adjacent(u, v);
            }
        }
        Graph { vertex_count: k, adj }
    }
}
