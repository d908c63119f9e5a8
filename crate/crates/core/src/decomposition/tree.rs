use crate::error::{Error, Result};

/// An unrooted tree whose internal vertices all have degree three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryTree {
    adj: Vec<Vec<usize>>,
}

impl TernaryTree {
    /// Builds and validates a tree on vertices `0..vertex_count`.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        if edges.len() + 1 != vertex_count {
            return Err(Error::InvalidTree(format!(
                "{} edges for {vertex_count} vertices",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidTree(format!("edge ({u},{v}) out of range")));
            }
            if u == v || adj[u].contains(&v) {
                return Err(Error::InvalidTree(format!("loop or parallel edge at ({u},{v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        let tree = TernaryTree { adj };
        if tree.reachable_from(0).iter().filter(|&&b| b).count() != vertex_count {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        if vertex_count > 1 {
            if let Some(v) = (0..vertex_count).find(|&v| !matches!(tree.adj[v].len(), 1 | 3)) {
                return Err(Error::InvalidTree(format!(
                    "vertex {v} has degree {}, expected 1 or 3",
                    tree.adj[v].len()
                )));
            }
        }
        Ok(tree)
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Neighbors in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.adj.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn internal_nodes(&self) -> Vec<usize> {
        (0..self.adj.len()).filter(|&v| self.adj[v].len() == 3).collect()
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.adj.len())
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Every directed edge `(u, v)` in lexicographic order.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        (0..self.adj.len())
            .flat_map(|u| self.adj[u].iter().map(move |&v| (u, v)))
            .collect()
    }

    /// Vertices on `to`'s side of the edge `{from, to}`.
    pub fn side(&self, from: usize, to: usize) -> Vec<usize> {
        let mut out = vec![to];
        let mut stack = vec![(to, from)];
        while let Some((v, parent)) = stack.pop() {
            for &w in &self.adj[v] {
                if w != parent {
                    out.push(w);
                    stack.push((w, v));
                }
            }
        }
        out.sort_unstable();
        out
    }
}
