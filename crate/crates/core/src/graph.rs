//! Immutable undirected simple graphs with bitset adjacency rows.
//!
//! Vertices are dense ids `0..n`. Rows are `u64` words, which makes the
//! neighborhood-set algebra behind twin and co-twin detection a handful of
//! word operations per vertex pair.

use thiserror::Error;

/// Default cap on the number of vertices; all analyses are desk-scale.
pub const DEFAULT_ORDER_CAP: usize = 512;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {vertex} is not allowed")]
    SelfLoop { vertex: usize },
}

/// An immutable undirected simple graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn word_of(v: usize) -> usize {
    v / 64
}

fn bit_of(v: usize) -> u64 {
    1u64 << (v % 64)
}

impl Graph {
    /// An edgeless graph on `n` vertices, subject to the default cap.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        Self::with_order_cap(n, DEFAULT_ORDER_CAP)
    }

    pub fn with_order_cap(n: usize, cap: usize) -> Result<Self, GraphError> {
        if n > cap {
            return Err(GraphError::OrderCapExceeded { order: n, cap });
        }
        let words = n.div_ceil(64).max(1);
        Ok(Graph {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, order: n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.words + word_of(v)] |= bit_of(v);
        self.bits[v * self.words + word_of(u)] |= bit_of(u);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.bits[u * self.words + word_of(v)] & bit_of(v) != 0
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `N(u)`, sorted; excludes `u` itself.
    pub fn open_neighborhood(&self, u: usize) -> Vec<usize> {
        assert!(u < self.n, "vertex {u} out of range");
        let mut out = Vec::with_capacity(self.degree(u));
        for (wi, &w) in self.row(u).iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    /// `N[u] = N(u) ∪ {u}`, sorted.
    pub fn closed_neighborhood(&self, u: usize) -> Vec<usize> {
        let mut out = self.open_neighborhood(u);
        let pos = out.partition_point(|&v| v < u);
        out.insert(pos, u);
        out
    }

    /// Word mask covering the valid vertex range.
    fn tail_mask(&self, wi: usize) -> u64 {
        let hi = ((wi + 1) * 64).min(self.n);
        let lo = wi * 64;
        if hi <= lo {
            0
        } else if hi - lo == 64 {
            u64::MAX
        } else {
            (1u64 << (hi - lo)) - 1
        }
    }

    /// The complement graph: `uv` is an edge iff `u ≠ v` and `uv` is not an
    /// edge here.
    pub fn complement(&self) -> Graph {
        let mut g = Graph {
            n: self.n,
            words: self.words,
            bits: vec![0; self.bits.len()],
        };
        for u in 0..self.n {
            for wi in 0..self.words {
                let mut w = !self.row(u)[wi] & self.tail_mask(wi);
                if wi == word_of(u) {
                    w &= !bit_of(u);
                }
                g.bits[u * self.words + wi] = w;
            }
        }
        g
    }

    /// The subgraph induced by `verts`, together with the relabeling map:
    /// vertex `i` of the result is `map[i]` in the original graph.
    ///
    /// `verts` is deduplicated and sorted, so the map is increasing.
    pub fn induced_subgraph(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = verts.to_vec();
        map.sort_unstable();
        map.dedup();
        for &v in &map {
            assert!(v < self.n, "vertex {v} out of range");
        }
        let mut g = Graph::with_order_cap(map.len(), self.n.max(1)).expect("shrinking");
        for i in 0..map.len() {
            for j in (i + 1)..map.len() {
                if self.has_edge(map[i], map[j]) {
                    g.set_edge(i, j);
                }
            }
        }
        (g, map)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.open_neighborhood(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components as sorted vertex lists, ordered by minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(u) = queue.pop() {
                for v in self.open_neighborhood(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Two-colorability via BFS; components are colored independently.
    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// A two-coloring as `(side of vertex 0's color, other side)` when the
    /// graph is bipartite. Each component is colored with its minimum vertex
    /// on the first side.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color = vec![-1i8; self.n];
        for start in 0..self.n {
            if color[start] >= 0 {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.open_neighborhood(u) {
                    if color[v] < 0 {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        let side0 = (0..self.n).filter(|&v| color[v] == 0).collect();
        let side1 = (0..self.n).filter(|&v| color[v] == 1).collect();
        Some((side0, side1))
    }

    /// Triangle detection by row intersection over edges.
    pub fn has_triangle(&self) -> bool {
        for (u, v) in self.edges() {
            for wi in 0..self.words {
                if self.row(u)[wi] & self.row(v)[wi] != 0 {
                    return true;
                }
            }
        }
        false
    }

    /// Number of triangles; each is counted once.
    pub fn triangle_count(&self) -> u64 {
        let mut total = 0u64;
        for (u, v) in self.edges() {
            for wi in 0..self.words {
                total += (self.row(u)[wi] & self.row(v)[wi]).count_ones() as u64;
            }
        }
        total / 3
    }

    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        (0..self.words)
            .map(|wi| (self.row(u)[wi] & self.row(v)[wi]).count_ones() as usize)
            .sum()
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn is_regular(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        (1..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    /// DOT export: every vertex listed, then edges `i -- j` with `i < j` in
    /// lexicographic order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }

    // ---- named constructions used across the crate and its tests ----

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n).expect("within cap");
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    pub fn empty(n: usize) -> Graph {
        Graph::new(n).expect("within cap")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut g = Graph::new(n).expect("within cap");
        for u in 0..n {
            g.set_edge(u, (u + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n).expect("within cap");
        for u in 1..n {
            g.set_edge(u - 1, u);
        }
        g
    }

    /// `K_{a,b}` with side `0..a` against `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b).expect("within cap");
        for u in 0..a {
            for v in a..(a + b) {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// The icosahedral graph: poles 0 and 11, upper ring 1..=5, lower ring
    /// 6..=10, rings joined as a pentagonal antiprism.
    pub fn icosahedron() -> Graph {
        let mut edges = Vec::new();
        for i in 1..=5usize {
            edges.push((0, i));
            edges.push((11, i + 5));
            let next = i % 5 + 1;
            edges.push((i, next));
            edges.push((i + 5, next + 5));
            edges.push((i, i + 5));
            edges.push((i, next + 5));
        }
        Graph::from_edges(12, &edges).expect("fixed edge list")
    }

    /// Disjoint union; vertex blocks are laid out in argument order.
    pub fn disjoint_union(parts: &[&Graph]) -> Graph {
        let n = parts.iter().map(|g| g.order()).sum();
        let mut g = Graph::new(n).expect("within cap");
        let mut offset = 0;
        for part in parts {
            for (u, v) in part.edges() {
                g.set_edge(offset + u, offset + v);
            }
            offset += part.order();
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighborhoods() {
        // C_8(±1,±3,4) built by hand from the difference rule.
        let mut edges = Vec::new();
        for u in 0..8usize {
            for a in [1usize, 3, 4] {
                edges.push((u, (u + a) % 8));
            }
        }
        let g = Graph::from_edges(8, &edges).unwrap();
        assert_eq!(g.open_neighborhood(0), vec![1, 3, 4, 5, 7]);
        assert_eq!(Graph::empty(5).open_neighborhood(2), Vec::<usize>::new());
        assert_eq!(Graph::complete(4).closed_neighborhood(2), vec![0, 1, 2, 3]);
    }

    #[test]
    fn complement_basics() {
        let k5 = Graph::complete(5);
        let n5 = k5.complement();
        assert_eq!(n5.edge_count(), 0);
        assert_eq!(n5.complement(), k5);
        // Complement is an involution on a few small graphs.
        for g in [Graph::cycle(5), Graph::path(6), Graph::complete_bipartite(2, 3)] {
            assert_eq!(g.complement().complement(), g);
        }
    }

    #[test]
    fn induced_subgraph_keeps_inner_edges() {
        let g = Graph::cycle(6);
        let (h, map) = g.induced_subgraph(&[5, 0, 1]);
        assert_eq!(map, vec![0, 1, 5]);
        assert_eq!(h.edges(), vec![(0, 1), (0, 2)]);
        let (e, _) = g.induced_subgraph(&[]);
        assert_eq!(e.order(), 0);
    }

    #[test]
    fn predicates() {
        let c6 = Graph::cycle(6);
        assert!(c6.is_connected());
        assert!(c6.is_bipartite());
        assert!(!c6.has_triangle());
        assert_eq!(c6.is_regular(), Some(2));

        let two_triangles = Graph::disjoint_union(&[&Graph::complete(3), &Graph::complete(3)]);
        assert_eq!(two_triangles.component_count(), 2);
        assert!(two_triangles.has_triangle());
        assert_eq!(two_triangles.triangle_count(), 2);
        assert!(!two_triangles.is_bipartite());

        assert_eq!(Graph::complete(4).triangle_count(), 4);
        assert_eq!(Graph::path(4).is_regular(), None);
    }

    #[test]
    fn dot_format() {
        let g = Graph::path(3);
        assert_eq!(g.to_dot(), "graph {\n  0;\n  1;\n  2;\n  0 -- 1;\n  1 -- 2;\n}\n");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 3, order: 3 }
        );
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]).unwrap_err(),
            GraphError::SelfLoop { vertex: 1 }
        );
        assert!(matches!(
            Graph::new(DEFAULT_ORDER_CAP + 1),
            Err(GraphError::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn bipartition_sides() {
        let g = Graph::complete_bipartite(3, 3);
        let (s0, s1) = g.bipartition().unwrap();
        assert_eq!(s0, vec![0, 1, 2]);
        assert_eq!(s1, vec![3, 4, 5]);
    }
}
