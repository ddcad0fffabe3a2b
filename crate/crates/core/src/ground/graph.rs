//! Oriented multigraphs and the two matrices they define.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::linalg::Matrix;

/// A finite oriented multigraph. Loops and parallel edges are allowed; the
/// edge order is the ground-set order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedGraph {
    pub vertex_count: usize,
    /// `(tail, head)` pairs.
    pub edges: Vec<(usize, usize)>,
}

/// Spanning forest grown breadth-first from the lowest unvisited vertex,
/// scanning incident edges in ground-set order.
#[derive(Debug, Clone)]
pub struct SpanningForest {
    pub in_tree: Vec<bool>,
    /// `(parent vertex, connecting edge)` for every non-root vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    pub depth: Vec<usize>,
    pub components: usize,
}

impl OrientedGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        assert!(
            edges
                .iter()
                .all(|&(t, h)| t < vertex_count && h < vertex_count),
            "edge endpoint out of range"
        );
        OrientedGraph {
            vertex_count,
            edges,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of connected components (isolated vertices count).
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.vertex_count;
        for &(t, h) in &self.edges {
            let (a, b) = (find(&mut parent, t), find(&mut parent, h));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    /// Orientation sign: +1 if `e` enters `v`, -1 if it leaves `v`, 0 if it
    /// is not incident or is a loop.
    pub fn sign(&self, v: usize, e: usize) -> i64 {
        let (t, h) = self.edges[e];
        if t == h {
            0
        } else if h == v {
            1
        } else if t == v {
            -1
        } else {
            0
        }
    }

    /// The |V| x |E| vertex-edge matrix with entries `sign(v, e)`.
    pub fn vertex_edge_matrix(&self) -> Matrix {
        let rows = (0..self.vertex_count)
            .map(|v| (0..self.edges.len()).map(|e| self.sign(v, e)).collect())
            .collect();
        Matrix::new(self.edges.len(), rows)
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if t == h {
                continue;
            }
            adj[t].push((e, h));
            adj[h].push((e, t));
        }
        adj
    }

    pub fn spanning_forest(&self) -> SpanningForest {
        let adj = self.adjacency();
        let n = self.vertex_count;
        let mut seen = vec![false; n];
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut in_tree = vec![false; self.edges.len()];
        let mut components = 0;
        for root in 0..n {
            if seen[root] {
                continue;
            }
            components += 1;
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &(e, w) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((v, e));
                        depth[w] = depth[v] + 1;
                        in_tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningForest {
            in_tree,
            parent,
            depth,
            components,
        }
    }

    /// Rows are the fundamental cycles of [`Self::spanning_forest`], one per
    /// non-tree edge in ground-set order. A cycle `v0 e0 v1 e1 ... ` gets
    /// entry `sign(v_j, e_j)` on `e_j`, starting at the tail of the non-tree
    /// edge. A loop's own cycle row has entry +1 on the loop.
    pub fn fundamental_cycle_matrix(&self) -> Matrix {
        let forest = self.spanning_forest();
        let m = self.edges.len();
        let mut rows = Vec::new();
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if forest.in_tree[e] {
                continue;
            }
            let mut row = vec![0i64; m];
            if t == h {
                row[e] = 1;
                rows.push(row);
                continue;
            }
            // v0 = t, e0 = e, v1 = h, then the tree path h -> t.
            row[e] = self.sign(t, e);
            for (v, edge) in self.tree_path(&forest, h, t) {
                row[edge] += self.sign(v, edge);
            }
            rows.push(row);
        }
        Matrix::new(m, rows)
    }

    /// Tree path from `from` to `to` as `(vertex, edge leaving that vertex)`
    /// steps.
    fn tree_path(&self, forest: &SpanningForest, from: usize, to: usize) -> Vec<(usize, usize)> {
        let (mut a, mut b) = (from, to);
        let mut up_a = Vec::new();
        let mut up_b = Vec::new();
        while forest.depth[a] > forest.depth[b] {
            let (p, e) = forest.parent[a].expect("non-root");
            up_a.push((a, e));
            a = p;
        }
        while forest.depth[b] > forest.depth[a] {
            let (p, e) = forest.parent[b].expect("non-root");
            up_b.push((p, e));
            b = p;
        }
        while a != b {
            let (pa, ea) = forest.parent[a].expect("same component");
            let (pb, eb) = forest.parent[b].expect("same component");
            up_a.push((a, ea));
            up_b.push((pb, eb));
            a = pa;
            b = pb;
        }
        up_b.reverse();
        up_a.extend(up_b);
        up_a
    }

    /// Every simple cycle as a signed row, traversed from its lowest vertex.
    /// Exponential; intended for small test graphs.
    pub fn all_cycles_matrix(&self) -> Matrix {
        let m = self.edges.len();
        assert!(m <= 16, "all-cycles enumeration is capped at 16 edges");
        let mut rows = Vec::new();
        for mask in 1u32..(1 << m) {
            if let Some(row) = self.cycle_row(mask) {
                rows.push(row);
            }
        }
        Matrix::new(m, rows)
    }

    fn cycle_row(&self, mask: u32) -> Option<Vec<i64>> {
        let m = self.edges.len();
        let chosen: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        if chosen.len() == 1 {
            let (t, h) = self.edges[chosen[0]];
            if t != h {
                return None;
            }
            let mut row = vec![0; m];
            row[chosen[0]] = 1;
            return Some(row);
        }
        if chosen.iter().any(|&e| self.edges[e].0 == self.edges[e].1) {
            return None;
        }
        let mut deg = vec![0usize; self.vertex_count];
        for &e in &chosen {
            deg[self.edges[e].0] += 1;
            deg[self.edges[e].1] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            return None;
        }
        // walk the cycle from its lowest vertex
        let start = deg.iter().position(|&d| d == 2)?;
        let mut row = vec![0i64; m];
        let mut used = vec![false; m];
        let mut v = start;
        let mut steps = 0;
        loop {
            let e = *chosen
                .iter()
                .find(|&&e| !used[e] && (self.edges[e].0 == v || self.edges[e].1 == v))?;
            used[e] = true;
            row[e] = self.sign(v, e);
            let (t, h) = self.edges[e];
            v = if t == v { h } else { t };
            steps += 1;
            if v == start {
                break;
            }
        }
        (steps == chosen.len()).then_some(row)
    }

    /// True when every vertex has even degree in the subgraph on `mask`.
    pub fn is_even_subgraph(&self, mask: u64) -> bool {
        let mut deg = vec![0usize; self.vertex_count];
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                deg[t] += 1;
                deg[h] += 1;
            }
        }
        deg.iter().all(|d| d % 2 == 0)
    }

    /// True when `mask` is a disjoint union of minimal cutsets, i.e. the set
    /// of edges crossing some vertex 2-colouring.
    pub fn is_cut_union(&self, mask: u64) -> bool {
        let adj = self.adjacency();
        let mut colour: Vec<Option<bool>> = vec![None; self.vertex_count];
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if t == h && mask >> e & 1 == 1 {
                return false;
            }
        }
        for root in 0..self.vertex_count {
            if colour[root].is_some() {
                continue;
            }
            colour[root] = Some(false);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                let cv = colour[v].unwrap();
                for &(e, w) in &adj[v] {
                    let want = cv ^ (mask >> e & 1 == 1);
                    match colour[w] {
                        None => {
                            colour[w] = Some(want);
                            stack.push(w);
                        }
                        Some(c) if c != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Same graph with edge `e` reversed.
    pub fn reorient(&self, e: usize) -> OrientedGraph {
        let mut g = self.clone();
        let (t, h) = g.edges[e];
        g.edges[e] = (h, t);
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::linalg::{product_with_transpose, rank, Scalars};

    fn triangle() -> OrientedGraph {
        OrientedGraph::new(3, vec![(0, 1), (1, 2), (2, 0)])
    }

    fn bowtie() -> OrientedGraph {
        OrientedGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    }

    #[test]
    fn single_edge_column() {
        let g = OrientedGraph::new(2, vec![(0, 1)]);
        assert_eq!(g.vertex_edge_matrix().rows, vec![vec![-1], vec![1]]);
    }

    #[test]
    fn loop_column_is_zero() {
        let g = OrientedGraph::new(1, vec![(0, 0)]);
        assert_eq!(g.vertex_edge_matrix().rows, vec![vec![0]]);
        assert_eq!(g.fundamental_cycle_matrix().rows, vec![vec![1]]);
    }

    #[test]
    fn triangle_matrices() {
        let g = triangle();
        assert_eq!(rank(&g.vertex_edge_matrix(), Scalars::Integer), 2);
        let c = g.fundamental_cycle_matrix();
        assert_eq!(c.row_count(), 1);
        assert!(c.rows[0].iter().all(|v| v.abs() == 1));
        assert!(c.rows[0].iter().all(|&v| v == c.rows[0][0]));
    }

    #[test]
    fn tree_has_no_cycles() {
        let g = OrientedGraph::new(4, vec![(0, 1), (1, 2), (1, 3)]);
        let c = g.fundamental_cycle_matrix();
        assert_eq!(c.row_count(), 0);
        assert_eq!(c.cols, 3);
    }

    #[test]
    fn bowtie_cycle_rank() {
        let g = bowtie();
        let c = g.fundamental_cycle_matrix();
        assert_eq!(c.row_count(), 2);
        assert_eq!(rank(&c, Scalars::Integer), 2);
        assert_eq!(g.component_count(), 1);
    }

    #[test]
    fn cycle_rows_are_flows() {
        for g in [
            triangle(),
            bowtie(),
            OrientedGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            OrientedGraph::new(2, vec![(0, 1), (1, 0), (0, 1), (1, 1)]),
        ] {
            let h = g.vertex_edge_matrix();
            for c in [g.fundamental_cycle_matrix(), g.all_cycles_matrix()] {
                assert!(product_with_transpose(&h, &c, Scalars::Integer)
                    .iter()
                    .flatten()
                    .all(|&v| v == 0));
            }
            let r_h = rank(&h, Scalars::Integer);
            let r_c = rank(&g.fundamental_cycle_matrix(), Scalars::Integer);
            assert_eq!(r_h + r_c, g.edge_count());
        }
    }

    #[test]
    fn lemma_1_5_predicates() {
        let g = triangle();
        assert!(g.is_even_subgraph(0b111));
        assert!(!g.is_even_subgraph(0b001));
        assert!(g.is_cut_union(0b011));
        assert!(!g.is_cut_union(0b111));
        let path = OrientedGraph::new(3, vec![(0, 1), (1, 2)]);
        assert!(path.is_cut_union(0b01));
        assert!(!path.is_even_subgraph(0b01));
        assert!(path.is_cut_union(0) && path.is_even_subgraph(0));
    }

    #[test]
    fn components() {
        assert_eq!(OrientedGraph::new(4, vec![(0, 1)]).component_count(), 3);
        assert_eq!(OrientedGraph::new(0, vec![]).component_count(), 0);
    }
}
