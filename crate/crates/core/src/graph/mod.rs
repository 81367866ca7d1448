//! Immutable simple graphs with optional self-loop flags and vertex labels.
//!
//! Vertices are dense indices `0..n`. Adjacency is stored in compressed
//! sparse row form with sorted neighbor lists; self-loops are kept apart
//! from adjacency so that `neighbors(v)` never contains `v`.

mod coloring;
mod families;
mod format;
mod label;

pub use coloring::{is_homomorphism, is_proper_coloring, is_proper_on_product, Coloring, Homomorphism};
pub use families::{
    categorical_product, categorical_product_with_loops, complement, complete, cycle, edgeless, exponential_graph, function_index, grotzsch,
    kneser, lexicographic_product, mycielskian, subsets_lex,
};
pub(crate) use families::{binomial as families_binomial, function_values};
pub use format::CanonicalGraph;
pub use label::VertexLabel;

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    loops: Vec<usize>,
    labels: Option<Vec<VertexLabel>>,
}

impl Graph {
    /// Builds a graph from per-vertex neighbor lists. Lists are sorted and
    /// deduplicated; the relation must be symmetric and irreflexive.
    pub fn from_adjacency(
        adjacency: Vec<Vec<u32>>,
        loops: Vec<usize>,
        labels: Option<Vec<VertexLabel>>,
    ) -> Result<Self> {
        let n = adjacency.len();
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let total: usize = adjacency.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        for (v, mut list) in adjacency.into_iter().enumerate() {
            list.sort_unstable();
            list.dedup();
            if let Some(&w) = list.iter().find(|&&w| w as usize >= n) {
                return Err(Error::VertexOutOfRange { vertex: w as usize, n });
            }
            if list.binary_search(&(v as u32)).is_ok() {
                return Err(Error::Format(format!("vertex {v} listed as its own neighbor")));
            }
            targets.extend_from_slice(&list);
            offsets.push(targets.len());
        }
        let g = Graph {
            offsets,
            targets,
            loops: Vec::new(),
            labels: None,
        };
        for u in 0..n {
            for &w in g.neighbors(u) {
                if !g.has_edge(w as usize, u) {
                    return Err(Error::Format(format!("adjacency not symmetric at {u}-{w}")));
                }
            }
        }
        g.with_loops(loops)?.with_labels(labels)
    }

    /// Builds a graph from an undirected edge list.
    pub fn from_edges(
        n: usize,
        edges: &[(usize, usize)],
        loops: Vec<usize>,
        labels: Option<Vec<VertexLabel>>,
    ) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::Format(format!("edge {u}-{v} is a loop; use the loop list")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        Self::from_adjacency(adj, loops, labels)
    }

    /// Builds a graph whose adjacency lists are already sorted, deduplicated
    /// and symmetric. Used by constructors that generate them that way.
    pub(crate) fn from_sorted_adjacency(
        adjacency: Vec<Vec<u32>>,
        loops: Vec<usize>,
        labels: Option<Vec<VertexLabel>>,
    ) -> Self {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let total: usize = adjacency.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        for list in adjacency {
            debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
            targets.extend_from_slice(&list);
            offsets.push(targets.len());
        }
        Graph {
            offsets,
            targets,
            loops,
            labels,
        }
    }

    fn with_loops(mut self, mut loops: Vec<usize>) -> Result<Self> {
        loops.sort_unstable();
        loops.dedup();
        if let Some(&v) = loops.iter().find(|&&v| v >= self.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        self.loops = loops;
        Ok(self)
    }

    fn with_labels(mut self, labels: Option<Vec<VertexLabel>>) -> Result<Self> {
        if let Some(ls) = &labels {
            if ls.len() != self.n() {
                return Err(Error::LengthMismatch {
                    expected: self.n(),
                    found: ls.len(),
                });
            }
            let mut seen = HashSet::with_capacity(ls.len());
            if let Some(dup) = ls.iter().find(|l| !seen.insert(*l)) {
                return Err(Error::Format(format!("duplicate vertex label {dup}")));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Same graph with its labels replaced (or removed).
    pub fn relabeled(&self, labels: Option<Vec<VertexLabel>>) -> Result<Self> {
        self.clone().with_labels(labels)
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Sorted list of looped vertices.
    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.binary_search(&v).is_ok()
    }

    pub fn is_loop_free(&self) -> bool {
        self.loops.is_empty()
    }

    /// Fails with [`Error::Looped`] unless the graph is loop-free.
    pub fn require_loop_free(&self) -> Result<()> {
        match self.loops.first() {
            None => Ok(()),
            Some(&first) => Err(Error::Looped {
                count: self.loops.len(),
                first,
            }),
        }
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&VertexLabel> {
        self.labels.as_ref().map(|ls| &ls[v])
    }

    /// Label of `v`, falling back to `Index(v)` for unlabeled graphs.
    pub fn label_or_index(&self, v: usize) -> VertexLabel {
        self.label(v).cloned().unwrap_or(VertexLabel::Index(v))
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&w| w as usize)
                .filter(move |&w| u < w)
                .map(move |w| (u, w))
        })
    }

    /// Subgraph induced by `vertices` (duplicates ignored), renumbered in
    /// increasing order of the original indices. Labels and loops carry over.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&v) = keep.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let mut new_index = vec![u32::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i as u32;
        }
        let adjacency = keep
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .map(|&w| new_index[w as usize])
                    .filter(|&w| w != u32::MAX)
                    .collect()
            })
            .collect();
        let loops = keep
            .iter()
            .enumerate()
            .filter(|(_, &v)| self.has_loop(v))
            .map(|(i, _)| i)
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|ls| keep.iter().map(|&v| ls[v].clone()).collect());
        Ok(Graph::from_sorted_adjacency(adjacency, loops, labels))
    }

    /// Vertices without a self-loop.
    pub fn loop_free_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.has_loop(v)).collect()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Result<Option<usize>> {
        self.require_loop_free()?;
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // Cycles closed from here on are at least 2*dist[u] long.
                    if 2 * dist[u] >= b {
                        break 'bfs;
                    }
                }
                for &w in self.neighbors(u) {
                    let w = w as usize;
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        Ok(best)
    }
}
