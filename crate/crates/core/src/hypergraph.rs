//! `r`-uniform (multi)hypergraphs, edge selections, and deficiency
//! arithmetic.
//!
//! A hypergraph here is a value: once constructed it is immutable and
//! safe to share across threads. Edges are stored as ascending vertex
//! tuples, and the edge list itself is kept in lexicographic order so
//! that equal hypergraphs serialize identically. Multigraph edges are
//! repeated entries, not multiplicity counters, so selection indices
//! address edge *instances*.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

/// Errors from hypergraph construction and selection arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("edge {index} has {found} vertices, expected {expected}")]
    EdgeSize {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("edge {index} mentions vertex {vertex} but n = {n}")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        n: usize,
    },
    #[error("edge {index} repeats a vertex")]
    RepeatedVertex { index: usize },
    #[error("duplicate edge at position {index} in a simple hypergraph")]
    DuplicateEdge { index: usize },
    #[error("selection index {index} out of range; hypergraph has {m} edges")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("selection is empty")]
    EmptySelection,
}

/// An `r`-uniform hypergraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
    allow_multi: bool,
}

/// A set of edge-list positions. Positions are distinct even when the
/// underlying multigraph repeats an edge.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct EdgeSelection {
    indices: BTreeSet<usize>,
}

impl EdgeSelection {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        EdgeSelection {
            indices: indices.into_iter().collect(),
        }
    }

    /// Every edge position of a hypergraph with `m` edges.
    pub fn all(m: usize) -> Self {
        Self::new(0..m)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.indices.iter().copied().collect()
    }
}

impl Hypergraph {
    /// Build a hypergraph, normalizing edge order. Each edge must have
    /// exactly `r` distinct in-range vertices; duplicate edges are
    /// rejected unless `allow_multi` is set.
    pub fn new(
        n: usize,
        r: usize,
        edges: Vec<Vec<usize>>,
        allow_multi: bool,
    ) -> Result<Self, HypergraphError> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (index, mut edge) in edges.into_iter().enumerate() {
            if edge.len() != r {
                return Err(HypergraphError::EdgeSize {
                    index,
                    found: edge.len(),
                    expected: r,
                });
            }
            edge.sort_unstable();
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex { index });
            }
            if let Some(&v) = edge.last() {
                if v >= n {
                    return Err(HypergraphError::VertexOutOfRange {
                        index,
                        vertex: v,
                        n,
                    });
                }
            }
            normalized.push(edge);
        }
        normalized.sort_unstable();
        if !allow_multi {
            if let Some(pos) = normalized.windows(2).position(|w| w[0] == w[1]) {
                return Err(HypergraphError::DuplicateEdge { index: pos + 1 });
            }
        }
        Ok(Hypergraph {
            n,
            r,
            edges: normalized,
            allow_multi,
        })
    }

    /// Hypergraph with no edges.
    pub fn empty(n: usize, r: usize) -> Self {
        Hypergraph {
            n,
            r,
            edges: Vec::new(),
            allow_multi: false,
        }
    }

    /// The complete simple `r`-graph on `n` vertices.
    pub fn complete(n: usize, r: usize) -> Self {
        use itertools::Itertools;
        let edges = (0..n).combinations(r).collect();
        Hypergraph {
            n,
            r,
            edges,
            allow_multi: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of edge instances.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Option<&[usize]> {
        self.edges.get(index).map(|e| e.as_slice())
    }

    pub fn allow_multi(&self) -> bool {
        self.allow_multi
    }

    /// Number of edge instances containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    /// Multiplicity of an edge given as a vertex set.
    pub fn multiplicity(&self, edge: &[usize]) -> usize {
        let mut key = edge.to_vec();
        key.sort_unstable();
        self.edges.iter().filter(|e| **e == key).count()
    }

    fn check_selection(&self, selection: &EdgeSelection) -> Result<(), HypergraphError> {
        for index in selection.iter() {
            if index >= self.m() {
                return Err(HypergraphError::IndexOutOfRange {
                    index,
                    m: self.m(),
                });
            }
        }
        Ok(())
    }

    /// Union of the selected edges as a vertex set.
    pub fn cover(&self, selection: &EdgeSelection) -> Result<BTreeSet<usize>, HypergraphError> {
        self.check_selection(selection)?;
        let mut out = BTreeSet::new();
        for index in selection.iter() {
            out.extend(self.edges[index].iter().copied());
        }
        Ok(out)
    }

    /// `|S| - |cover(S)|` for a nonempty selection. Negative values are
    /// common; a positive value certifies a dense spot.
    pub fn deficiency(&self, selection: &EdgeSelection) -> Result<i64, HypergraphError> {
        if selection.is_empty() {
            return Err(HypergraphError::EmptySelection);
        }
        let cover = self.cover(selection)?;
        Ok(selection.len() as i64 - cover.len() as i64)
    }

    /// Partition a selection into maximal blocks connected under
    /// shared-vertex adjacency. Covers of distinct blocks are disjoint,
    /// so deficiency is additive over the returned parts.
    pub fn components(
        &self,
        selection: &EdgeSelection,
    ) -> Result<Vec<EdgeSelection>, HypergraphError> {
        self.check_selection(selection)?;
        let members: Vec<usize> = selection.to_vec();
        // vertex -> positions within `members`
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (pos, &index) in members.iter().enumerate() {
            for &v in &self.edges[index] {
                incident[v].push(pos);
            }
        }
        let mut seen = vec![false; members.len()];
        let mut parts = Vec::new();
        for start in 0..members.len() {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut part = Vec::new();
            while let Some(pos) = stack.pop() {
                part.push(members[pos]);
                for &v in &self.edges[members[pos]] {
                    for &other in &incident[v] {
                        if !seen[other] {
                            seen[other] = true;
                            stack.push(other);
                        }
                    }
                }
            }
            parts.push(EdgeSelection::new(part));
        }
        Ok(parts)
    }

    /// Hypergraph left after keeping only the given edge positions.
    pub fn restrict_to(&self, selection: &EdgeSelection) -> Result<Hypergraph, HypergraphError> {
        self.check_selection(selection)?;
        let edges = selection.iter().map(|i| self.edges[i].clone()).collect();
        Hypergraph::new(self.n, self.r, edges, self.allow_multi)
    }

    /// Hypergraph with the given edge positions removed.
    pub fn remove_edges(&self, selection: &EdgeSelection) -> Result<Hypergraph, HypergraphError> {
        self.check_selection(selection)?;
        let edges = (0..self.m())
            .filter(|i| !selection.contains(*i))
            .map(|i| self.edges[i].clone())
            .collect();
        Hypergraph::new(self.n, self.r, edges, self.allow_multi)
    }
}
