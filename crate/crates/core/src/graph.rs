//! Undirected simple graphs, edge-list I/O and induced subgraphs.
//!
//! A [`Graph`] is immutable after construction. Edges are stored once as
//! `(u, v)` with `u < v`, and a CSR adjacency is kept alongside for the
//! matrix-free operators in [`crate::spectral`].

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl Graph {
    /// Builds a graph from unordered pairs. Self-loops, duplicates (in either
    /// orientation) and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut canonical = Vec::with_capacity(edges.len());
        for (idx, &(a, b)) in edges.iter().enumerate() {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop {
                    line: idx + 1,
                    vertex: a,
                });
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge {
                    line: idx + 1,
                    u: a,
                    v: b,
                });
            }
            canonical.push(e);
        }
        Ok(Self::from_canonical(n, canonical))
    }

    /// `edges` must already be validated and canonical.
    fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0usize; 2 * edges.len()];
        for &(u, v) in &edges {
            neighbors[fill[u]] = v;
            fill[u] += 1;
            neighbors[fill[v]] = u;
            fill[v] += 1;
        }
        for u in 0..n {
            neighbors[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        let g = Graph {
            n,
            edges,
            offsets,
            neighbors,
        };
        debug_assert_eq!(g.total_volume(), 2 * g.edge_count(), "handshake");
        g
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_canonical(n, edges)
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges = (0..n).map(|u| (u, (u + 1) % n)).collect::<Vec<_>>();
        Self::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_canonical(n, edges)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, &edges).expect("petersen edges are valid")
    }

    /// Places `other` after `self`, shifting its vertex ids by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::from_canonical(self.n + other.n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges, `u < v`, in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[self.offsets[u]..self.offsets[u + 1]]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn total_volume(&self) -> usize {
        self.neighbors.len()
    }

    pub fn volume(&self, set: &[usize]) -> usize {
        set.iter().map(|&u| self.degree(u)).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// First vertex with degree 0, if any.
    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&u| self.degree(u) == 0)
    }

    pub(crate) fn require_positive_degrees(&self) -> Result<()> {
        match self.isolated_vertex() {
            Some(vertex) => Err(Error::ZeroDegree { vertex }),
            None => Ok(()),
        }
    }

    /// Connected-component label per vertex, numbered in order of first vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = count;
            stack.push(root);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().0 == 1
    }

    /// Subgraph induced on `subset`. Vertices are relabeled `0..|subset|` in
    /// increasing order of their original id; the returned map sends each new
    /// id to the original one.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<(Graph, Vec<usize>)> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut map: Vec<usize> = subset.to_vec();
        map.sort_unstable();
        map.dedup();
        if let Some(&vertex) = map.last().filter(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex, n: self.n });
        }
        let mut local = vec![usize::MAX; self.n];
        for (i, &u) in map.iter().enumerate() {
            local[u] = i;
        }
        let mut edges = Vec::new();
        for (i, &u) in map.iter().enumerate() {
            for &w in self.neighbors(u) {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Ok((Self::from_canonical(map.len(), edges), map))
    }

    /// Writes the edge list, one `u v` pair per line, after a comment header.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# vertices {} edges {}", self.n, self.edges.len())?;
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Parses a whitespace-separated edge list. Lines starting with `#` and blank
/// lines are skipped; `n` is one more than the largest id seen. Ids are never
/// compacted, so gaps become isolated vertices.
pub fn parse_edge_list<R: Read>(input: R) -> Result<Graph> {
    let reader = BufReader::new(input);
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let mut next_id = |what: &str| -> Result<usize> {
            let tok = fields.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("missing {what} vertex"),
            })?;
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex id {tok:?}"),
            })
        };
        let u = next_id("first")?;
        let v = next_id("second")?;
        if let Some(extra) = fields.next() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("unexpected trailing field {extra:?}"),
            });
        }
        if u == v {
            return Err(Error::SelfLoop {
                line: lineno,
                vertex: u,
            });
        }
        let e = (u.min(v), u.max(v));
        if !seen.insert(e) {
            return Err(Error::DuplicateEdge { line: lineno, u, v });
        }
        max_id = Some(max_id.map_or(e.1, |m| m.max(e.1)));
        edges.push(e);
    }
    let n = max_id.map_or(0, |m| m + 1);
    Ok(Graph::from_canonical(n, edges))
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Graph> {
        parse_edge_list(s.as_bytes())
    }

    #[test]
    fn parses_simple_path() {
        let g = parse("0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.total_volume(), 4);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let g = parse("# header\n\n0 1\n  # indented comment\n2\t1\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_self_loop() {
        assert!(matches!(
            parse("0 0"),
            Err(Error::SelfLoop { line: 1, vertex: 0 })
        ));
    }

    #[test]
    fn rejects_duplicate_in_either_orientation() {
        assert!(matches!(
            parse("0 1\n1 0"),
            Err(Error::DuplicateEdge { line: 2, .. })
        ));
    }

    #[test]
    fn reports_parse_error_line() {
        match parse("0 1\n# c\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("-1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("4"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn sparse_ids_are_not_compacted() {
        let g = parse("0 3").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.isolated_vertex(), Some(1));
        assert!(g.require_positive_degrees().is_err());
    }

    #[test]
    fn closed_form_families() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.edge_count(), 6);
        assert!(k4.degrees().iter().all(|&d| d == 3));
        let c5 = Graph::cycle(5);
        assert_eq!(c5.edge_count(), 5);
        let p = Graph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.degrees().iter().all(|&d| d == 3));
        assert!(p.is_connected());
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = Graph::complete(4);
        let (h, map) = k4.induced_subgraph(&[2, 0, 1]).unwrap();
        assert_eq!(h, Graph::complete(3));
        assert_eq!(map, vec![0, 1, 2]);

        let (h, map) = Graph::path(3).induced_subgraph(&[0, 2]).unwrap();
        assert_eq!(h.n(), 2);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(map, vec![0, 2]);

        let bridged =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
                .unwrap();
        let (h, map) = bridged.induced_subgraph(&[3, 4, 5]).unwrap();
        assert_eq!(h, Graph::complete(3));
        assert_eq!(map, vec![3, 4, 5]);

        assert!(matches!(k4.induced_subgraph(&[]), Err(Error::EmptySubset)));
        assert!(k4.induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let (count, labels) = g.components();
        assert_eq!(count, 2);
        assert_eq!(labels, vec![0, 0, 0, 1, 1, 1]);
        assert!(!g.is_connected());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::petersen();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        assert_eq!(parse_edge_list(buf.as_slice()).unwrap(), g);
    }
}
