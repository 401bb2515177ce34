//! Simple undirected graphs on the vertex set `{1..n}`.
//!
//! Adjacency is kept twice: sorted neighbor lists give `O(d(u))` scans for
//! the builders, a hash set of pairs gives `O(1)` expected adjacency tests
//! for verification. Graphs are immutable after construction.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::{Error, Result};

/// A simple, finite, undirected graph. Vertices are `1..=n`.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<u32>>,
    pair_set: HashSet<(u32, u32)>,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, duplicate
    /// edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut g = Graph {
            n,
            m: 0,
            adj: vec![Vec::new(); n],
            pair_set: HashSet::with_capacity(edges.len()),
        };
        for &(u, v) in edges {
            g.insert_edge(u, v, None)?;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: u32, v: u32, line: Option<usize>) -> Result<()> {
        let err = |msg: String| match line {
            Some(line) => Error::Parse { line, msg },
            None => Error::InvalidArgument(msg),
        };
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        let n = self.n as u32;
        if u < 1 || u > n || v < 1 || v > n {
            return Err(err(format!("vertex id out of range in edge {u} {v}")));
        }
        let key = (u.min(v), u.max(v));
        if !self.pair_set.insert(key) {
            return Err(err(format!("duplicate edge {} {}", key.0, key.1)));
        }
        self.adj[(u - 1) as usize].push(v);
        self.adj[(v - 1) as usize].push(u);
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, u: u32) -> usize {
        self.adj[(u - 1) as usize].len()
    }

    /// Neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: u32) -> &[u32] {
        &self.adj[(u - 1) as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.pair_set.contains(&(u.min(v), u.max(v)))
    }

    /// Maximum degree Δ; 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * (self.n.saturating_sub(1)) / 2
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<_> = self.pair_set.iter().copied().collect();
        out.sort_unstable();
        out
    }

    /// Edge-set intersection of two graphs on the same vertex set.
    pub fn intersect(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        let edges: Vec<_> = self
            .pair_set
            .iter()
            .copied()
            .filter(|&(u, v)| other.has_edge(u, v))
            .collect();
        Graph::from_edges(self.n, &edges)
    }

    /// True iff every edge of `g` is an edge of `self`.
    pub fn is_supergraph(&self, g: &Graph) -> Result<bool> {
        if self.n != g.n {
            return Err(Error::SizeMismatch { left: self.n, right: g.n });
        }
        Ok(g.pair_set.iter().all(|&(u, v)| self.has_edge(u, v)))
    }

    /// The unordered non-adjacent pairs of the graph.
    pub fn non_edges(&self) -> NonEdgeSet {
        let mut pairs = Vec::with_capacity(self.n * (self.n - 1) / 2 - self.m);
        for u in 1..=self.n as u32 {
            for v in (u + 1)..=self.n as u32 {
                if !self.has_edge(u, v) {
                    pairs.push((u, v));
                }
            }
        }
        NonEdgeSet { pairs }
    }

    /// Induced subgraph on `vertices`; new vertex `j+1` is `vertices[j]`.
    pub fn induced_subgraph(&self, vertices: &[u32]) -> Result<Graph> {
        let mut local = vec![0u32; self.n];
        for (j, &v) in vertices.iter().enumerate() {
            if v < 1 || v as usize > self.n {
                return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
            }
            if local[(v - 1) as usize] != 0 {
                return Err(Error::InvalidArgument(format!("vertex {v} listed twice")));
            }
            local[(v - 1) as usize] = (j + 1) as u32;
        }
        let mut edges = Vec::new();
        for &v in vertices {
            let lv = local[(v - 1) as usize];
            for &w in self.neighbors(v) {
                let lw = local[(w - 1) as usize];
                if lw != 0 && lv < lw {
                    edges.push((lv, lw));
                }
            }
        }
        Graph::from_edges(vertices.len(), &edges)
    }

    /// Parses the edge-list text format: '#' comment lines, a header
    /// line `n m`, then exactly `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut data = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = data
            .next()
            .ok_or(Error::Parse { line: 1, msg: "missing header line".into() })?;
        let mut it = header.split_whitespace();
        let n: usize = parse_field(it.next(), hline, "n")?;
        let m: usize = parse_field(it.next(), hline, "m")?;
        if it.next().is_some() {
            return Err(Error::Parse { line: hline, msg: "trailing tokens in header".into() });
        }

        let mut g = Graph {
            n,
            m: 0,
            adj: vec![Vec::new(); n],
            pair_set: HashSet::with_capacity(m),
        };
        for _ in 0..m {
            let (line, text) = data.next().ok_or(Error::Parse {
                line: hline,
                msg: format!("header declares {m} edges but input has fewer"),
            })?;
            let mut it = text.split_whitespace();
            let u: u32 = parse_field(it.next(), line, "u")?;
            let v: u32 = parse_field(it.next(), line, "v")?;
            if it.next().is_some() {
                return Err(Error::Parse { line, msg: "trailing tokens in edge line".into() });
            }
            g.insert_edge(u, v, Some(line))?;
        }
        if let Some((line, _)) = data.next() {
            return Err(Error::Parse { line, msg: "unexpected data after last edge".into() });
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Canonical edge-list text: header then edges sorted with `u < v`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

pub(crate) fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, name: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing field '{name}'"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid value '{tok}' for field '{name}'"),
    })
}

/// The set of unordered non-adjacent pairs of a reference graph.
#[derive(Debug, Clone)]
pub struct NonEdgeSet {
    pairs: Vec<(u32, u32)>,
}

impl NonEdgeSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn max_degree_examples() {
        let edgeless = Graph::from_edges(4, &[]).unwrap();
        assert_eq!(edgeless.max_degree(), 0);
        assert_eq!(gen::cycle(5).max_degree(), 2);
        assert_eq!(gen::star(7).max_degree(), 6);
    }

    #[test]
    fn intersect_examples() {
        let g = gen::path(4);
        let same = g.intersect(&g).unwrap();
        assert_eq!(same.edges(), g.edges());

        let k4 = gen::complete(4);
        assert_eq!(g.intersect(&k4).unwrap().edges(), g.edges());

        let p3 = gen::path(3);
        let other = Graph::from_edges(3, &[(2, 3), (1, 3)]).unwrap();
        assert_eq!(p3.intersect(&other).unwrap().edges(), vec![(2, 3)]);
    }

    #[test]
    fn intersect_size_mismatch() {
        let err = gen::path(3).intersect(&gen::path(4)).unwrap_err();
        assert!(matches!(err, Error::SizeMismatch { .. }));
    }

    #[test]
    fn supergraph_examples() {
        let p3 = gen::path(3);
        assert!(gen::complete(3).is_supergraph(&p3).unwrap());
        assert!(p3.is_supergraph(&p3).unwrap());
        let triangle = gen::cycle(3);
        assert!(!p3.is_supergraph(&triangle).unwrap());
        assert!(triangle.is_supergraph(&p3).unwrap());
    }

    #[test]
    fn non_edges_examples() {
        assert!(gen::complete(4).non_edges().is_empty());
        let empty3 = Graph::from_edges(3, &[]).unwrap();
        assert_eq!(empty3.non_edges().pairs(), &[(1, 2), (1, 3), (2, 3)]);
        assert_eq!(gen::path(4).non_edges().pairs(), &[(1, 3), (1, 4), (2, 4)]);
    }

    #[test]
    fn parse_basics() {
        let g = Graph::parse("3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(1, 2), (2, 3)]);

        let single = Graph::parse("1 0\n").unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.m(), 0);

        let commented = Graph::parse("# a path\n3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(commented.edges(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Graph::parse("3 2\n1 2\n1 2\n").unwrap_err() {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("duplicate"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        match Graph::parse("3 1\n1 5\n").unwrap_err() {
            Error::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("out of range"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(matches!(Graph::parse("2 1\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("x y\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn round_trip_is_canonical() {
        let text = "5 4\n3 2\n5 1\n4 5\n1 2\n";
        let g = Graph::parse(text).unwrap();
        let canon = g.to_text();
        assert_eq!(canon, "5 4\n1 2\n1 5\n2 3\n4 5\n");
        assert_eq!(Graph::parse(&canon).unwrap().to_text(), canon);
    }

    #[test]
    fn induced_subgraph_relabeling() {
        let p4 = gen::path(4);
        let h = p4.induced_subgraph(&[2, 3, 4]).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges(), vec![(1, 2), (2, 3)]);
    }
}
