//! Indifference-graph (unit interval) representations.
//!
//! An [`IntervalAssignment`] gives every vertex an integer left endpoint
//! and a common integer interval length `L`; two vertices are adjacent in
//! the induced graph iff their endpoints differ by at most `L`. A
//! [`CubeRepresentation`] stacks one assignment per dimension; it
//! represents `G` exactly when the intersection of the induced graphs
//! equals `G`. All comparisons are exact integer arithmetic, so boundary
//! cases like `|f(u)-f(v)| = L` never depend on rounding.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;

use crate::graph::Graph;
use crate::{Error, Result};

/// A bijection on `{1..n}` with forward and inverse lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    forward: Vec<u32>, // forward[u-1] = pi(u)
    inverse: Vec<u32>, // inverse[p-1] = u with pi(u) = p
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        let forward: Vec<u32> = (1..=n as u32).collect();
        Permutation { inverse: forward.clone(), forward }
    }

    /// `values[u-1]` is the image of vertex `u`; must be a bijection.
    pub fn from_values(values: Vec<u32>) -> Result<Permutation> {
        let n = values.len();
        let mut inverse = vec![0u32; n];
        for (i, &p) in values.iter().enumerate() {
            if p < 1 || p as usize > n {
                return Err(Error::InvalidArgument(format!("value {p} out of range 1..{n}")));
            }
            if inverse[(p - 1) as usize] != 0 {
                return Err(Error::InvalidArgument(format!("value {p} repeated")));
            }
            inverse[(p - 1) as usize] = (i + 1) as u32;
        }
        Ok(Permutation { forward: values, inverse })
    }

    pub fn n(&self) -> usize {
        self.forward.len()
    }

    /// π(u).
    pub fn apply(&self, u: u32) -> u32 {
        self.forward[(u - 1) as usize]
    }

    /// The vertex mapped to position `p`.
    pub fn inverse_of(&self, p: u32) -> u32 {
        self.inverse[(p - 1) as usize]
    }

    /// Order-preserving relabeling of π restricted to `x`: the member
    /// with the smallest π value gets 1, the next gets 2, and so on.
    pub fn project(&self, x: &[u32]) -> Result<BTreeMap<u32, u32>> {
        if x.is_empty() {
            return Err(Error::InvalidArgument("projection onto empty set".into()));
        }
        let n = self.n() as u32;
        for &u in x {
            if u < 1 || u > n {
                return Err(Error::InvalidArgument(format!("vertex {u} out of range 1..{n}")));
            }
        }
        let mut members: Vec<u32> = x.to_vec();
        members.sort_unstable_by_key(|&u| self.apply(u));
        Ok(members
            .into_iter()
            .enumerate()
            .map(|(i, u)| (u, (i + 1) as u32))
            .collect())
    }
}

/// A two-coloring of the vertex set into sides A and B.
#[derive(Debug, Clone)]
pub struct Bipartition {
    in_a: Vec<bool>,
}

impl Bipartition {
    pub fn from_flags(in_a: Vec<bool>) -> Bipartition {
        Bipartition { in_a }
    }

    /// Side A given as a vertex list; everything else is B.
    pub fn from_a_set(n: usize, a: &[u32]) -> Result<Bipartition> {
        let mut in_a = vec![false; n];
        for &u in a {
            if u < 1 || u as usize > n {
                return Err(Error::InvalidArgument(format!("vertex {u} out of range 1..{n}")));
            }
            in_a[(u - 1) as usize] = true;
        }
        Ok(Bipartition { in_a })
    }

    pub fn n(&self) -> usize {
        self.in_a.len()
    }

    pub fn is_a(&self, u: u32) -> bool {
        self.in_a[(u - 1) as usize]
    }
}

/// One indifference graph: integer left endpoints plus a common length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalAssignment {
    n: usize,
    left: Vec<i64>,
    length: i64,
}

impl IntervalAssignment {
    pub fn new(left: Vec<i64>, length: i64) -> Result<IntervalAssignment> {
        if length <= 0 {
            return Err(Error::InvalidArgument(format!("interval length {length} must be positive")));
        }
        Ok(IntervalAssignment { n: left.len(), left, length })
    }

    /// Constant assignment; induces the complete graph.
    pub fn constant(n: usize, value: i64, length: i64) -> IntervalAssignment {
        IntervalAssignment { n, left: vec![value; n], length }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> i64 {
        self.length
    }

    pub fn left_of(&self, u: u32) -> i64 {
        self.left[(u - 1) as usize]
    }

    pub fn lefts(&self) -> &[i64] {
        &self.left
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        (self.left_of(u) - self.left_of(v)).abs() <= self.length
    }

    /// The intersection graph of the intervals.
    pub fn induced_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=self.n as u32 {
            for v in (u + 1)..=self.n as u32 {
                if self.adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, &edges).unwrap()
    }
}

/// The indifference supergraph M(G, π, A) with interval
/// length `length`. Endpoint rules, with B = V - A:
///
/// * `u ∈ B`:                    `f(u) = length + π(u)`
/// * `u ∈ A`, no B-neighbor:     `f(u) = 0`
/// * `u ∈ A`, some B-neighbor:   `f(u) = max{π(x) : x ∈ N(u) ∩ B}`
///
/// Any `length >= n` induces the same graph; the default choice is
/// `length = n`, larger hosts are used when embedding subgraph pieces.
pub fn construct_m(
    g: &Graph,
    pi: &Permutation,
    part: &Bipartition,
    length: i64,
) -> Result<IntervalAssignment> {
    let n = g.n();
    if pi.n() != n || part.n() != n {
        return Err(Error::SizeMismatch { left: n, right: pi.n().max(part.n()) });
    }
    if length < n as i64 {
        return Err(Error::InvalidArgument(format!(
            "interval length {length} is below the vertex count {n}"
        )));
    }
    let mut left = vec![0i64; n];
    for u in 1..=n as u32 {
        left[(u - 1) as usize] = if !part.is_a(u) {
            length + pi.apply(u) as i64
        } else {
            g.neighbors(u)
                .iter()
                .filter(|&&x| !part.is_a(x))
                .map(|&x| pi.apply(x) as i64)
                .max()
                .unwrap_or(0)
        };
    }
    Ok(IntervalAssignment { n, left, length })
}

/// An interval assignment restricted to a subset of a host vertex set;
/// `vertices[j]` carries left endpoint `left[j]`.
#[derive(Debug, Clone)]
pub struct PartialAssignment {
    pub vertices: Vec<u32>,
    pub left: Vec<i64>,
    pub length: i64,
}

/// Glues partial assignments on pairwise disjoint vertex sets into one
/// assignment covering the host set `{1..host_n}`.
pub fn union_assignments(host_n: usize, parts: &[PartialAssignment]) -> Result<IntervalAssignment> {
    let length = match parts.first() {
        Some(p) => p.length,
        None => return Err(Error::InvalidArgument("union of zero parts".into())),
    };
    let mut left = vec![0i64; host_n];
    let mut seen = vec![false; host_n];
    for part in parts {
        if part.length != length {
            return Err(Error::InvalidArgument(format!(
                "mismatched interval lengths {} and {}",
                length, part.length
            )));
        }
        if part.vertices.len() != part.left.len() {
            return Err(Error::InvalidArgument("vertex/endpoint arity mismatch".into()));
        }
        for (&v, &f) in part.vertices.iter().zip(&part.left) {
            if v < 1 || v as usize > host_n {
                return Err(Error::InvalidArgument(format!("vertex {v} outside host set")));
            }
            let i = (v - 1) as usize;
            if seen[i] {
                return Err(Error::InvalidArgument(format!("vertex {v} covered twice")));
            }
            seen[i] = true;
            left[i] = f;
        }
    }
    if let Some(i) = seen.iter().position(|&s| !s) {
        return Err(Error::InvalidArgument(format!("vertex {} not covered", i + 1)));
    }
    Ok(IntervalAssignment { n: host_n, left, length })
}

/// One assignment per dimension, all over the same vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeRepresentation {
    n: usize,
    dims: Vec<IntervalAssignment>,
}

impl CubeRepresentation {
    pub fn empty(n: usize) -> CubeRepresentation {
        CubeRepresentation { n, dims: Vec::new() }
    }

    pub fn from_dims(n: usize, dims: Vec<IntervalAssignment>) -> Result<CubeRepresentation> {
        for d in &dims {
            if d.n() != n {
                return Err(Error::SizeMismatch { left: n, right: d.n() });
            }
        }
        Ok(CubeRepresentation { n, dims })
    }

    pub fn push(&mut self, dim: IntervalAssignment) -> Result<()> {
        if dim.n() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: dim.n() });
        }
        self.dims.push(dim);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[IntervalAssignment] {
        &self.dims
    }

    /// Intersection of the induced graphs of all dimensions. For an
    /// empty representation this is the complete graph.
    pub fn intersection_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 1..=self.n as u32 {
            for v in (u + 1)..=self.n as u32 {
                if self.dims.iter().all(|d| d.adjacent(u, v)) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, &edges).unwrap()
    }

    /// Text format: header `n k`, a line of k lengths, then one line per
    /// vertex with its k left endpoints. A 0-dimension representation is
    /// just the header.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.k());
        if self.k() == 0 {
            return out;
        }
        let lengths: Vec<String> = self.dims.iter().map(|d| d.length.to_string()).collect();
        let _ = writeln!(out, "{}", lengths.join(" "));
        for u in 1..=self.n as u32 {
            let row: Vec<String> = self.dims.iter().map(|d| d.left_of(u).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<CubeRepresentation> {
        let mut data = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = data
            .next()
            .ok_or(Error::Parse { line: 1, msg: "missing header line".into() })?;
        let mut it = header.split_whitespace();
        let n: usize = crate::graph::parse_field(it.next(), hline, "n")?;
        let k: usize = crate::graph::parse_field(it.next(), hline, "k")?;
        if k == 0 {
            return Ok(CubeRepresentation::empty(n));
        }
        let (lline, ltext) = data
            .next()
            .ok_or(Error::Parse { line: hline, msg: "missing length line".into() })?;
        let lengths = parse_row::<i64>(ltext, lline, k, "length")?;
        let mut lefts: Vec<Vec<i64>> = vec![Vec::with_capacity(n); k];
        for _ in 0..n {
            let (line, text) = data.next().ok_or(Error::Parse {
                line: lline,
                msg: format!("expected {n} endpoint lines"),
            })?;
            let row = parse_row::<i64>(text, line, k, "endpoint")?;
            for (d, value) in row.into_iter().enumerate() {
                lefts[d].push(value);
            }
        }
        if let Some((line, _)) = data.next() {
            return Err(Error::Parse { line, msg: "unexpected data after last vertex".into() });
        }
        let dims = lefts
            .into_iter()
            .zip(lengths)
            .map(|(left, length)| IntervalAssignment::new(left, length))
            .collect::<Result<Vec<_>>>()?;
        CubeRepresentation::from_dims(n, dims)
    }

    /// Exact unit-cube coordinates: per vertex, per dimension, the left
    /// endpoint divided by that dimension's length.
    pub fn unit_coordinates(&self) -> Vec<Vec<Ratio<i64>>> {
        (1..=self.n as u32)
            .map(|u| self.dims.iter().map(|d| Ratio::new(d.left_of(u), d.length)).collect())
            .collect()
    }

    /// Unit-scaled export: same layout as [`to_text`](Self::to_text) with
    /// every value written `p/q` in lowest terms (lengths become `1/1`).
    pub fn to_unit_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.k());
        if self.k() == 0 {
            return out;
        }
        let lengths: Vec<String> = self.dims.iter().map(|_| "1/1".to_string()).collect();
        let _ = writeln!(out, "{}", lengths.join(" "));
        for row in self.unit_coordinates() {
            let row: Vec<String> =
                row.iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

fn parse_row<T: std::str::FromStr>(
    text: &str,
    line: usize,
    expect: usize,
    what: &str,
) -> Result<Vec<T>> {
    let row: Vec<T> = text
        .split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid {what} value '{tok}'"),
            })
        })
        .collect::<Result<Vec<T>>>()?;
    if row.len() != expect {
        return Err(Error::Parse {
            line,
            msg: format!("expected {expect} {what} values, found {}", row.len()),
        });
    }
    Ok(row)
}

/// A discrepancy between a graph and a candidate representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Edge of `g` absent from dimension `dim` (1-based).
    Missing { u: u32, v: u32, dim: usize },
    /// Non-edge of `g` adjacent in every dimension.
    Extra { u: u32, v: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Exact check that the intersection of the representation's dimensions
/// equals `g`. Runs pairwise in O(k n^2) with early exit per pair; an
/// empty representation is valid exactly for complete graphs.
pub fn verify_representation(g: &Graph, rep: &CubeRepresentation) -> Result<Verdict> {
    if g.n() != rep.n() {
        return Err(Error::SizeMismatch { left: g.n(), right: rep.n() });
    }
    let mut violations = Vec::new();
    for u in 1..=g.n() as u32 {
        for v in (u + 1)..=g.n() as u32 {
            if g.has_edge(u, v) {
                if let Some(dim) = rep.dims().iter().position(|d| !d.adjacent(u, v)) {
                    violations.push(Violation::Missing { u, v, dim: dim + 1 });
                }
            } else if rep.dims().iter().all(|d| d.adjacent(u, v)) {
                violations.push(Violation::Extra { u, v });
            }
        }
    }
    if violations.is_empty() {
        Ok(Verdict::Valid)
    } else {
        violations.sort();
        Ok(Verdict::Invalid(violations))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn project_examples() {
        let id = Permutation::identity(5);
        let proj = id.project(&[2, 4]).unwrap();
        assert_eq!(proj[&2], 1);
        assert_eq!(proj[&4], 2);

        let pi = Permutation::from_values(vec![2, 5, 3, 1, 4]).unwrap();
        let proj = pi.project(&[2, 4, 5]).unwrap();
        assert_eq!(proj[&4], 1);
        assert_eq!(proj[&5], 2);
        assert_eq!(proj[&2], 3);

        let full = pi.project(&[1, 2, 3, 4, 5]).unwrap();
        for u in 1..=5u32 {
            assert_eq!(full[&u], pi.apply(u));
        }

        assert!(id.project(&[]).is_err());
        assert!(id.project(&[9]).is_err());
    }

    #[test]
    fn construct_m_p3_example() {
        let p3 = gen::path(3);
        let pi = Permutation::identity(3);
        let part = Bipartition::from_a_set(3, &[1, 3]).unwrap();
        let ia = construct_m(&p3, &pi, &part, 3).unwrap();
        assert_eq!(ia.lefts(), &[2, 5, 2]);
        assert_eq!(ia.induced_graph().edges(), vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn construct_m_degenerate_sides() {
        let g = gen::path(4);
        let pi = Permutation::identity(4);

        let all_a = Bipartition::from_a_set(4, &[1, 2, 3, 4]).unwrap();
        let ia = construct_m(&g, &pi, &all_a, 4).unwrap();
        assert_eq!(ia.lefts(), &[0, 0, 0, 0]);
        assert!(ia.induced_graph().is_complete());

        let all_b = Bipartition::from_a_set(4, &[]).unwrap();
        let ia = construct_m(&g, &pi, &all_b, 4).unwrap();
        assert_eq!(ia.lefts(), &[5, 6, 7, 8]);
        assert!(ia.induced_graph().is_complete());
    }

    #[test]
    fn construct_m_rejects_short_length() {
        let g = gen::path(4);
        let pi = Permutation::identity(4);
        let part = Bipartition::from_a_set(4, &[1]).unwrap();
        assert!(construct_m(&g, &pi, &part, 3).is_err());
    }

    #[test]
    fn length_parameter_does_not_change_induced_graph() {
        let g = gen::cycle(6);
        let pi = Permutation::from_values(vec![3, 1, 6, 2, 5, 4]).unwrap();
        let part = Bipartition::from_a_set(6, &[1, 4, 5]).unwrap();
        let with_n = construct_m(&g, &pi, &part, 6).unwrap();
        let with_big = construct_m(&g, &pi, &part, 100).unwrap();
        assert_eq!(with_n.induced_graph().edges(), with_big.induced_graph().edges());
    }

    #[test]
    fn induced_graph_extremes() {
        let complete = IntervalAssignment::new(vec![0, 0, 0], 5).unwrap();
        assert!(complete.induced_graph().is_complete());
        let spread = IntervalAssignment::new(vec![0, 6, 12], 5).unwrap();
        assert_eq!(spread.induced_graph().m(), 0);
    }

    #[test]
    fn union_examples() {
        let whole = PartialAssignment { vertices: vec![1, 2, 3], left: vec![0, 1, 7], length: 5 };
        let ia = union_assignments(3, &[whole]).unwrap();
        assert_eq!(ia.lefts(), &[0, 1, 7]);

        let a = PartialAssignment { vertices: vec![1, 2], left: vec![0, 1], length: 5 };
        let b = PartialAssignment { vertices: vec![3], left: vec![7], length: 5 };
        let ia = union_assignments(3, &[a.clone(), b]).unwrap();
        assert_eq!(ia.lefts(), &[0, 1, 7]);

        let overlap = PartialAssignment { vertices: vec![2, 3], left: vec![4, 7], length: 5 };
        assert!(union_assignments(3, &[a.clone(), overlap]).is_err());
        let short = PartialAssignment { vertices: vec![3], left: vec![7], length: 4 };
        assert!(union_assignments(3, &[a.clone(), short]).is_err());
        assert!(union_assignments(4, &[a]).is_err()); // vertex 3,4 uncovered
    }

    #[test]
    fn verify_examples() {
        let k4 = gen::complete(4);
        assert!(verify_representation(&k4, &CubeRepresentation::empty(4)).unwrap().is_valid());

        let p3 = gen::path(3);
        let good = CubeRepresentation::from_dims(
            3,
            vec![IntervalAssignment::new(vec![0, 1, 2], 1).unwrap()],
        )
        .unwrap();
        assert!(verify_representation(&p3, &good).unwrap().is_valid());

        let flat = CubeRepresentation::from_dims(
            3,
            vec![IntervalAssignment::new(vec![0, 0, 0], 1).unwrap()],
        )
        .unwrap();
        match verify_representation(&p3, &flat).unwrap() {
            Verdict::Invalid(v) => assert_eq!(v, vec![Violation::Extra { u: 1, v: 3 }]),
            Verdict::Valid => panic!("flat representation should be invalid"),
        }

        // non-complete graph with empty representation is invalid
        assert!(!verify_representation(&p3, &CubeRepresentation::empty(3)).unwrap().is_valid());

        assert!(verify_representation(&p3, &CubeRepresentation::empty(4)).is_err());
    }

    #[test]
    fn verify_reports_missing_with_dimension() {
        let p3 = gen::path(3);
        let rep = CubeRepresentation::from_dims(
            3,
            vec![IntervalAssignment::new(vec![0, 5, 10], 1).unwrap()],
        )
        .unwrap();
        match verify_representation(&p3, &rep).unwrap() {
            Verdict::Invalid(v) => {
                assert!(v.contains(&Violation::Missing { u: 1, v: 2, dim: 1 }));
                assert!(v.contains(&Violation::Missing { u: 2, v: 3, dim: 1 }));
            }
            Verdict::Valid => panic!("should be invalid"),
        }
    }

    #[test]
    fn unit_scaling() {
        let rep = CubeRepresentation::from_dims(
            3,
            vec![IntervalAssignment::new(vec![0, 3, 6], 3).unwrap()],
        )
        .unwrap();
        let coords = rep.unit_coordinates();
        assert_eq!(coords[0][0], Ratio::new(0, 1));
        assert_eq!(coords[1][0], Ratio::new(1, 1));
        assert_eq!(coords[2][0], Ratio::new(2, 1));
        let text = rep.to_unit_text();
        assert_eq!(text, "3 1\n1/1\n0/1\n1/1\n2/1\n");
    }

    #[test]
    fn representation_round_trip() {
        let rep = CubeRepresentation::from_dims(
            3,
            vec![
                IntervalAssignment::new(vec![0, 1, 2], 1).unwrap(),
                IntervalAssignment::new(vec![4, 0, 2], 3).unwrap(),
            ],
        )
        .unwrap();
        let text = rep.to_text();
        assert_eq!(CubeRepresentation::parse(&text).unwrap(), rep);

        let empty = CubeRepresentation::empty(5);
        assert_eq!(CubeRepresentation::parse(&empty.to_text()).unwrap(), empty);
    }
}
