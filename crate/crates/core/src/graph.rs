//! Simple undirected vertex-colored graphs on dense vertex ids `0..n`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Color = u64;

/// Sorted list of distinct vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut vs: Vec<usize>) -> Self {
        vs.sort_unstable();
        vs.dedup();
        VertexSet(vs)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
    colors: Vec<Color>,
}

impl ColoredGraph {
    pub fn empty(n: usize) -> Self {
        ColoredGraph {
            n,
            adj: vec![Vec::new(); n],
            matrix: vec![false; n * n],
            colors: vec![0; n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = ColoredGraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_colors(mut self, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != self.n {
            return Err(Error::UnknownVertex(colors.len().max(self.n)));
        }
        self.colors = colors;
        Ok(self)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::UnknownVertex(u));
        }
        if v >= self.n {
            return Err(Error::UnknownVertex(v));
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.matrix[u * self.n + v] = true;
        self.matrix[v * self.n + u] = true;
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        Ok(())
    }

    pub fn set_color(&mut self, v: usize, c: Color) -> Result<()> {
        if v >= self.n {
            return Err(Error::UnknownVertex(v));
        }
        self.colors[v] = c;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|a| a.len() + 1 == self.n)
    }

    pub fn complement(&self) -> ColoredGraph {
        let mut g = ColoredGraph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).expect("complement edges are simple");
                }
            }
        }
        g.colors = self.colors.clone();
        g
    }

    /// Induced subgraph on `s`; vertex `i` of the result is `map[i]` in `self`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(ColoredGraph, Vec<usize>)> {
        if let Some(&bad) = s.as_slice().iter().find(|&&v| v >= self.n) {
            return Err(Error::UnknownVertex(bad));
        }
        let map: Vec<usize> = s.as_slice().to_vec();
        let mut inv = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let mut g = ColoredGraph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            g.colors[i] = self.colors[v];
            for &w in &self.adj[v] {
                let j = inv[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j).expect("induced edges are simple");
                }
            }
        }
        Ok((g, map))
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                        comp.push(w);
                    }
                }
            }
            out.push(VertexSet::new(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// The image of `self` under the vertex map `v -> perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> ColoredGraph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut g = ColoredGraph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permutation is a bijection");
        }
        for v in 0..self.n {
            g.colors[perm[v]] = self.colors[v];
        }
        g
    }

    /// Disjoint union with `other`, whose vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &ColoredGraph) -> ColoredGraph {
        let off = self.n;
        let mut g = ColoredGraph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("simple");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off).expect("simple");
        }
        g.colors[..off].copy_from_slice(&self.colors);
        g.colors[off..].copy_from_slice(&other.colors);
        g
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<ColoredGraph> {
    match format {
        Format::EdgeList => parse_edgelist(text),
        Format::Graph6 => parse_graph6(text),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))
}

fn parse_edgelist(text: &str) -> Result<ColoredGraph> {
    let mut graph: Option<ColoredGraph> = None;
    let mut expected_edges = 0usize;
    let mut seen_edges = 0usize;
    let mut colored = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let Some(g) = graph.as_mut() else {
            if toks.len() != 2 {
                return Err(Error::parse(line_no, "expected header `n m`"));
            }
            let n = parse_usize(toks[0], line_no, "vertex count")?;
            expected_edges = parse_usize(toks[1], line_no, "edge count")?;
            graph = Some(ColoredGraph::empty(n));
            continue;
        };
        if toks[0] == "c" {
            if toks.len() != 3 {
                return Err(Error::parse(line_no, "expected `c v k`"));
            }
            let v = parse_usize(toks[1], line_no, "vertex")?;
            let k = toks[2]
                .parse::<Color>()
                .map_err(|_| Error::parse(line_no, format!("invalid color `{}`", toks[2])))?;
            if v >= g.n() {
                return Err(Error::parse(line_no, format!("vertex {v} out of range")));
            }
            if !colored.insert(v) {
                return Err(Error::parse(line_no, format!("vertex {v} colored twice")));
            }
            g.colors[v] = k;
            continue;
        }
        if toks.len() != 2 {
            return Err(Error::parse(line_no, "expected edge `u v`"));
        }
        let u = parse_usize(toks[0], line_no, "vertex")?;
        let v = parse_usize(toks[1], line_no, "vertex")?;
        if u >= g.n() || v >= g.n() {
            return Err(Error::parse(
                line_no,
                format!("edge {{{u}, {v}}} out of range"),
            ));
        }
        seen_edges += 1;
        if seen_edges > expected_edges {
            return Err(Error::parse(
                line_no,
                format!("more than the declared {expected_edges} edges"),
            ));
        }
        g.add_edge(u, v)?;
    }

    let g = graph.ok_or_else(|| Error::parse(1, "missing header `n m`"))?;
    if seen_edges != expected_edges {
        return Err(Error::parse(
            text.lines().count().max(1),
            format!("declared {expected_edges} edges, found {seen_edges}"),
        ));
    }
    Ok(g)
}

fn parse_graph6(text: &str) -> Result<ColoredGraph> {
    let (line_no, line) = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::parse(1, "empty graph6 input"))?;
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::parse(line_no, format!("invalid graph6 byte {b}")));
    }
    let sextet = |i: usize| -> Result<usize> {
        bytes
            .get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| Error::parse(line_no, "truncated graph6 header"))
    };
    let (n, mut pos) = if bytes.first() != Some(&126) {
        (sextet(0)?, 1)
    } else if bytes.get(1) != Some(&126) {
        ((sextet(1)? << 12) | (sextet(2)? << 6) | sextet(3)?, 4)
    } else {
        let mut n = 0;
        for i in 2..8 {
            n = (n << 6) | sextet(i)?;
        }
        (n, 8)
    };

    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if bytes.len() - pos != bytes_needed {
        return Err(Error::parse(
            line_no,
            format!(
                "graph6 body has {} bytes, expected {bytes_needed}",
                bytes.len() - pos
            ),
        ));
    }
    let mut g = ColoredGraph::empty(n);
    let mut k = 0;
    let mut cur = 0;
    let mut left = 0;
    for j in 1..n {
        for i in 0..j {
            if left == 0 {
                cur = bytes[pos] - 63;
                pos += 1;
                left = 6;
            }
            left -= 1;
            if (cur >> left) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    debug_assert_eq!(k, bits_needed);
    Ok(g)
}

pub fn render_edgelist(g: &ColoredGraph) -> String {
    let mut s = String::new();
    let edges = g.edges();
    writeln!(s, "{} {}", g.n(), edges.len()).unwrap();
    for (u, v) in edges {
        writeln!(s, "{u} {v}").unwrap();
    }
    for v in 0..g.n() {
        if g.color(v) != 0 {
            writeln!(s, "c {v} {}", g.color(v)).unwrap();
        }
    }
    s
}

/// graph6 encoding; vertex colors are dropped.
pub fn render_graph6(g: &ColoredGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut cur = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            cur = (cur << 1) | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(cur + 63);
                cur = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((cur << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Common named graphs used across tests and examples.
pub mod named {
    use super::ColoredGraph;

    pub fn path(n: usize) -> ColoredGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        ColoredGraph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> ColoredGraph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        ColoredGraph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> ColoredGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        ColoredGraph::from_edges(n, &edges).unwrap()
    }

    pub fn star(leaves: usize) -> ColoredGraph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        ColoredGraph::from_edges(leaves + 1, &edges).unwrap()
    }

    /// K4 minus the edge {1, 3}; vertices 0 and 2 have degree 3.
    pub fn diamond() -> ColoredGraph {
        ColoredGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap()
    }

    /// Two triangles sharing vertex 2.
    pub fn bowtie() -> ColoredGraph {
        ColoredGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    /// Cycle on `1..=n` with hub 0 adjacent to every rim vertex.
    pub fn wheel(rim: usize) -> ColoredGraph {
        let mut edges: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
        for i in 1..=rim {
            edges.push((i, i % rim + 1));
        }
        ColoredGraph::from_edges(rim + 1, &edges).unwrap()
    }
}
