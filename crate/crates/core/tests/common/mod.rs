//! Brute-force oracles shared by the integration tests. None of these use
//! the library's own search code; they only read graphs through the basic
//! accessors.

#![allow(dead_code)]

use qblock::blocks::RootedGraph;
use qblock::graph::{ColoredGraph, VertexSet};

/// Extends a partial vertex map one vertex at a time, checking colors,
/// degrees, adjacency with all earlier vertices, and injectivity.
struct Search<'a> {
    a: &'a ColoredGraph,
    b: &'a ColoredGraph,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(a: &'a ColoredGraph, b: &'a ColoredGraph) -> Self {
        Search {
            a,
            b,
            image: vec![usize::MAX; a.n()],
            used: vec![false; b.n()],
        }
    }

    fn fits(&self, v: usize, w: usize) -> bool {
        if self.used[w] || self.a.color(v) != self.b.color(w) || self.a.degree(v) != self.b.degree(w) {
            return false;
        }
        (0..v).all(|u| self.a.has_edge(u, v) == self.b.has_edge(self.image[u], w))
    }

    /// Number of complete maps extending the current one.
    fn count(&mut self, v: usize) -> u64 {
        if v == self.a.n() {
            return 1;
        }
        let mut total = 0;
        for w in 0..self.b.n() {
            if self.fits(v, w) {
                self.image[v] = w;
                self.used[w] = true;
                total += self.count(v + 1);
                self.used[w] = false;
            }
        }
        total
    }

    fn exists(&mut self, v: usize) -> bool {
        if v == self.a.n() {
            return true;
        }
        for w in 0..self.b.n() {
            if self.fits(v, w) {
                self.image[v] = w;
                self.used[w] = true;
                let found = self.exists(v + 1);
                self.used[w] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
}

/// `|Aut(g)|` for color-preserving automorphisms.
pub fn aut_count(g: &ColoredGraph) -> u64 {
    Search::new(g, g).count(0)
}

/// Whether a color-preserving isomorphism exists that maps root to root.
pub fn rooted_isomorphic(a: &RootedGraph, b: &RootedGraph) -> bool {
    if a.graph.n() != b.graph.n() || a.graph.edge_count() != b.graph.edge_count() {
        return false;
    }
    if a.root.is_some() != b.root.is_some() {
        return false;
    }
    let mut s = Search::new(&a.graph, &b.graph);
    match (a.root, b.root) {
        (Some(ra), Some(rb)) => {
            // Fix the root pair by checking it first: relabel so the root is 0.
            let pa = root_first(a.graph.n(), ra);
            let pb = root_first(b.graph.n(), rb);
            let ga = a.graph.permuted(&pa);
            let gb = b.graph.permuted(&pb);
            let mut s = Search::new(&ga, &gb);
            if !s.fits(0, 0) {
                return false;
            }
            s.image[0] = 0;
            s.used[0] = true;
            s.exists(1)
        }
        _ => s.exists(0),
    }
}

/// Permutation (old index to new index) moving `r` to 0 and keeping the
/// relative order of the others.
fn root_first(n: usize, r: usize) -> Vec<usize> {
    (0..n)
        .map(|v| match v.cmp(&r) {
            std::cmp::Ordering::Less => v + 1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => v,
        })
        .collect()
}

fn connected_within(g: &ColoredGraph, set: &[usize]) -> bool {
    let Some(&start) = set.first() else {
        return true;
    };
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if set.contains(&w) && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}

/// A vertex set induces a block when it is a single edge, or has at least
/// three vertices and stays connected after deleting any one of them.
fn is_nonseparable(g: &ColoredGraph, set: &[usize]) -> bool {
    match set.len() {
        0 | 1 => false,
        2 => g.has_edge(set[0], set[1]),
        _ => {
            connected_within(g, set)
                && set.iter().all(|&x| {
                    let rest: Vec<usize> = set.iter().copied().filter(|&y| y != x).collect();
                    connected_within(g, &rest)
                })
        }
    }
}

/// Biconnected components from the definition: maximal nonseparable vertex
/// subsets, found by trying every subset. Isolated vertices lie in no block.
pub fn blocks_by_definition(g: &ColoredGraph) -> Vec<VertexSet> {
    let n = g.n();
    assert!(n <= 16);
    let good: Vec<u32> = (1u32..1 << n)
        .filter(|&mask| {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            is_nonseparable(g, &set)
        })
        .collect();
    let mut out: Vec<VertexSet> = good
        .iter()
        .filter(|&&m| !good.iter().any(|&o| o != m && o & m == m))
        .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    out.sort();
    out
}
