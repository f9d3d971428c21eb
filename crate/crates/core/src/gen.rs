//! Graph families for sweeps and sampling: unlabeled trees, polygon
//! dissections, and random outerplanar / block / connected graphs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Color, ColoredGraph};

fn rooted_form(g: &ColoredGraph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_form(g, w, v))
        .collect();
    kids.sort_unstable();
    format!("({})", kids.concat())
}

fn tree_centers(g: &ColoredGraph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in g.neighbors(v) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

fn free_form(g: &ColoredGraph) -> String {
    tree_centers(g)
        .into_iter()
        .map(|c| rooted_form(g, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn with_leaf(g: &ColoredGraph, at: usize) -> ColoredGraph {
    let mut h = g.disjoint_union(&ColoredGraph::empty(1));
    h.add_edge(at, g.n()).expect("new leaf");
    h
}

/// All unlabeled trees on `n` vertices, one representative each.
pub fn free_trees(n: usize) -> Vec<ColoredGraph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![ColoredGraph::empty(1)];
    for _ in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let h = with_leaf(t, v);
                if seen.insert(free_form(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

/// All unlabeled rooted trees on `n` vertices as `(tree, root)`.
pub fn rooted_trees(n: usize) -> Vec<(ColoredGraph, usize)> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![(ColoredGraph::empty(1), 0)];
    for _ in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for (t, r) in &level {
            for v in 0..t.n() {
                let h = with_leaf(t, v);
                if seen.insert(rooted_form(&h, *r, usize::MAX)) {
                    next.push((h, *r));
                }
            }
        }
        level = next;
    }
    level
}

/// Every set of pairwise non-crossing diagonals of the convex `n`-gon with
/// vertices `0..n` in cyclic order.
pub fn polygon_dissections(n: usize) -> Vec<Vec<(usize, usize)>> {
    let diagonals: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 2..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == n - 1))
        .collect();
    let crosses = |(a, b): (usize, usize), (c, d): (usize, usize)| (a < c && c < b && b < d) || (c < a && a < d && d < b);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        idx: usize,
        diagonals: &[(usize, usize)],
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
        crosses: &dyn Fn((usize, usize), (usize, usize)) -> bool,
    ) {
        if idx == diagonals.len() {
            out.push(chosen.clone());
            return;
        }
        go(idx + 1, diagonals, chosen, out, crosses);
        let d = diagonals[idx];
        if chosen.iter().all(|&c| !crosses(c, d)) {
            chosen.push(d);
            go(idx + 1, diagonals, chosen, out, crosses);
            chosen.pop();
        }
    }
    go(0, &diagonals, &mut chosen, &mut out, &crosses);
    out
}

/// The `n`-cycle with the given chords.
pub fn polygon(n: usize, chords: &[(usize, usize)]) -> ColoredGraph {
    let mut g = crate::graph::named::cycle(n);
    for &(a, b) in chords {
        g.add_edge(a, b).expect("chords are diagonals");
    }
    g
}

fn random_chords<R: Rng>(rng: &mut R, poly: &[usize], out: &mut Vec<(usize, usize)>) {
    let k = poly.len();
    if k < 4 || rng.gen_bool(0.4) {
        return;
    }
    let i = rng.gen_range(0..k);
    let offset = rng.gen_range(2..=k - 2);
    let j = (i + offset) % k;
    out.push((poly[i], poly[j]));
    let (lo, hi) = (i.min(j), i.max(j));
    let inside: Vec<usize> = poly[lo..=hi].to_vec();
    let outside: Vec<usize> = poly[hi..].iter().chain(&poly[..=lo]).copied().collect();
    random_chords(rng, &inside, out);
    random_chords(rng, &outside, out);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Outerplanar,
    Complete,
}

/// A random connected graph on exactly `n` vertices built by gluing random
/// blocks of the given kind at random vertices, then relabeled uniformly.
/// Vertex colors are drawn from `0..colors` (all 0 when `colors <= 1`).
pub fn random_block_structure<R: Rng>(rng: &mut R, n: usize, kind: BlockKind, colors: Color) -> ColoredGraph {
    assert!(n >= 1);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut size = 1;
    while size < n {
        let at = rng.gen_range(0..size);
        let k = rng.gen_range(2..=(n - size + 1).min(8));
        let mut verts: Vec<usize> = vec![at];
        verts.extend(size..size + k - 1);
        size += k - 1;
        match kind {
            BlockKind::Complete => {
                for a in 0..k {
                    for b in a + 1..k {
                        edges.push((verts[a], verts[b]));
                    }
                }
            }
            BlockKind::Outerplanar => {
                verts.shuffle(rng);
                if k == 2 {
                    edges.push((verts[0], verts[1]));
                } else {
                    for a in 0..k {
                        edges.push((verts[a], verts[(a + 1) % k]));
                    }
                    let mut chords = Vec::new();
                    random_chords(rng, &verts, &mut chords);
                    edges.extend(chords);
                }
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = ColoredGraph::from_edges(n, &edges).expect("blocks share at most one vertex");
    if colors > 1 {
        let cs = (0..n).map(|_| rng.gen_range(0..colors)).collect();
        g = g.with_colors(cs).unwrap();
    }
    g.permuted(&perm)
}

/// A uniformly relabeled random tree plus each other pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> ColoredGraph {
    let mut g = ColoredGraph::empty(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v).unwrap();
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    g.permuted(&perm)
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}
