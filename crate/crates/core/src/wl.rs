//! Two-dimensional Weisfeiler–Leman refinement on ordered vertex pairs.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::graph::{ColoredGraph, VertexSet};

/// Coloring of all ordered pairs `(x, y)`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairColoring {
    n: usize,
    color: Vec<u32>,
    classes: usize,
    round: usize,
}

impl PairColoring {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.color[x * self.n + y]
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn matrix(&self) -> Vec<Vec<u32>> {
        self.color.chunks(self.n.max(1)).map(<[u32]>::to_vec).collect()
    }

    /// Partition of the vertices by diagonal color, blocks sorted by least member.
    pub fn vertex_classes(&self) -> Vec<VertexSet> {
        let mut by_color: HashMap<u32, Vec<usize>> = HashMap::new();
        for v in 0..self.n {
            by_color.entry(self.get(v, v)).or_default().push(v);
        }
        let mut out: Vec<VertexSet> = by_color.into_values().map(VertexSet::new).collect();
        out.sort();
        out
    }

    fn from_keys<K: std::hash::Hash + Eq>(n: usize, keys: Vec<K>, round: usize) -> Self {
        let mut ids: HashMap<K, u32> = HashMap::with_capacity(keys.len());
        let mut color = Vec::with_capacity(keys.len());
        for k in keys {
            let next = ids.len() as u32;
            color.push(*ids.entry(k).or_insert(next));
        }
        PairColoring {
            n,
            color,
            classes: ids.len(),
            round,
        }
    }
}

pub fn initial_coloring(g: &ColoredGraph) -> PairColoring {
    let n = g.n();
    let mut keys = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let kind = if x == y {
                0u8
            } else if g.has_edge(x, y) {
                1
            } else {
                2
            };
            keys.push((kind, g.color(x), g.color(y)));
        }
    }
    PairColoring::from_keys(n, keys, 0)
}

/// One refinement round: the new color of `(x, y)` is its old color together
/// with the multiset of `(c(x, z), c(z, y))` over all `z`.
pub fn refine(c: &PairColoring) -> PairColoring {
    let n = c.n;
    let keys: Vec<(u32, Vec<(u32, u32, u32)>)> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (x, y) = (idx / n, idx % n);
            let mut pairs: Vec<(u32, u32)> = (0..n).map(|z| (c.get(x, z), c.get(z, y))).collect();
            pairs.sort_unstable();
            let mut counted: Vec<(u32, u32, u32)> = Vec::new();
            for (a, b) in pairs {
                match counted.last_mut() {
                    Some(last) if last.0 == a && last.1 == b => last.2 += 1,
                    _ => counted.push((a, b, 1)),
                }
            }
            (c.get(x, y), counted)
        })
        .collect();
    PairColoring::from_keys(n, keys, c.round + 1)
}

pub fn stable_coloring(g: &ColoredGraph) -> PairColoring {
    let n = g.n();
    let mut c = initial_coloring(g);
    let cap = (n * n).max(1);
    loop {
        let next = refine(&c);
        if next.classes == c.classes {
            return c;
        }
        assert!(
            next.round <= cap,
            "WL refinement exceeded {cap} rounds; refinement must be strict"
        );
        c = next;
    }
}

pub fn same_wl_class(c: &PairColoring, p: (usize, usize), q: (usize, usize)) -> bool {
    c.get(p.0, p.1) == c.get(q.0, q.1)
}

/// Renders the class count followed by the color matrix as CSV.
pub fn render_csv(c: &PairColoring) -> String {
    let mut s = format!("{}\n", c.class_count());
    for row in c.matrix() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}
