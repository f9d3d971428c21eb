//! Recognition of forests, block graphs and outerplanar graphs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blocks::biconnected_components;
use crate::error::{Error, Result};
use crate::graph::ColoredGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphClass {
    Forest,
    Outerplanar,
    BlockGraph,
    Unsupported,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Forest => "Forest",
            GraphClass::Outerplanar => "Outerplanar",
            GraphClass::BlockGraph => "BlockGraph",
            GraphClass::Unsupported => "Unsupported",
        })
    }
}

/// The Hamiltonian cycle of a biconnected outerplanar block and its chords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStructure {
    pub cycle: Vec<usize>,
    pub chords: Vec<(usize, usize)>,
}

fn disconnected_without(b: &ColoredGraph, x: usize, y: usize) -> bool {
    let n = b.n();
    let Some(start) = (0..n).find(|&v| v != x && v != y) else {
        return false;
    };
    let mut seen = vec![false; n];
    seen[x] = true;
    seen[y] = true;
    seen[start] = true;
    let mut stack = vec![start];
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in b.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached < n - 2
}

fn is_biconnected(b: &ColoredGraph) -> bool {
    b.n() >= 3 && b.is_connected() && biconnected_components(b).len() == 1
}

/// Splits the edges of a biconnected block into outer edges and chords: an
/// edge is a chord exactly when its endpoints separate the block.
pub fn classify_edges(b: &ColoredGraph) -> Result<(Vec<(usize, usize)>, Vec<(usize, usize)>)> {
    if !is_biconnected(b) {
        return Err(Error::NotBiconnected);
    }
    Ok(b.edges()
        .into_iter()
        .partition(|&(u, v)| !disconnected_without(b, u, v)))
}

pub fn hamiltonian_cycle(b: &ColoredGraph) -> Result<CycleStructure> {
    let (outer, chords) = classify_edges(b)?;
    let n = b.n();
    let mut nbrs = vec![Vec::with_capacity(2); n];
    for &(u, v) in &outer {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    if outer.len() != n || nbrs.iter().any(|a| a.len() != 2) {
        return Err(Error::NotOuterplanarBlock);
    }
    let first = nbrs[0][0].min(nbrs[0][1]);
    let mut cycle = vec![0, first];
    while cycle.len() < n {
        let (prev, cur) = (cycle[cycle.len() - 2], cycle[cycle.len() - 1]);
        let next = if nbrs[cur][0] == prev {
            nbrs[cur][1]
        } else {
            nbrs[cur][0]
        };
        if next == 0 {
            return Err(Error::NotOuterplanarBlock);
        }
        cycle.push(next);
    }
    let last = cycle[n - 1];
    if !nbrs[last].contains(&0) {
        return Err(Error::NotOuterplanarBlock);
    }
    Ok(CycleStructure { cycle, chords })
}

pub(crate) fn block_is_outerplanar(b: &ColoredGraph) -> bool {
    b.n() <= 2 || hamiltonian_cycle(b).is_ok()
}

pub fn classify(g: &ColoredGraph) -> GraphClass {
    let comps = g.connected_components().len();
    if g.edge_count() + comps == g.n() {
        return GraphClass::Forest;
    }
    let blocks = biconnected_components(g);
    let subgraphs: Vec<ColoredGraph> = blocks
        .iter()
        .map(|b| g.induced_subgraph(b).expect("block vertices exist").0)
        .collect();
    if subgraphs.iter().all(ColoredGraph::is_complete) {
        return GraphClass::BlockGraph;
    }
    if subgraphs.iter().all(block_is_outerplanar) {
        return GraphClass::Outerplanar;
    }
    GraphClass::Unsupported
}

/// Whether every block is complete or outerplanar, i.e. the recursion can be
/// run even when the graph as a whole is not in one supported class.
pub fn blocks_handled(g: &ColoredGraph) -> bool {
    biconnected_components(g).iter().all(|b| {
        let sub = g.induced_subgraph(b).expect("block vertices exist").0;
        sub.is_complete() || block_is_outerplanar(&sub)
    })
}
