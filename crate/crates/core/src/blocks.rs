//! Blocks, cut vertices and the block tree with leaf-peeling levels.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, VertexSet};

/// Iterative Hopcroft–Tarjan lowpoint search. Returns the blocks (as edge
/// lists) and the articulation flags.
fn lowpoint_search(g: &ColoredGraph) -> (Vec<Vec<(usize, usize)>>, Vec<bool>) {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*idx) {
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent == usize::MAX {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                if parent != root {
                    is_cut[parent] = true;
                }
                let mut block = Vec::new();
                while let Some(e) = edge_stack.pop() {
                    block.push(e);
                    if e == (parent, v) {
                        break;
                    }
                }
                blocks.push(block);
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (blocks, is_cut)
}

pub fn cut_vertices(g: &ColoredGraph) -> VertexSet {
    let (_, is_cut) = lowpoint_search(g);
    (0..g.n()).filter(|&v| is_cut[v]).collect()
}

/// Vertex sets of the blocks, ordered by least vertex then lexicographically.
/// Isolated vertices belong to no block.
pub fn biconnected_components(g: &ColoredGraph) -> Vec<VertexSet> {
    let (blocks, _) = lowpoint_search(g);
    let mut out: Vec<VertexSet> = blocks
        .into_iter()
        .map(|es| es.into_iter().flat_map(|(u, v)| [u, v]).collect())
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Block(usize),
    Cut(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    pub blocks: Vec<VertexSet>,
    pub cuts: VertexSet,
    /// `(block id, cut vertex)` incidences, sorted.
    pub tree_edges: Vec<(usize, usize)>,
    pub center: Node,
    block_level: Vec<usize>,
    cut_level: Vec<(usize, usize)>,
    block_parent: Vec<Option<usize>>,
    cut_parent: Vec<(usize, Option<usize>)>,
}

impl BlockTree {
    pub fn contains(&self, node: Node) -> bool {
        match node {
            Node::Block(b) => b < self.blocks.len(),
            Node::Cut(v) => self.cuts.contains(v),
        }
    }

    fn cut_index(&self, v: usize) -> Result<usize> {
        self.cuts
            .as_slice()
            .binary_search(&v)
            .map_err(|_| Error::UnknownNode)
    }

    pub fn level(&self, node: Node) -> Result<usize> {
        match node {
            Node::Block(b) => self.block_level.get(b).copied().ok_or(Error::UnknownNode),
            Node::Cut(v) => Ok(self.cut_level[self.cut_index(v)?].1),
        }
    }

    /// Neighbor toward the center; `None` for the center itself.
    pub fn parent(&self, node: Node) -> Result<Option<Node>> {
        match node {
            Node::Block(b) => self
                .block_parent
                .get(b)
                .map(|p| p.map(Node::Cut))
                .ok_or(Error::UnknownNode),
            Node::Cut(v) => Ok(self.cut_parent[self.cut_index(v)?].1.map(Node::Block)),
        }
    }

    pub fn children(&self, node: Node) -> Result<Vec<Node>> {
        if !self.contains(node) {
            return Err(Error::UnknownNode);
        }
        Ok(match node {
            Node::Block(b) => self
                .cut_parent
                .iter()
                .filter(|(_, p)| *p == Some(b))
                .map(|&(v, _)| Node::Cut(v))
                .collect(),
            Node::Cut(v) => (0..self.blocks.len())
                .filter(|&b| self.block_parent[b] == Some(v))
                .map(Node::Block)
                .collect(),
        })
    }

    pub fn nodes(&self) -> Vec<Node> {
        (0..self.blocks.len())
            .map(Node::Block)
            .chain(self.cuts.iter().map(Node::Cut))
            .collect()
    }

    /// All vertices in blocks of the subtree below `node`, `node` included.
    pub fn vertices_below(&self, node: Node) -> Result<VertexSet> {
        if !self.contains(node) {
            return Err(Error::UnknownNode);
        }
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            match x {
                Node::Block(b) => out.extend(self.blocks[b].iter()),
                Node::Cut(v) => out.push(v),
            }
            stack.extend(self.children(x)?);
        }
        Ok(VertexSet::new(out))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph blocktree {\n");
        for (b, vs) in self.blocks.iter().enumerate() {
            let label: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            let extra = if self.center == Node::Block(b) {
                ", peripheries=2"
            } else {
                ""
            };
            writeln!(
                s,
                "  b{b} [shape=box, label=\"{{{}}}\"{extra}];",
                label.join(",")
            )
            .unwrap();
        }
        for v in self.cuts.iter() {
            let extra = if self.center == Node::Cut(v) {
                ", peripheries=2"
            } else {
                ""
            };
            writeln!(s, "  c{v} [shape=circle, label=\"{v}\"{extra}];").unwrap();
        }
        for &(b, v) in &self.tree_edges {
            writeln!(s, "  b{b} -- c{v};").unwrap();
        }
        s.push_str("}\n");
        s
    }
}

pub fn block_tree(g: &ColoredGraph) -> Result<BlockTree> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let blocks = if g.n() == 1 {
        vec![VertexSet::new(vec![0])]
    } else {
        biconnected_components(g)
    };
    let cuts = cut_vertices(g);
    let nb = blocks.len();
    let cut_list = cuts.as_slice().to_vec();
    let node_count = nb + cut_list.len();

    // Node ids: blocks 0..nb, cut i at nb + i.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    let mut tree_edges = Vec::new();
    for (b, vs) in blocks.iter().enumerate() {
        for v in vs.iter() {
            if let Ok(i) = cut_list.binary_search(&v) {
                adj[b].push(nb + i);
                adj[nb + i].push(b);
                tree_edges.push((b, v));
            }
        }
    }
    tree_edges.sort_unstable();

    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; node_count];
    let mut level = vec![0usize; node_count];
    let mut frontier: Vec<usize> = (0..node_count).filter(|&x| degree[x] <= 1).collect();
    let mut remaining = node_count;
    let mut round = 0;
    let mut center = 0;
    while remaining > 0 {
        let mut next = Vec::new();
        for &x in &frontier {
            removed[x] = true;
            level[x] = round;
            center = x;
        }
        remaining -= frontier.len();
        for &x in &frontier {
            for &y in &adj[x] {
                if !removed[y] {
                    degree[y] -= 1;
                    if degree[y] == 1 || (degree[y] == 0 && remaining == 1) {
                        next.push(y);
                    }
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        if next.is_empty() && remaining > 0 {
            // Last survivor became isolated.
            next = (0..node_count).filter(|&x| !removed[x]).collect();
        }
        assert!(
            remaining == 0 || !next.is_empty(),
            "block tree peeling stalled"
        );
        if remaining == 0 {
            assert_eq!(frontier.len(), 1, "block tree center is not unique");
        }
        frontier = next;
        round += 1;
    }

    let mut parent = vec![usize::MAX; node_count];
    let mut seen = vec![false; node_count];
    let mut queue = VecDeque::from([center]);
    seen[center] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }

    let to_node = |x: usize| {
        if x < nb {
            Node::Block(x)
        } else {
            Node::Cut(cut_list[x - nb])
        }
    };
    let block_parent = (0..nb)
        .map(|b| (parent[b] != usize::MAX).then(|| cut_list[parent[b] - nb]))
        .collect();
    let cut_parent = (0..cut_list.len())
        .map(|i| {
            let p = parent[nb + i];
            (cut_list[i], (p != usize::MAX).then_some(p))
        })
        .collect();
    let cut_level = (0..cut_list.len())
        .map(|i| (cut_list[i], level[nb + i]))
        .collect();
    Ok(BlockTree {
        center: to_node(center),
        block_level: level[..nb].to_vec(),
        cut_level,
        block_parent,
        cut_parent,
        blocks,
        cuts,
        tree_edges,
    })
}

/// An induced subgraph with an optional distinguished (pinned) vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGraph {
    pub graph: ColoredGraph,
    pub root: Option<usize>,
}

impl RootedGraph {
    pub fn new(graph: ColoredGraph, root: Option<usize>) -> Result<Self> {
        if let Some(r) = root {
            if r >= graph.n() {
                return Err(Error::UnknownVertex(r));
            }
        }
        Ok(RootedGraph { graph, root })
    }

    pub fn unrooted(graph: ColoredGraph) -> Self {
        RootedGraph { graph, root: None }
    }
}

/// The subgraph `X^{≤node}` together with the map from its vertices back to `g`.
pub fn subgraph_below(
    g: &ColoredGraph,
    t: &BlockTree,
    node: Node,
) -> Result<(RootedGraph, Vec<usize>)> {
    let vs = t.vertices_below(node)?;
    let (sub, map) = g.induced_subgraph(&vs)?;
    let root = match node {
        Node::Cut(v) if node != t.center => map.binary_search(&v).ok(),
        _ => None,
    };
    Ok((RootedGraph { graph: sub, root }, map))
}
