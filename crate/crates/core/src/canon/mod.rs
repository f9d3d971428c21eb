//! Canonical codes for rooted colored graphs whose blocks are complete or
//! outerplanar, plus classical automorphism groups.
//!
//! A code is built over the vertex/block incidence tree oriented away from
//! the root. Every encoded node is a tag byte followed by fixed-width
//! integers and length-prefixed sub-codes, so the byte string determines the
//! structure it came from.

pub mod group;
pub mod iso;

use std::collections::VecDeque;

pub use group::{automorphism_group, dihedral_automorphisms, ClassicalPermGroup, Perm, AUT_LIMIT};
pub use iso::{brute_force_isomorphism, ISO_LIMIT};

use crate::blocks::{biconnected_components, block_tree, Node, RootedGraph};
use crate::classrec::{hamiltonian_cycle, GraphClass};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonCode(Vec<u8>);

impl CanonCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub(crate) struct Enc(Vec<u8>);

impl Enc {
    pub(crate) fn new(tag: u8) -> Self {
        Enc(vec![tag])
    }

    pub(crate) fn int(&mut self, x: u64) -> &mut Self {
        self.0.extend_from_slice(&x.to_be_bytes());
        self
    }

    pub(crate) fn item(&mut self, bytes: &[u8]) -> &mut Self {
        let len = u32::try_from(bytes.len()).expect("code component below 4 GiB");
        self.0.extend_from_slice(&len.to_be_bytes());
        self.0.extend_from_slice(bytes);
        self
    }

    pub(crate) fn finish(&mut self) -> Vec<u8> {
        std::mem::take(&mut self.0)
    }
}

const PIN: &[u8] = b"P";

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Shape {
    Complete,
    /// Hamiltonian cycle and chords, in vertex ids of the whole graph.
    Outerplanar {
        cycle: Vec<usize>,
        chords: Vec<(usize, usize)>,
    },
    Other,
}

/// Blocks of a connected graph and their shapes.
pub(crate) struct Decomposition {
    pub blocks: Vec<VertexSet>,
    pub shapes: Vec<Shape>,
    pub vblocks: Vec<Vec<usize>>,
}

impl Decomposition {
    pub(crate) fn new(g: &ColoredGraph) -> Self {
        let blocks = if g.n() == 1 {
            vec![VertexSet::new(vec![0])]
        } else {
            biconnected_components(g)
        };
        let mut vblocks = vec![Vec::new(); g.n()];
        for (b, vs) in blocks.iter().enumerate() {
            for v in vs.iter() {
                vblocks[v].push(b);
            }
        }
        let shapes = blocks
            .iter()
            .map(|vs| {
                let (sub, map) = g.induced_subgraph(vs).expect("block vertices exist");
                if sub.is_complete() {
                    return Shape::Complete;
                }
                match hamiltonian_cycle(&sub) {
                    Ok(cs) => Shape::Outerplanar {
                        cycle: cs.cycle.iter().map(|&i| map[i]).collect(),
                        chords: cs.chords.iter().map(|&(a, b)| (map[a], map[b])).collect(),
                    },
                    Err(_) => Shape::Other,
                }
            })
            .collect();
        Decomposition {
            blocks,
            shapes,
            vblocks,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Root {
    Vertex(usize),
    Block(usize),
}

/// The incidence tree oriented away from a root, with codes for every
/// vertex (the subgraph hanging below it, rooted at it) and every block
/// (the subgraph below it, with its parent vertex pinned).
pub(crate) struct Oriented {
    pub bparent: Vec<Option<usize>>,
    pub vchildren: Vec<Vec<usize>>,
    pub vcode: Vec<Vec<u8>>,
    pub bcode: Vec<Vec<u8>>,
    /// Per block, the dense rank of each block vertex's label (same order
    /// as the block's vertex set). The parent vertex, if any, has its own rank.
    pub ranks: Vec<Vec<usize>>,
    /// For outerplanar blocks, the block vertices in a canonical traversal.
    pub canon_order: Vec<Option<Vec<usize>>>,
}

pub(crate) fn orient(g: &ColoredGraph, dec: &Decomposition, root: Root) -> Result<Oriented> {
    let n = g.n();
    let nb = dec.blocks.len();
    let mut vparent: Vec<Option<usize>> = vec![None; n];
    let mut bparent: Vec<Option<usize>> = vec![None; nb];
    let mut vchildren: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order: Vec<Root> = Vec::with_capacity(n + nb);
    let mut vseen = vec![false; n];
    let mut bseen = vec![false; nb];
    let mut queue = VecDeque::from([root]);
    match root {
        Root::Vertex(v) => vseen[v] = true,
        Root::Block(b) => bseen[b] = true,
    }
    while let Some(x) = queue.pop_front() {
        order.push(x);
        match x {
            Root::Vertex(v) => {
                for &b in &dec.vblocks[v] {
                    if !bseen[b] {
                        bseen[b] = true;
                        bparent[b] = Some(v);
                        vchildren[v].push(b);
                        queue.push_back(Root::Block(b));
                    }
                }
            }
            Root::Block(b) => {
                for v in dec.blocks[b].iter() {
                    if !vseen[v] {
                        vseen[v] = true;
                        vparent[v] = Some(b);
                        queue.push_back(Root::Vertex(v));
                    }
                }
            }
        }
    }

    let mut vcode: Vec<Vec<u8>> = vec![Vec::new(); n];
    let mut bcode: Vec<Vec<u8>> = vec![Vec::new(); nb];
    let mut ranks: Vec<Vec<usize>> = vec![Vec::new(); nb];
    let mut canon_order: Vec<Option<Vec<usize>>> = vec![None; nb];
    for &x in order.iter().rev() {
        match x {
            Root::Vertex(v) => {
                let mut kids: Vec<&[u8]> = vchildren[v].iter().map(|&b| bcode[b].as_slice()).collect();
                kids.sort_unstable();
                let mut e = Enc::new(b'V');
                e.int(g.color(v)).int(kids.len() as u64);
                for k in kids {
                    e.item(k);
                }
                vcode[v] = e.finish();
            }
            Root::Block(b) => {
                let vs = dec.blocks[b].as_slice();
                let labels: Vec<&[u8]> = vs
                    .iter()
                    .map(|&u| {
                        if bparent[b] == Some(u) {
                            PIN
                        } else {
                            vcode[u].as_slice()
                        }
                    })
                    .collect();
                let mut distinct = labels.clone();
                distinct.sort_unstable();
                distinct.dedup();
                ranks[b] = labels
                    .iter()
                    .map(|l| distinct.binary_search(l).expect("label present"))
                    .collect();

                match &dec.shapes[b] {
                    Shape::Complete => {
                        let mut sorted = labels.clone();
                        sorted.sort_unstable();
                        let mut e = Enc::new(b'K');
                        e.int(vs.len() as u64);
                        for l in sorted {
                            e.item(l);
                        }
                        bcode[b] = e.finish();
                    }
                    Shape::Outerplanar { cycle, chords } => {
                        let rank_of = |u: usize| ranks[b][vs.binary_search(&u).expect("block vertex")];
                        let (best, trav) = min_traversal(cycle, chords, rank_of);
                        let mut e = Enc::new(b'O');
                        e.int(vs.len() as u64).int(distinct.len() as u64);
                        for l in &distinct {
                            e.item(l);
                        }
                        e.item(&best);
                        bcode[b] = e.finish();
                        canon_order[b] = Some(trav);
                    }
                    Shape::Other => return Err(Error::UnsupportedBlock(vs.len())),
                }
            }
        }
    }

    Ok(Oriented {
        bparent,
        vchildren,
        vcode,
        bcode,
        ranks,
        canon_order,
    })
}

/// Least encoding of (vertex ranks, chord offsets) over the rotations and
/// reflections of `cycle`, together with the minimizing traversal.
pub(crate) fn min_traversal(
    cycle: &[usize],
    chords: &[(usize, usize)],
    rank_of: impl Fn(usize) -> usize,
) -> (Vec<u8>, Vec<usize>) {
    let n = cycle.len();
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    for start in 0..n {
        for reflect in [false, true] {
            let trav: Vec<usize> = (0..n)
                .map(|j| {
                    let k = if reflect { (start + n - j) % n } else { (start + j) % n };
                    cycle[k]
                })
                .collect();
            let mut pos = std::collections::HashMap::with_capacity(n);
            for (j, &v) in trav.iter().enumerate() {
                pos.insert(v, j);
            }
            let mut offs: Vec<(usize, usize)> = chords
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (pos[&a], pos[&b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            offs.sort_unstable();
            let mut e = Enc::new(b'T');
            for &v in &trav {
                e.int(rank_of(v) as u64);
            }
            e.int(offs.len() as u64);
            for (x, y) in offs {
                e.int(x as u64).int(y as u64);
            }
            let enc = e.finish();
            if best.as_ref().is_none_or(|(b, _)| enc < *b) {
                best = Some((enc, trav));
            }
        }
    }
    best.expect("cycle is non-empty")
}

/// Root of the unrooted code: the block-tree center.
pub(crate) fn center_root(g: &ColoredGraph, dec: &Decomposition) -> Result<Root> {
    let t = block_tree(g)?;
    Ok(match t.center {
        Node::Cut(v) => Root::Vertex(v),
        Node::Block(b) => {
            // block_tree and Decomposition list blocks in the same order.
            debug_assert_eq!(t.blocks[b], dec.blocks[b]);
            Root::Block(b)
        }
    })
}

/// Code of a connected rooted graph. Rooted graphs are encoded from the
/// root; unrooted ones from the block-tree center.
pub fn canon_code(r: &RootedGraph, class: GraphClass) -> Result<CanonCode> {
    if class == GraphClass::Unsupported {
        return Err(Error::Unsupported);
    }
    canon_code_any(r)
}

/// Like [`canon_code`] without the class gate; fails only on blocks that
/// are neither complete nor outerplanar.
pub fn canon_code_any(r: &RootedGraph) -> Result<CanonCode> {
    let g = &r.graph;
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let dec = Decomposition::new(g);
    let mut e;
    match r.root {
        Some(v) => {
            let o = orient(g, &dec, Root::Vertex(v))?;
            e = Enc::new(b'R');
            e.item(&o.vcode[v]);
        }
        None => {
            let root = center_root(g, &dec)?;
            let o = orient(g, &dec, root)?;
            e = Enc::new(b'U');
            match root {
                Root::Vertex(v) => e.item(&o.vcode[v]),
                Root::Block(b) => e.item(&o.bcode[b]),
            };
        }
    }
    Ok(CanonCode(e.finish()))
}
