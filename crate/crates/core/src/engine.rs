//! Recursive computation of quantum automorphism groups over the block tree.
//!
//! The block tree is oriented away from its center. A vertex `v` with child
//! blocks contributes the free product, over isomorphism classes of child
//! blocks, of `Qut(child)_v wr* S^+(k)`; a block contributes an
//! (inhomogeneous) free wreath product of the groups hanging below its
//! vertices over the colored block atom. Isomorphism classes come from
//! canonical codes, which also serve as memo keys.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{
    automorphism_group, canon_code_any, center_root, dihedral_automorphisms, orient, Decomposition, Oriented,
    Root, Shape,
};
use crate::blocks::RootedGraph;
use crate::classrec::{blocks_handled, classify, GraphClass};
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, VertexSet};
use crate::qexpr::{
    classical, classical_shadow_order, free_product, free_wreath, inhom_free_wreath, is_classical,
    quantum_orbits, sym_q, QGroupExpr,
};
use crate::wl::stable_coloring;

pub const FORCED_ASSUMPTION: &str = "assumes iso ⇔ quantum-iso for encountered rooted subgraphs";
pub const MIXED_CLASS: &str = "mixed-class mode";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QutResult {
    #[serde(skip)]
    pub expr: QGroupExpr,
    pub assumptions: Vec<String>,
    pub class: GraphClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub force: bool,
    /// Worker threads for independent subtrees; 1 runs sequentially.
    pub jobs: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { force: false, jobs: 1 }
    }
}

pub fn qut(g: &ColoredGraph, force: bool) -> Result<QutResult> {
    qut_with(g, Options { force, jobs: 1 })
}

pub fn qut_with(g: &ColoredGraph, opts: Options) -> Result<QutResult> {
    let class = classify(g);
    let mut assumptions = Vec::new();
    if class == GraphClass::Unsupported {
        if !opts.force {
            return Err(Error::ClassRefused(class.to_string()));
        }
        assumptions.push(FORCED_ASSUMPTION.to_string());
        if blocks_handled(g) {
            assumptions.push(MIXED_CLASS.to_string());
        }
    }
    let engine = Engine::new(opts.jobs > 1);
    let expr = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidExpr(format!("thread pool: {e}")))?;
        pool.install(|| engine.disjoint(g))?
    } else {
        engine.disjoint(g)?
    };
    Ok(QutResult {
        expr,
        assumptions,
        class,
    })
}

/// `Qut` of a connected graph, without the class gate.
pub fn qut_connected(g: &ColoredGraph) -> Result<QGroupExpr> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Engine::new(false).connected(g)
}

/// Stabilizer of the root in `Qut` of a connected rooted graph.
pub fn qut_rooted(r: &RootedGraph) -> Result<QGroupExpr> {
    let g = &r.graph;
    let Some(root) = r.root else {
        return qut_connected(g);
    };
    let mut pinned = g.clone();
    let fresh = g.colors().iter().max().map_or(0, |&c| c + 1);
    pinned.set_color(root, fresh)?;
    qut_connected(&pinned)
}

/// `Qut_c(B)` (or its stabilizer of `pin`) for a single colored block.
pub fn qut_block_atom(b: &ColoredGraph, pin: Option<usize>) -> Result<QGroupExpr> {
    let mut pinned = b.clone();
    if let Some(p) = pin {
        let fresh = b.colors().iter().max().map_or(0, |&c| c + 1);
        pinned.set_color(p, fresh)?;
    }
    if pinned.n() == 0 {
        return Ok(QGroupExpr::Trivial);
    }
    let dec = Decomposition::new(&pinned);
    if dec.blocks.len() != 1 || dec.blocks[0].len() != pinned.n() {
        return Err(Error::NotBiconnected);
    }
    let mut distinct: Vec<u64> = pinned.colors().to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let ranks: Vec<usize> = pinned
        .colors()
        .iter()
        .map(|c| distinct.binary_search(c).unwrap())
        .collect();
    let order = match &dec.shapes[0] {
        Shape::Outerplanar { cycle, chords } => {
            Some(crate::canon::min_traversal(cycle, chords, |v| ranks[v]).1)
        }
        _ => None,
    };
    let factors = vec![QGroupExpr::Trivial; pinned.n()];
    compose_block(&dec.shapes[0], dec.blocks[0].as_slice(), &ranks, &factors, order.as_deref())
}

pub fn has_quantum_symmetry(g: &ColoredGraph) -> Result<bool> {
    Ok(!is_classical(&qut(g, false)?.expr))
}

/// Outcome of comparing the classical shadow with a brute-force count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShadowVerdict {
    pub shadow_order: String,
    pub aut_order: String,
    pub agree: bool,
}

/// Counts automorphisms of `g` (at most 12 vertices) and compares the count
/// with the classical shadow of `expr`.
pub fn shadow_check(g: &ColoredGraph, expr: &QGroupExpr) -> Result<ShadowVerdict> {
    let aut = automorphism_group(g, &VertexSet::default())?.order();
    let shadow = classical_shadow_order(expr);
    Ok(ShadowVerdict {
        agree: shadow == aut.into(),
        shadow_order: shadow.to_string(),
        aut_order: aut.to_string(),
    })
}

struct Engine {
    parallel: bool,
    memo: Mutex<HashMap<Vec<u8>, QGroupExpr>>,
}

impl Engine {
    fn new(parallel: bool) -> Self {
        Engine {
            parallel,
            memo: Mutex::new(HashMap::new()),
        }
    }

    fn map<T, F>(&self, items: Vec<T>, f: F) -> Result<Vec<QGroupExpr>>
    where
        T: Send,
        F: Fn(T) -> Result<QGroupExpr> + Sync + Send,
    {
        if self.parallel {
            items.into_par_iter().map(f).collect()
        } else {
            items.into_iter().map(f).collect()
        }
    }

    fn memoized(&self, key: &[u8], f: impl FnOnce() -> Result<QGroupExpr>) -> Result<QGroupExpr> {
        if let Some(e) = self.memo.lock().unwrap().get(key) {
            return Ok(e.clone());
        }
        let e = f()?;
        // Equal keys always produce equal values, so a concurrent insert of
        // the same key is harmless.
        self.memo.lock().unwrap().entry(key.to_vec()).or_insert_with(|| e.clone());
        Ok(e)
    }

    /// Components grouped by isomorphism type: `⋆ Qut(X_i) wr* S^+(k_i)`.
    fn disjoint(&self, g: &ColoredGraph) -> Result<QGroupExpr> {
        let comps = g.connected_components();
        if comps.is_empty() {
            return Ok(QGroupExpr::Trivial);
        }
        let mut classes: BTreeMap<Vec<u8>, (ColoredGraph, usize)> = BTreeMap::new();
        for c in &comps {
            let (sub, _) = g.induced_subgraph(c)?;
            let code = canon_code_any(&RootedGraph::unrooted(sub.clone()))?;
            classes.entry(code.as_bytes().to_vec()).or_insert((sub, 0)).1 += 1;
        }
        let parts = self.map(classes.into_values().collect(), |(sub, k)| {
            free_wreath(self.connected(&sub)?, sym_q(k))
        })?;
        free_product(parts)
    }

    fn connected(&self, g: &ColoredGraph) -> Result<QGroupExpr> {
        let dec = Decomposition::new(g);
        let root = center_root(g, &dec)?;
        let o = orient(g, &dec, root)?;
        let ctx = Ctx {
            engine: self,
            dec: &dec,
            o: &o,
        };
        match root {
            Root::Vertex(v) => ctx.vertex(v),
            Root::Block(b) => ctx.block(b),
        }
    }
}

struct Ctx<'a> {
    engine: &'a Engine,
    dec: &'a Decomposition,
    o: &'a Oriented,
}

impl Ctx<'_> {
    /// Stabilizer of `v` in `Qut` of the subgraph hanging below `v`.
    fn vertex(&self, v: usize) -> Result<QGroupExpr> {
        let mut key = vec![b'v'];
        key.extend_from_slice(&self.o.vcode[v]);
        self.engine.memoized(&key, || {
            let mut classes: BTreeMap<&[u8], (usize, usize)> = BTreeMap::new();
            for &b in &self.o.vchildren[v] {
                classes.entry(self.o.bcode[b].as_slice()).or_insert((b, 0)).1 += 1;
            }
            if classes.is_empty() {
                return Ok(QGroupExpr::Trivial);
            }
            let parts = self.engine.map(classes.into_values().collect(), |(b, k)| {
                free_wreath(self.block(b)?, sym_q(k))
            })?;
            free_product(parts)
        })
    }

    /// `Qut` of the subgraph below block `b`, with the parent vertex pinned
    /// when `b` is not the root.
    fn block(&self, b: usize) -> Result<QGroupExpr> {
        let mut key = vec![b'b'];
        key.extend_from_slice(&self.o.bcode[b]);
        self.engine.memoized(&key, || {
            let vs = self.dec.blocks[b].as_slice();
            let ranks = &self.o.ranks[b];
            let parent = self.o.bparent[b];

            // One representative per label; equal labels have equal subtrees.
            let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
            for (i, &u) in vs.iter().enumerate() {
                if Some(u) != parent {
                    reps.entry(ranks[i]).or_insert(u);
                }
            }
            let rep_list: Vec<(usize, usize)> = reps.into_iter().collect();
            let values = self.engine.map(rep_list.clone(), |(_, u)| self.vertex(u))?;
            let by_rank: HashMap<usize, QGroupExpr> =
                rep_list.iter().map(|&(r, _)| r).zip(values).collect();
            let factors: Vec<QGroupExpr> = ranks
                .iter()
                .map(|r| by_rank.get(r).cloned().unwrap_or(QGroupExpr::Trivial))
                .collect();
            compose_block(
                &self.dec.shapes[b],
                vs,
                ranks,
                &factors,
                self.o.canon_order[b].as_deref(),
            )
        })
    }
}

/// Combines the groups hanging below the vertices of a block with the
/// block's colored symmetry. `ranks[i]` is the color of `vs[i]`, and
/// `factors[i]` the group below it; equal ranks carry equal factors.
fn compose_block(
    shape: &Shape,
    vs: &[usize],
    ranks: &[usize],
    factors: &[QGroupExpr],
    canon_order: Option<&[usize]>,
) -> Result<QGroupExpr> {
    match shape {
        Shape::Complete => compose_complete(ranks, factors),
        Shape::Outerplanar { cycle, chords } if vs.len() == 4 => compose_four(vs, cycle, chords, ranks, factors),
        Shape::Outerplanar { chords, .. } => {
            let order = canon_order.expect("outerplanar blocks carry a canonical traversal");
            compose_outerplanar(vs, order, chords, ranks, factors)
        }
        Shape::Other => Err(Error::UnsupportedBlock(vs.len())),
    }
}

/// Complete block: colour classes are the orbits, each acted on by a free
/// symmetric group.
fn compose_complete(ranks: &[usize], factors: &[QGroupExpr]) -> Result<QGroupExpr> {
    let mut classes: BTreeMap<usize, (QGroupExpr, usize)> = BTreeMap::new();
    for (&r, f) in ranks.iter().zip(factors) {
        classes.entry(r).or_insert((f.clone(), 0)).1 += 1;
    }
    free_product(
        classes
            .into_values()
            .map(|(f, k)| free_wreath(f, sym_q(k)))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// C4 and the diamond, through the complement: a disjoint union of colored
/// K2 and K1 pieces, each carrying the groups below its vertices.
fn compose_four(
    vs: &[usize],
    cycle: &[usize],
    chords: &[(usize, usize)],
    ranks: &[usize],
    factors: &[QGroupExpr],
) -> Result<QGroupExpr> {
    let local = |v: usize| vs.binary_search(&v).expect("block vertex");
    let mut adj = [[false; 4]; 4];
    let cycle_edges = (0..4).map(|j| (cycle[j], cycle[(j + 1) % 4]));
    for (x, y) in cycle_edges.chain(chords.iter().copied()) {
        let (a, b) = (local(x), local(y));
        adj[a][b] = true;
        adj[b][a] = true;
    }

    let mut seen = [false; 4];
    let mut pieces: BTreeMap<Vec<usize>, (QGroupExpr, usize)> = BTreeMap::new();
    for s in 0..4 {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut piece = vec![s];
        for t in s + 1..4 {
            if !adj[s][t] && !seen[t] {
                seen[t] = true;
                piece.push(t);
            }
        }
        let piece_ranks: Vec<usize> = piece.iter().map(|&i| ranks[i]).collect();
        let piece_factors: Vec<QGroupExpr> = piece.iter().map(|&i| factors[i].clone()).collect();
        let mut key = piece_ranks.clone();
        key.sort_unstable();
        let inner = compose_complete(&piece_ranks, &piece_factors)?;
        pieces.entry(key).or_insert((inner, 0)).1 += 1;
    }
    free_product(
        pieces
            .into_values()
            .map(|(inner, k)| free_wreath(inner, sym_q(k)))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Outerplanar block on at least five vertices: its colored automorphism
/// group is dihedral-bounded and classical, and orbits are certified
/// against 2-WL before being used as the base of the wreath product.
fn compose_outerplanar(
    vs: &[usize],
    order: &[usize],
    chords: &[(usize, usize)],
    ranks: &[usize],
    factors: &[QGroupExpr],
) -> Result<QGroupExpr> {
    let n = vs.len();
    let local = |v: usize| vs.binary_search(&v).expect("block vertex");
    let mut pos = vec![0usize; n];
    for (j, &v) in order.iter().enumerate() {
        pos[local(v)] = j;
    }
    let mut g = ColoredGraph::empty(n);
    for j in 0..n {
        g.add_edge(j, (j + 1) % n)?;
    }
    for &(x, y) in chords {
        g.add_edge(pos[local(x)], pos[local(y)])?;
    }
    let colors: Vec<u64> = order.iter().map(|&v| ranks[local(v)] as u64).collect();
    let g = g.with_colors(colors)?;
    let cycle: Vec<usize> = (0..n).collect();
    let group = dihedral_automorphisms(&g, &cycle, &VertexSet::default())?;
    let all: VertexSet = (0..n).collect();
    let orbits = quantum_orbits(&group.orbits(&all), &stable_coloring(&g).vertex_classes())?;

    let factor_at = |j: usize| factors[local(order[j])].clone();
    let mut free = Vec::new();
    let mut fibers = Vec::new();
    for orbit in &orbits {
        let rep = orbit.as_slice()[0];
        if orbit.len() == 1 {
            free.push(factor_at(rep));
        } else {
            fibers.push((factor_at(rep), orbit.len()));
        }
    }
    if !fibers.is_empty() {
        free.push(inhom_free_wreath(fibers, classical(group))?);
    }
    if free.is_empty() {
        return Ok(QGroupExpr::Trivial);
    }
    free_product(free)
}
