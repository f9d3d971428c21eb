//! Permutation groups given by generators, and automorphism groups of small
//! colored graphs.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, VertexSet};

pub type Perm = Vec<u32>;

/// Largest graph handed to the generic automorphism search.
pub const AUT_LIMIT: usize = 12;

/// Groups up to this order get a canonical generating set.
const CANONICAL_GENS_LIMIT: u64 = 100_000;

fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

/// `a` then `b`.
fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inverse(p: &[u32]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

struct Level {
    base: usize,
    gens: Vec<Perm>,
    /// `transversal[p]` maps `base` to `p` for every `p` in the basic orbit.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

/// Stabilizer chain built with the deterministic Schreier–Sims algorithm.
struct Chain {
    n: usize,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

fn first_moved(p: &[u32]) -> Option<usize> {
    p.iter().enumerate().position(|(i, &x)| i as u32 != x)
}

impl Chain {
    fn new(n: usize, gens: &[Perm]) -> Self {
        let mut chain = Chain {
            n,
            strong: gens.iter().filter(|g| !is_identity(g)).cloned().collect(),
            levels: Vec::new(),
        };
        for g in chain.strong.clone() {
            if chain.levels.iter().all(|l| g[l.base] as usize == l.base) {
                let base = first_moved(&g).expect("non-identity");
                chain.push_level(base);
            }
        }
        for l in 0..chain.levels.len() {
            chain.rebuild(l);
        }

        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let level = &chain.levels[li];
            for &p in &level.orbit {
                for s in &level.gens {
                    let tp = level.transversal[p].as_ref().unwrap();
                    let tsp = level.transversal[s[p] as usize].as_ref().unwrap();
                    let schreier = compose(&compose(tp, s), &inverse(tsp));
                    let (j, h) = chain.sift(schreier, li + 1);
                    if is_identity(&h) {
                        continue;
                    }
                    if j == chain.levels.len() {
                        chain.push_level(first_moved(&h).expect("non-identity"));
                    }
                    chain.strong.push(h);
                    for l in li + 1..=j {
                        chain.rebuild(l);
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
        chain
    }

    fn push_level(&mut self, base: usize) {
        self.levels.push(Level {
            base,
            gens: Vec::new(),
            transversal: Vec::new(),
            orbit: Vec::new(),
        });
    }

    /// Recomputes generators and basic orbit of level `l` from the strong
    /// generators fixing the earlier base points.
    fn rebuild(&mut self, l: usize) {
        let fixed: Vec<usize> = self.levels[..l].iter().map(|x| x.base).collect();
        let gens: Vec<Perm> = self
            .strong
            .iter()
            .filter(|g| fixed.iter().all(|&b| g[b] as usize == b))
            .cloned()
            .collect();
        let level = &mut self.levels[l];
        level.gens = gens;
        level.transversal = vec![None; self.n];
        level.transversal[level.base] = Some(identity(self.n));
        level.orbit = vec![level.base];
        let mut k = 0;
        while k < level.orbit.len() {
            let p = level.orbit[k];
            k += 1;
            let tp = level.transversal[p].clone().unwrap();
            for s in &level.gens {
                let q = s[p] as usize;
                if level.transversal[q].is_none() {
                    level.transversal[q] = Some(compose(&tp, s));
                    level.orbit.push(q);
                }
            }
        }
    }

    fn sift(&self, mut h: Perm, from: usize) -> (usize, Perm) {
        for (k, level) in self.levels.iter().enumerate().skip(from) {
            let img = h[level.base] as usize;
            match &level.transversal[img] {
                Some(t) => h = compose(&h, &inverse(t)),
                None => return (k, h),
            }
        }
        (self.levels.len(), h)
    }

    fn contains(&self, g: &[u32]) -> bool {
        is_identity(&self.sift(g.to_vec(), 0).1)
    }

    fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassicalPermGroup {
    degree: usize,
    order: u64,
    generators: Vec<Perm>,
}

impl ClassicalPermGroup {
    pub fn trivial(degree: usize) -> Self {
        ClassicalPermGroup {
            degree,
            order: 1,
            generators: Vec::new(),
        }
    }

    /// The group generated by `gens`. When the order is small enough the
    /// generators are replaced by a canonical set so that equal groups
    /// compare equal.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&x| {
                    (x as usize) < degree && !std::mem::replace(&mut seen[x as usize], true)
                });
            if !ok {
                return Err(Error::InvalidExpr(format!(
                    "{g:?} is not a permutation of degree {degree}"
                )));
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !is_identity(g)).collect();
        let order = Chain::new(degree, &gens).order();
        let mut group = ClassicalPermGroup {
            degree,
            order,
            generators: gens,
        };
        if order <= CANONICAL_GENS_LIMIT {
            group.generators = group.canonical_generators();
        }
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        p.len() == self.degree && Chain::new(self.degree, &self.generators).contains(p)
    }

    /// All elements by closure under the generators, sorted.
    pub fn elements(&self) -> Vec<Perm> {
        let mut seen: HashSet<Perm> = HashSet::new();
        let id = identity(self.degree);
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let mut out: Vec<Perm> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Greedy generating set: scan the sorted elements and keep each one not
    /// yet generated by those kept before it.
    fn canonical_generators(&self) -> Vec<Perm> {
        let mut kept: Vec<Perm> = Vec::new();
        let mut chain = Chain::new(self.degree, &[]);
        for e in self.elements() {
            if !chain.contains(&e) {
                kept.push(e);
                chain = Chain::new(self.degree, &kept);
                if chain.order() == self.order {
                    break;
                }
            }
        }
        kept
    }

    /// Orbits of the whole group, each intersected with `subset`; empty
    /// intersections are dropped.
    pub fn orbits(&self, subset: &VertexSet) -> Vec<VertexSet> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.generators {
            for (x, &y) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y as usize));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in subset.iter().filter(|&v| v < self.degree) {
            groups.entry(find(&mut parent, v)).or_default().push(v);
        }
        let mut out: Vec<VertexSet> = groups.into_values().map(VertexSet::new).collect();
        out.sort();
        out
    }

    /// Points moved by some generator, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&x| self.generators.iter().any(|g| g[x] as usize != x))
            .collect()
    }

    /// The same group acting on its support, relabeled monotonically to
    /// `0..support.len()`.
    pub fn restrict_to_support(&self) -> ClassicalPermGroup {
        let support = self.support();
        let mut index = vec![usize::MAX; self.degree];
        for (i, &x) in support.iter().enumerate() {
            index[x] = i;
        }
        let gens = self
            .generators
            .iter()
            .map(|g| support.iter().map(|&x| index[g[x] as usize] as u32).collect())
            .collect();
        ClassicalPermGroup::from_generators(support.len(), gens)
            .expect("restriction of a permutation is a permutation")
    }

    /// Cyclic: some element has order |G|.
    pub fn is_cyclic(&self) -> bool {
        self.order <= CANONICAL_GENS_LIMIT
            && self
                .elements()
                .iter()
                .any(|e| element_order(e) == self.order)
    }

    /// Dihedral of order 2m, m ≥ 2: an element of order m whose cyclic
    /// subgroup has every outside element an involution.
    pub fn dihedral_rank(&self) -> Option<u64> {
        if self.order < 4 || self.order % 2 == 1 || self.order > CANONICAL_GENS_LIMIT {
            return None;
        }
        let m = self.order / 2;
        let elements = self.elements();
        for r in elements.iter().filter(|e| element_order(e) == m) {
            let mut cyc: HashSet<Perm> = HashSet::new();
            let mut p = identity(self.degree);
            for _ in 0..m {
                cyc.insert(p.clone());
                p = compose(&p, r);
            }
            if elements
                .iter()
                .filter(|e| !cyc.contains(*e))
                .all(|e| element_order(e) == 2)
            {
                return Some(m);
            }
        }
        None
    }
}

fn element_order(p: &[u32]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut lcm = 1u64;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        lcm = lcm / gcd(lcm, len) * len;
    }
    lcm
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Colors with each pinned vertex moved into its own class.
fn pinned_colors(g: &ColoredGraph, pins: &VertexSet) -> Result<Vec<(usize, u64)>> {
    if let Some(bad) = pins.iter().find(|&p| p >= g.n()) {
        return Err(Error::UnknownVertex(bad));
    }
    Ok((0..g.n())
        .map(|v| {
            let pin = pins.as_slice().binary_search(&v).map_or(0, |i| i + 1);
            (pin, g.color(v))
        })
        .collect())
}

/// Backtracking search for an automorphism that satisfies the `fixed`
/// prefix assignments, trying targets in increasing order.
fn extend_automorphism(g: &ColoredGraph, colors: &[(usize, u64)], fixed: &[usize]) -> Option<Perm> {
    let n = g.n();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn go(
        g: &ColoredGraph,
        colors: &[(usize, u64)],
        fixed: &[usize],
        v: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = g.n();
        if v == n {
            return true;
        }
        let candidates: Box<dyn Iterator<Item = usize>> = match fixed.get(v) {
            Some(&t) => Box::new(std::iter::once(t)),
            None => Box::new(0..n),
        };
        for u in candidates {
            if used[u] || colors[u] != colors[v] || g.degree(u) != g.degree(v) {
                continue;
            }
            if (0..v).any(|w| g.has_edge(v, w) != g.has_edge(u, map[w])) {
                continue;
            }
            map[v] = u;
            used[u] = true;
            if go(g, colors, fixed, v + 1, map, used) {
                return true;
            }
            used[u] = false;
            map[v] = usize::MAX;
        }
        false
    }

    go(g, colors, fixed, 0, &mut map, &mut used)
        .then(|| map.into_iter().map(|x| x as u32).collect())
}

/// Color- and pin-preserving automorphisms of `g` (at most [`AUT_LIMIT`]
/// vertices), via a stabilizer-chain search over base `0, 1, ..., n-1`.
pub fn automorphism_group(g: &ColoredGraph, pins: &VertexSet) -> Result<ClassicalPermGroup> {
    let n = g.n();
    if n > AUT_LIMIT {
        return Err(Error::TooLarge { n, limit: AUT_LIMIT });
    }
    let colors = pinned_colors(g, pins)?;
    let mut strong: Vec<Perm> = Vec::new();
    for i in 0..n {
        // Automorphisms found at this level all fix 0..i pointwise.
        let mut level_gens: Vec<Perm> = Vec::new();
        let mut reached = vec![false; n];
        reached[i] = true;
        for t in i + 1..n {
            if reached[t] {
                continue;
            }
            let mut fixed: Vec<usize> = (0..i).collect();
            fixed.push(t);
            if let Some(p) = extend_automorphism(g, &colors, &fixed) {
                level_gens.push(p);
                let mut queue = vec![i];
                let mut seen = vec![false; n];
                seen[i] = true;
                while let Some(x) = queue.pop() {
                    reached[x] = true;
                    for h in &level_gens {
                        let y = h[x] as usize;
                        if !seen[y] {
                            seen[y] = true;
                            queue.push(y);
                        }
                    }
                }
            }
        }
        strong.extend(level_gens);
    }
    ClassicalPermGroup::from_generators(n, strong)
}

/// Automorphisms of a graph whose symmetries all preserve the given
/// Hamiltonian cycle: only the 2n rotations and reflections are tried.
pub fn dihedral_automorphisms(g: &ColoredGraph, cycle: &[usize], pins: &VertexSet) -> Result<ClassicalPermGroup> {
    let n = g.n();
    assert_eq!(cycle.len(), n, "cycle must be spanning");
    let colors = pinned_colors(g, pins)?;
    let mut pos = vec![0usize; n];
    for (i, &v) in cycle.iter().enumerate() {
        pos[v] = i;
    }
    let mut found = Vec::new();
    for shift in 0..n {
        for reflect in [false, true] {
            let image = |v: usize| {
                let p = pos[v];
                let q = if reflect { (shift + n - p) % n } else { (shift + p) % n };
                cycle[q]
            };
            let perm: Perm = (0..n).map(|v| image(v) as u32).collect();
            let ok = (0..n).all(|v| colors[v] == colors[perm[v] as usize])
                && g.edges()
                    .iter()
                    .all(|&(u, v)| g.has_edge(perm[u] as usize, perm[v] as usize));
            if ok {
                found.push(perm);
            }
        }
    }
    ClassicalPermGroup::from_generators(n, found)
}
