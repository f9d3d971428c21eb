//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qblock::blocks::{biconnected_components, block_tree, subgraph_below, Node, RootedGraph};
use qblock::canon::{canon_code_any, ClassicalPermGroup};
use qblock::engine::qut;
use qblock::gen::{
    free_trees, polygon, polygon_dissections, random_block_structure, random_connected, random_permutation,
    rooted_trees, BlockKind,
};
use qblock::graph::named::{cycle, diamond};
use qblock::graph::ColoredGraph;
use qblock::qexpr::{
    classical_shadow_order, contains_inhom, free_product, free_wreath, is_classical, is_tree_class, normalize,
    orbit_sizes, QGroupExpr,
};
use qblock::wl::stable_coloring;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn within(ok: bool, elapsed: Duration, limit: Duration, detail: String) -> Outcome {
    let in_time = elapsed < limit;
    outcome(
        ok && in_time,
        format!("{detail}; {:.2}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()),
    )
}

fn golden_atoms() -> Outcome {
    let start = Instant::now();
    let c4 = qut(&cycle(4), false).unwrap().expr;
    let d = qut(&diamond(), false).unwrap().expr;
    let want_c4 = QGroupExpr::FreeWreath(Box::new(QGroupExpr::SymQ(2)), Box::new(QGroupExpr::SymQ(2)));
    let want_d = QGroupExpr::FreeProduct(vec![QGroupExpr::SymQ(2), QGroupExpr::SymQ(2)]);
    within(
        c4 == want_c4 && d == want_d,
        start.elapsed(),
        Duration::from_secs(1),
        format!("C4 = {c4:?}, diamond = {d:?}"),
    )
}

fn shadow_matches(g: &ColoredGraph) -> Result<(), String> {
    let expr = qut(g, false).map_err(|e| e.to_string())?.expr;
    let shadow = classical_shadow_order(&expr);
    let aut = BigUint::from(common::aut_count(g));
    if shadow == aut {
        Ok(())
    } else {
        Err(format!("shadow {shadow} vs |Aut| {aut} on edges {:?}", g.edges()))
    }
}

fn all_trees() -> Vec<ColoredGraph> {
    (1..=9).flat_map(free_trees).collect()
}

fn shadow_agreement() -> Outcome {
    let start = Instant::now();
    let free: Vec<usize> = (1..=9).map(|n| free_trees(n).len()).collect();
    let rooted9 = rooted_trees(9).len();
    let counts_ok = free == [1, 1, 1, 2, 3, 6, 11, 23, 47] && rooted9 == 286;
    let mut failures = Vec::new();
    let trees = all_trees();
    for t in &trees {
        if let Err(e) = shadow_matches(t) {
            failures.push(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut sampled = 0;
    for kind in [BlockKind::Outerplanar, BlockKind::Complete] {
        for i in 0..600 {
            let n = rng.gen_range(1..=9);
            let colors = if i < 500 { 1 } else { 3 };
            let g = random_block_structure(&mut rng, n, kind, colors);
            sampled += 1;
            if let Err(e) = shadow_matches(&g) {
                failures.push(e);
            }
        }
    }
    within(
        counts_ok && failures.is_empty(),
        start.elapsed(),
        Duration::from_secs(300),
        format!(
            "{} trees (free counts {free:?}, rooted on 9 = {rooted9}), {sampled} random graphs, {} mismatches{}",
            trees.len(),
            failures.len(),
            failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

/// Non-isomorphic biconnected outerplanar graphs on `n` vertices with their
/// chord lists, deduplicated by canonical code.
fn outerplanar_family(n: usize) -> Vec<(ColoredGraph, Vec<(usize, usize)>)> {
    let mut seen = BTreeMap::new();
    for chords in polygon_dissections(n) {
        let g = polygon(n, &chords);
        let code = canon_code_any(&RootedGraph::unrooted(g.clone())).unwrap();
        seen.entry(code).or_insert((g, chords));
    }
    seen.into_values().collect()
}

fn no_quantum_symmetry() -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    let mut bad = Vec::new();
    for n in 5..=8 {
        let family = outerplanar_family(n);
        sizes.push(family.len());
        for (g, chords) in family {
            match qut(&g, false) {
                Ok(r) if is_classical(&r.expr) => {}
                Ok(r) => bad.push(format!("n={n} chords {chords:?}: {:?}", r.expr)),
                Err(e) => bad.push(format!("n={n} chords {chords:?}: {e}")),
            }
        }
    }
    within(
        bad.is_empty(),
        start.elapsed(),
        Duration::from_secs(120),
        format!(
            "classes per n=5..8: {sizes:?}, {} non-classical{}",
            bad.len(),
            bad.first().map(|b| format!(", first: {b}")).unwrap_or_default()
        ),
    )
}

fn wl_chord_separation() -> Outcome {
    let mut violations = 0;
    let mut graphs = 0;
    for n in 5..=8 {
        for (g, chords) in outerplanar_family(n) {
            graphs += 1;
            let c = stable_coloring(&g);
            let outer: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            for &(a, b) in &chords {
                for &(x, y) in &outer {
                    for (p, q) in [((a, b), (x, y)), ((a, b), (y, x)), ((b, a), (x, y)), ((b, a), (y, x))] {
                        if c.get(p.0, p.1) == c.get(q.0, q.1) {
                            violations += 1;
                        }
                    }
                }
            }
        }
    }
    outcome(violations == 0, format!("{graphs} graphs, {violations} violations"))
}

/// Center of a tree by eccentricity, with block nodes and cut nodes as
/// vertices.
fn tree_centers(t: &qblock::blocks::BlockTree) -> Vec<Node> {
    let nodes = t.nodes();
    let index: HashMap<Node, usize> = nodes.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut adj = vec![Vec::new(); nodes.len()];
    for &(b, c) in &t.tree_edges {
        let (i, j) = (index[&Node::Block(b)], index[&Node::Cut(c)]);
        adj[i].push(j);
        adj[j].push(i);
    }
    let ecc: Vec<usize> = (0..nodes.len())
        .map(|s| {
            let mut dist = vec![usize::MAX; nodes.len()];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist.into_iter().max().unwrap()
        })
        .collect();
    let best = *ecc.iter().min().unwrap();
    (0..nodes.len()).filter(|&i| ecc[i] == best).map(|i| nodes[i]).collect()
}

fn block_machinery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut violations = Vec::new();
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.0..0.5);
        let g = random_connected(&mut rng, n, p);
        let blocks = biconnected_components(&g);
        if blocks != common::blocks_by_definition(&g) {
            violations.push(format!("blocks differ on {:?}", g.edges()));
            continue;
        }
        let t = block_tree(&g).unwrap();
        for node in t.nodes() {
            let lev = t.level(node).unwrap();
            let parity_ok = match node {
                Node::Block(_) => lev % 2 == 0,
                Node::Cut(_) => lev % 2 == 1,
            };
            if !parity_ok {
                violations.push(format!("{node:?} has level {lev} on {:?}", g.edges()));
            }
        }
        let centers = tree_centers(&t);
        if centers != [t.center] {
            violations.push(format!("centers {centers:?} vs {:?} on {:?}", t.center, g.edges()));
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "1000 graphs, {} violations{}",
            violations.len(),
            violations.first().map(|v| format!(", first: {v}")).unwrap_or_default()
        ),
    )
}

fn random_classical<R: Rng>(rng: &mut R) -> QGroupExpr {
    let gens: (usize, Vec<Vec<u32>>) = match rng.gen_range(0..4) {
        0 => (3, vec![vec![1, 2, 0]]),
        1 => (4, vec![vec![1, 2, 3, 0], vec![3, 2, 1, 0]]),
        2 => (4, vec![vec![1, 0, 3, 2]]),
        _ => (5, vec![vec![1, 2, 3, 4, 0]]),
    };
    QGroupExpr::Classical(ClassicalPermGroup::from_generators(gens.0, gens.1).unwrap())
}

/// A random expression built without the smart constructors, so it is
/// usually not in normal form. Bases of inhomogeneous products are
/// normalized first so their orbit structure is well defined.
fn random_raw<R: Rng>(rng: &mut R, depth: usize) -> QGroupExpr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => QGroupExpr::Trivial,
            1 | 2 => QGroupExpr::SymQ(rng.gen_range(1..=4)),
            _ => random_classical(rng),
        };
    }
    match rng.gen_range(0..3) {
        0 => {
            let k = rng.gen_range(1..=3);
            QGroupExpr::FreeProduct((0..k).map(|_| random_raw(rng, depth - 1)).collect())
        }
        1 => {
            let outer = loop {
                let h = random_raw(rng, depth - 1);
                if normalize(&h).is_ok() && h != QGroupExpr::SymQ(0) {
                    break h;
                }
            };
            QGroupExpr::FreeWreath(Box::new(random_raw(rng, depth - 1)), Box::new(outer))
        }
        _ => {
            let base = normalize(&random_raw(rng, depth - 1)).unwrap();
            let sizes = orbit_sizes(&base);
            let shared = random_raw(rng, depth - 1);
            let same = rng.gen_bool(0.3);
            let factors = sizes
                .into_iter()
                .map(|k| (if same { shared.clone() } else { random_raw(rng, depth - 1) }, k))
                .collect();
            QGroupExpr::InhomFreeWreath(factors, Box::new(base))
        }
    }
}

fn in_normal_form(e: &QGroupExpr) -> bool {
    use QGroupExpr::*;
    match e {
        Trivial | Classical(_) => true,
        SymQ(n) => *n >= 2,
        FreeProduct(fs) => {
            fs.len() >= 2
                && fs.windows(2).all(|w| w[0] <= w[1])
                && fs.iter().all(|f| !matches!(f, Trivial | FreeProduct(_)) && in_normal_form(f))
        }
        FreeWreath(g, h) => {
            !matches!(**g, Trivial) && !matches!(**h, Trivial | FreeProduct(_)) && in_normal_form(g) && in_normal_form(h)
        }
        InhomFreeWreath(fs, h) => {
            !matches!(**h, Trivial | FreeProduct(_))
                && fs.iter().any(|(g, _)| *g != fs[0].0)
                && fs.iter().all(|(g, _)| in_normal_form(g))
                && in_normal_form(h)
        }
    }
}

/// False when some free product has a factor acting on a single point.
/// Normalization drops such factors, which changes the point count an
/// enclosing wreath product sees, so the shadow is only comparable when
/// none occur.
fn keeps_points(e: &QGroupExpr) -> bool {
    use QGroupExpr::*;
    match e {
        Trivial | SymQ(_) | Classical(_) => true,
        FreeProduct(fs) => fs.iter().all(|f| normalize(f) != Ok(Trivial) && keeps_points(f)),
        FreeWreath(g, h) => keeps_points(g) && keeps_points(h),
        InhomFreeWreath(fs, h) => fs.iter().all(|(g, _)| keeps_points(g)) && keeps_points(h),
    }
}

fn normalization_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    for _ in 0..10_000 {
        let e = random_raw(&mut rng, 3);
        let Ok(n1) = normalize(&e) else {
            bad.push(format!("normalize failed on {e:?}"));
            continue;
        };
        if normalize(&n1).as_ref() != Ok(&n1) {
            bad.push(format!("not idempotent on {e:?}"));
        }
        if !in_normal_form(&n1) {
            bad.push(format!("not in normal form: {n1:?}"));
        }
        if keeps_points(&e) && classical_shadow_order(&n1) != classical_shadow_order(&e) {
            bad.push(format!("shadow changed on {e:?}"));
        }
        // Equal fibers collapse to a free wreath product.
        let base = n1.clone();
        if base != QGroupExpr::Trivial {
            let g = normalize(&random_raw(&mut rng, 2)).unwrap();
            let fibers = orbit_sizes(&base).into_iter().map(|k| (g.clone(), k)).collect();
            let inhom = normalize(&QGroupExpr::InhomFreeWreath(fibers, Box::new(base.clone())));
            if inhom != free_wreath(g, base) {
                bad.push(format!("equal-fiber law fails over {n1:?}"));
            }
        }
        // A trivial base gives the free product of the fibers.
        let fibers: Vec<QGroupExpr> = (0..rng.gen_range(1..=3)).map(|_| random_raw(&mut rng, 2)).collect();
        let inhom = normalize(&QGroupExpr::InhomFreeWreath(
            fibers.iter().map(|g| (g.clone(), 1)).collect(),
            Box::new(QGroupExpr::Trivial),
        ));
        let prod = normalize(&QGroupExpr::FreeProduct(fibers.clone()));
        if inhom != prod || prod != free_product(fibers.iter().map(|f| normalize(f).unwrap()).collect()) {
            bad.push(format!("trivial-base law fails on {fibers:?}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "10000 expressions, {} violations{}",
            bad.len(),
            bad.first().map(|b| format!(", first: {b}")).unwrap_or_default()
        ),
    )
}

fn tree_purity() -> Outcome {
    let trees = all_trees();
    let impure = trees
        .iter()
        .filter(|t| {
            let e = qut(t, false).unwrap().expr;
            contains_inhom(&e) || !is_tree_class(&e)
        })
        .count();
    outcome(impure == 0, format!("{} trees, {impure} with inhomogeneous nodes", trees.len()))
}

fn relabel_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=10);
        let colors = rng.gen_range(1..=2);
        let g = match i % 3 {
            0 => random_connected(&mut rng, n, 0.0),
            1 => random_block_structure(&mut rng, n, BlockKind::Outerplanar, colors),
            _ => random_block_structure(&mut rng, n, BlockKind::Complete, colors),
        };
        let perm = random_permutation(&mut rng, n);
        let a = qut(&g, false).unwrap().expr;
        let b = qut(&g.permuted(&perm), false).unwrap().expr;
        if a != b {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("200 pairs, {bad} differences"))
}

fn canon_oracle() -> Outcome {
    let mut by_size: BTreeMap<usize, Vec<RootedGraph>> = BTreeMap::new();
    for t in all_trees() {
        for r in 0..t.n() {
            by_size
                .entry(t.n())
                .or_default()
                .push(RootedGraph::new(t.clone(), Some(r)).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut extra = 0;
    while extra < 200 {
        let n = rng.gen_range(2..=9);
        let kind = if extra % 2 == 0 { BlockKind::Outerplanar } else { BlockKind::Complete };
        let g = random_block_structure(&mut rng, n, kind, 1);
        let t = block_tree(&g).unwrap();
        let nodes = t.nodes();
        let node = nodes[rng.gen_range(0..nodes.len())];
        let (sub, _) = subgraph_below(&g, &t, node).unwrap();
        let perm = random_permutation(&mut rng, sub.graph.n());
        let twin = RootedGraph::new(sub.graph.permuted(&perm), sub.root.map(|r| perm[r])).unwrap();
        let bucket = by_size.entry(sub.graph.n() + 100).or_default();
        bucket.push(sub);
        bucket.push(twin);
        extra += 1;
    }
    let mut pairs = 0usize;
    let mut violations = Vec::new();
    for bucket in by_size.values() {
        let codes: Vec<_> = bucket.iter().map(|r| canon_code_any(r).unwrap()).collect();
        for i in 0..bucket.len() {
            for j in i..bucket.len() {
                pairs += 1;
                let same_code = codes[i] == codes[j];
                let iso = common::rooted_isomorphic(&bucket[i], &bucket[j]);
                if same_code != iso {
                    violations.push(format!("code {same_code} iso {iso}: {:?} / {:?}", bucket[i], bucket[j]));
                }
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{pairs} pairs, {} violations{}",
            violations.len(),
            violations.first().map(|v| format!(", first: {v}")).unwrap_or_default()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("golden atoms", golden_atoms),
        ("shadow equals |Aut|", shadow_agreement),
        ("biconnected outerplanar graphs are classical", no_quantum_symmetry),
        ("WL separates chords from cycle edges", wl_chord_separation),
        ("block decomposition, levels and center", block_machinery),
        ("normalization laws", normalization_laws),
        ("tree purity", tree_purity),
        ("relabel invariance", relabel_invariance),
        ("canonical codes match rooted isomorphism", canon_oracle),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let tag = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failed += 1;
        }
        println!("[{tag}] {}. {name}: {}", i + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
