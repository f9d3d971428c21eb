use crate::blocks::RootedGraph;
use crate::error::{Error, Result};

/// Largest graph accepted by [`brute_force_isomorphism`].
pub const ISO_LIMIT: usize = 10;

/// Lexicographically least color- and root-preserving isomorphism `a -> b`,
/// found by exhaustive backtracking.
pub fn brute_force_isomorphism(a: &RootedGraph, b: &RootedGraph) -> Result<Option<Vec<usize>>> {
    for r in [a, b] {
        if r.graph.n() > ISO_LIMIT {
            return Err(Error::TooLarge {
                n: r.graph.n(),
                limit: ISO_LIMIT,
            });
        }
    }
    let (ga, gb) = (&a.graph, &b.graph);
    let n = ga.n();
    if n != gb.n() || ga.edge_count() != gb.edge_count() || a.root.is_some() != b.root.is_some() {
        return Ok(None);
    }
    let is_root = |r: &RootedGraph, v: usize| r.root == Some(v);

    fn go(
        a: &RootedGraph,
        b: &RootedGraph,
        v: usize,
        map: &mut Vec<usize>,
        used: &mut [bool],
        is_root: &dyn Fn(&RootedGraph, usize) -> bool,
    ) -> bool {
        let (ga, gb) = (&a.graph, &b.graph);
        if v == ga.n() {
            return true;
        }
        for u in 0..gb.n() {
            if used[u]
                || ga.color(v) != gb.color(u)
                || ga.degree(v) != gb.degree(u)
                || is_root(a, v) != is_root(b, u)
                || (0..v).any(|w| ga.has_edge(v, w) != gb.has_edge(u, map[w]))
            {
                continue;
            }
            map.push(u);
            used[u] = true;
            if go(a, b, v + 1, map, used, is_root) {
                return true;
            }
            used[u] = false;
            map.pop();
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(go(a, b, 0, &mut map, &mut used, &is_root).then_some(map))
}
