//! Expressions for quantum permutation groups built from quantum symmetric
//! groups and classical permutation groups with free products and (free,
//! inhomogeneous) wreath products.
//!
//! Values are kept in a normal form by the smart constructors
//! [`sym_q`], [`classical`], [`free_product`], [`free_wreath`] and
//! [`inhom_free_wreath`]; [`normalize`] rebuilds an arbitrary tree with them.

mod render;

use num_bigint::BigUint;

pub use render::{from_json, render, to_json, Fmt};

use crate::canon::ClassicalPermGroup;
use crate::error::{Error, Result};
use crate::graph::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QGroupExpr {
    Trivial,
    SymQ(usize),
    Classical(ClassicalPermGroup),
    FreeProduct(Vec<QGroupExpr>),
    FreeWreath(Box<QGroupExpr>, Box<QGroupExpr>),
    /// One `(fiber, orbit size)` entry per orbit of the base, in the base's
    /// orbit order.
    InhomFreeWreath(Vec<(QGroupExpr, usize)>, Box<QGroupExpr>),
}

use QGroupExpr::*;

pub fn sym_q(n: usize) -> QGroupExpr {
    if n <= 1 {
        Trivial
    } else {
        SymQ(n)
    }
}

/// A classical group, restricted to the points it moves.
pub fn classical(g: ClassicalPermGroup) -> QGroupExpr {
    if g.order() == 1 {
        return Trivial;
    }
    let g = if g.support().len() == g.degree() {
        g
    } else {
        g.restrict_to_support()
    };
    Classical(g)
}

pub fn free_product(factors: Vec<QGroupExpr>) -> Result<QGroupExpr> {
    if factors.is_empty() {
        return Err(Error::EmptyList);
    }
    let mut flat = Vec::with_capacity(factors.len());
    for f in factors {
        match f {
            Trivial => {}
            FreeProduct(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    flat.sort();
    Ok(match flat.len() {
        0 => Trivial,
        1 => flat.pop().unwrap(),
        _ => FreeProduct(flat),
    })
}

pub fn free_wreath(inner: QGroupExpr, outer: QGroupExpr) -> Result<QGroupExpr> {
    match &outer {
        SymQ(0) => return Err(Error::BadOuter("S^+(0)".into())),
        Classical(g) if g.degree() == 0 => return Err(Error::BadOuter("degree 0".into())),
        _ => {}
    }
    Ok(match (inner, outer) {
        (inner, Trivial) => inner,
        (Trivial, outer) => outer,
        (inner, FreeProduct(hs)) => free_product(
            hs.into_iter()
                .map(|h| free_wreath(inner.clone(), h))
                .collect::<Result<Vec<_>>>()?,
        )?,
        (inner, outer) => FreeWreath(Box::new(inner), Box::new(outer)),
    })
}

pub fn inhom_free_wreath(factors: Vec<(QGroupExpr, usize)>, base: QGroupExpr) -> Result<QGroupExpr> {
    if factors.is_empty() {
        return Err(Error::OrbitMismatch("no fibers".into()));
    }
    if factors.iter().any(|&(_, k)| k == 0) {
        return Err(Error::OrbitMismatch("empty orbit".into()));
    }
    if base == Trivial {
        if factors.iter().any(|&(_, k)| k != 1) {
            return Err(Error::OrbitMismatch(
                "the trivial group has only singleton orbits".into(),
            ));
        }
        return free_product(factors.into_iter().map(|(g, _)| g).collect());
    }
    let sizes: Vec<usize> = factors.iter().map(|&(_, k)| k).collect();
    let expected = orbit_sizes(&base);
    if sizes != expected {
        return Err(Error::OrbitMismatch(format!(
            "fibers cover orbits {sizes:?}, base has orbits {expected:?}"
        )));
    }
    if factors.iter().all(|(g, _)| *g == factors[0].0) {
        let g = factors.into_iter().next().unwrap().0;
        return free_wreath(g, base);
    }
    if let FreeProduct(hs) = base {
        let mut rest = factors.into_iter();
        let mut parts = Vec::with_capacity(hs.len());
        for h in hs {
            let chunk: Vec<_> = rest.by_ref().take(orbit_sizes(&h).len()).collect();
            parts.push(inhom_free_wreath(chunk, h)?);
        }
        return free_product(parts);
    }
    Ok(InhomFreeWreath(factors, Box::new(base)))
}

/// Rebuilds `e` bottom-up through the smart constructors.
pub fn normalize(e: &QGroupExpr) -> Result<QGroupExpr> {
    Ok(match e {
        Trivial => Trivial,
        SymQ(n) => sym_q(*n),
        Classical(g) => classical(g.clone()),
        FreeProduct(fs) => free_product(fs.iter().map(normalize).collect::<Result<_>>()?)?,
        FreeWreath(g, h) => free_wreath(normalize(g)?, normalize(h)?)?,
        InhomFreeWreath(fs, h) => inhom_free_wreath(
            fs.iter()
                .map(|(g, k)| Ok((normalize(g)?, *k)))
                .collect::<Result<_>>()?,
            normalize(h)?,
        )?,
    })
}

/// Sizes of the orbits on the points the expression acts on, in point order.
/// The trivial group is taken to act on a single point.
pub fn orbit_sizes(e: &QGroupExpr) -> Vec<usize> {
    match e {
        Trivial => vec![1],
        SymQ(n) => vec![*n],
        Classical(g) => g
            .orbits(&(0..g.degree()).collect::<VertexSet>())
            .iter()
            .map(VertexSet::len)
            .collect(),
        FreeProduct(fs) => fs.iter().flat_map(orbit_sizes).collect(),
        FreeWreath(g, h) => {
            let inner = orbit_sizes(g);
            orbit_sizes(h)
                .into_iter()
                .flat_map(|k| inner.iter().map(move |&o| o * k).collect::<Vec<_>>())
                .collect()
        }
        InhomFreeWreath(fs, _) => fs
            .iter()
            .flat_map(|(g, k)| orbit_sizes(g).into_iter().map(move |o| o * k))
            .collect(),
    }
}

pub fn degree(e: &QGroupExpr) -> usize {
    orbit_sizes(e).iter().sum()
}

/// Whether the expression denotes a classical group (commutative function
/// algebra): the trivial group, classical groups, and `S^+(n)` for `n ≤ 3`.
/// Normalized free products and free wreath products always have two freely
/// independent nontrivial pieces and are quantum.
pub fn is_classical(e: &QGroupExpr) -> bool {
    match e {
        Trivial | Classical(_) => true,
        SymQ(n) => *n <= 3,
        FreeProduct(_) | FreeWreath(..) | InhomFreeWreath(..) => false,
    }
}

/// Order of the classical group obtained by replacing every free construction
/// by its classical counterpart.
pub fn classical_shadow_order(e: &QGroupExpr) -> BigUint {
    match e {
        Trivial => BigUint::from(1u32),
        SymQ(n) => (1..=*n as u64).map(BigUint::from).product(),
        Classical(g) => BigUint::from(g.order()),
        FreeProduct(fs) => fs.iter().map(classical_shadow_order).product(),
        FreeWreath(g, h) => {
            classical_shadow_order(g).pow(degree(h) as u32) * classical_shadow_order(h)
        }
        InhomFreeWreath(fs, h) => {
            fs.iter()
                .map(|(g, k)| classical_shadow_order(g).pow(*k as u32))
                .product::<BigUint>()
                * classical_shadow_order(h)
        }
    }
}

/// Vertex orbits of a quantum automorphism group pinned between the
/// classical orbits (finer) and the 2-WL vertex classes (coarser). Only when
/// the two agree are the quantum orbits determined.
pub fn quantum_orbits(aut_orbits: &[VertexSet], wl_classes: &[VertexSet]) -> Result<Vec<VertexSet>> {
    let mut aut = aut_orbits.to_vec();
    let mut wl = wl_classes.to_vec();
    aut.sort();
    wl.sort();
    if aut == wl {
        Ok(aut)
    } else {
        Err(Error::OrbitGap {
            aut: aut.into_iter().map(VertexSet::into_vec).collect(),
            wl: wl.into_iter().map(VertexSet::into_vec).collect(),
        })
    }
}

pub fn contains_inhom(e: &QGroupExpr) -> bool {
    match e {
        Trivial | SymQ(_) | Classical(_) => false,
        FreeProduct(fs) => fs.iter().any(contains_inhom),
        FreeWreath(g, h) => contains_inhom(g) || contains_inhom(h),
        InhomFreeWreath(..) => true,
    }
}

/// Built from `1` by free products and free wreath products with `S^+(n)`.
pub fn is_tree_class(e: &QGroupExpr) -> bool {
    match e {
        Trivial | SymQ(_) => true,
        Classical(_) | InhomFreeWreath(..) => false,
        FreeProduct(fs) => fs.iter().all(is_tree_class),
        FreeWreath(g, h) => matches!(**h, SymQ(_)) && is_tree_class(g),
    }
}
