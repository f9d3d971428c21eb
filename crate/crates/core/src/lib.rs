//! Quantum automorphism groups of colored forests, outerplanar graphs and
//! block graphs, computed recursively over the block tree.
//!
//! ```
//! use qblock::graph::named::cycle;
//! use qblock::{qut, render, Fmt};
//!
//! let res = qut(&cycle(4), false).unwrap();
//! assert_eq!(render(&res.expr, Fmt::Text), "S^+(2) wr* S^+(2)");
//! ```

pub mod blocks;
pub mod canon;
pub mod classrec;
pub mod cli;
pub mod engine;
pub mod error;
pub mod gen;
pub mod graph;
pub mod qexpr;
pub mod wl;

pub use blocks::{block_tree, BlockTree, Node, RootedGraph};
pub use classrec::{classify, GraphClass};
pub use engine::{qut, qut_with, shadow_check, Options, QutResult};
pub use error::{Error, Result};
pub use graph::{parse_graph, ColoredGraph, Format, VertexSet};
pub use qexpr::{render, Fmt, QGroupExpr};
