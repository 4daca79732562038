//! Exact graph minrank over prime fields, with the surrounding toolkit:
//! zero-pattern counting, the union bound for random graphs, geometric
//! constructions of low-rank fits, and a reproducible experiment harness.
//!
//! The guide under `book/` walks through each module; its code blocks are
//! compiled as doctests of this crate.

pub mod algebra;
pub mod bounds;
pub mod experiment;
pub mod geom;
pub mod graph;
pub mod minrank;
pub mod pattern;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/minrank.md")]
    mod minrank {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
