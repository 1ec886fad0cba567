//! Exact GF(2) computation of the hat Heegaard Floer rank of spliced knot
//! complements, from models of their bifiltered complexes.
//!
//! The pipeline runs `cfk` (input complexes) to `surgery` (surgery groups
//! and exact triangles) to `duality` (normalized packages) to `splice`
//! (the block matrix and its rank). `filtration` computes the two
//! filtrations of the ambient homology and the identities linking them to
//! the package, and `report` collects checks into suites for the command
//! line.

pub mod cfk;
pub mod duality;
pub mod filtration;
pub mod gf2;
pub mod report;
pub mod splice;
pub mod surgery;

/// The guide's snippets, compiled as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/input.md")]
    struct Input;
    #[doc = include_str!("../../../book/src/packages.md")]
    struct Packages;
    #[doc = include_str!("../../../book/src/splice.md")]
    struct Splice;
    #[doc = include_str!("../../../book/src/filtration.md")]
    struct Filtration;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
    #[doc = include_str!("../../../book/src/reports.md")]
    struct Reports;
    #[doc = include_str!("../../../book/src/testing.md")]
    struct Testing;
}
