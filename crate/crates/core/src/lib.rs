//! Divisor theory on metric multigraphs.
//!
//! The crate computes Baker–Norine ranks of divisors by chip-firing and
//! Dhar's burning algorithm, cross-checks them against an integer-lattice
//! oracle, and produces self-validating certificates that every metric on
//! the Heawood graph carries a degree-7 divisor of rank 2, so that each such
//! metric graph is Brill–Noether special.
//!
//! ```
//! use chipfire::{brill_noether, catalog, chip_firing, divisor::Divisor, graph};
//!
//! let heawood = catalog::heawood();
//! let black = graph::bipartition(&heawood).unwrap().black;
//! let d_b = Divisor::from_vertices(&heawood, &black);
//! let m = graph::MetricMultigraph::unit(heawood);
//! let opts = chip_firing::RankOptions::default();
//! let rank = chip_firing::rank_metric(&m, &d_b, Some(&black), &opts).unwrap();
//! assert_eq!((d_b.degree(), rank.rank()), (7, 2));
//! assert_eq!(brill_noether::rho(8, 2, 7), -1);
//! ```

pub mod brill_noether;
pub mod catalog;
pub mod chip_firing;
pub mod divisor;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod rational;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/chip-firing.md")]
    mod chip_firing {}
    #[doc = include_str!("../../../book/src/rank.md")]
    mod rank {}
    #[doc = include_str!("../../../book/src/heawood.md")]
    mod heawood {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
