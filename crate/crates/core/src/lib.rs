//! Monochromatic cycle covers and minimum reload cost cycle covers of
//! 2-edge-colored complete graphs.
//!
//! The main entry point is [`mcca`], which returns a cycle cover whose edges
//! all share one color (hence reload cost zero) or gives up. The [`oracle`]
//! module solves small instances exactly and [`reduction`] completes general
//! instances with big-M colors.

pub mod coloring;
pub mod error;
pub mod graph;
pub mod hamiltonicity;
pub mod mcca;
pub mod oracle;
pub mod reduction;
pub mod reload;
pub mod rng;

pub use coloring::{classify, generate_equitable, generate_nearly_equitable, ColoringClass};
pub use error::{Error, Result};
pub use graph::{validate_cover, Color, ColoredCompleteGraph, CycleCover, SimpleGraph};
pub use mcca::{mcca, min_reload_cycle_cover, Branch, CoverStatus, MccaOutcome, MccaTrace};
pub use oracle::{Oracle, OracleResult};
pub use reload::{cover_cost, ReloadCostMatrix};
