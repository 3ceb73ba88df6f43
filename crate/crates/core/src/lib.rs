//! Finite posets, linear extension diameter and the reversal ratio.
//!
//! The crate is organised bottom-up:
//!
//! * [`poset`] holds the order itself (closure, covers, incomparable pairs,
//!   width, linear extension enumeration),
//! * [`linext`] measures distances between linear extensions and computes
//!   the linear extension diameter exactly or by local search,
//! * [`expander`] samples configuration-model bipartite graphs and checks
//!   vertex expansion,
//! * [`families`] generates the poset families studied here,
//! * [`bounds`] evaluates the analytic bounds and runs seeded experiments,
//! * [`format`] and [`report`] define the text and JSON interchange formats.

pub mod bounds;
pub mod error;
pub mod expander;
pub mod families;
pub mod format;
pub mod linext;
pub mod poset;
pub mod report;
pub mod seed;

pub(crate) mod bits;

pub use error::{Error, Result};
pub use linext::{LedMode, LedResult, LinearExtension, LocalSearchParams};
pub use poset::{IncPairIndex, Poset, DEFAULT_ENUMERATION_CAP};
pub use report::Report;
