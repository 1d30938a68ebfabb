//! Finite category theory engine for Day convolution.
//!
//! Finite categories are explicit tables ([`fincat`]); symmetric monoidal
//! structures carry their coherence data ([`monoidal`]); the tensor
//! fibration over finite pointed sets lives in [`grothendieck`]; colimits and
//! Kan extensions into cocomplete targets in [`cocomplete`]; and Day
//! convolution, lax monoidal functors and the monoidal Yoneda embedding are
//! built on top of these.

pub mod error;
pub mod cocomplete;
pub mod day;
pub mod fincat;
pub mod grothendieck;
pub mod laxmon;
pub mod monoidal;
pub mod report;
pub mod yoneda;

pub use error::{Error, Result};
pub use report::ValidationReport;
