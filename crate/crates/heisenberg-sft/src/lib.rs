//! Finite windows of a strongly aperiodic shift of finite type on the
//! discrete Heisenberg group.
//!
//! Every other `<y,z>`-coset carries a Robinson tiling; the cosets in between
//! carry binary counters whose most significant bits sit above and below the
//! Robinson crosses. The crate provides the group law, the 56 Robinson tiles,
//! the counter alphabet, a rule checker over finite boxes, closed-form
//! generators for valid windows, and a handful of structural analyzers.
//!
//! Neighbors are always taken by left multiplication `s·h`; the shift acts by
//! right multiplication.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analyze;
pub mod counter;
pub mod generate;
pub mod group;
pub mod robinson;
pub mod sft;


pub use counter::{CounterSym, Seg, Variant};
pub use group::Site;
pub use robinson::RobTile;
pub use sft::{Parity, RuleId, SiteBox, Symbol, Violation, Window};

