//! Exact enumeration of rectangular brick buildings and bounds on their
//! growth constant.
//!
//! The crate is `no_std` and only needs `alloc`. It contains
//!
//! * [`geometry`]: bricks, placements, collisions, contact and canonical keys;
//! * [`formulas`]: closed forms for tall towers in exact arithmetic;
//! * [`enumerator`]: translation/rotation class counts `T(n)`, `H(n, m)` and
//!   the anchored counts `a_n`, `b_n`, `c_n`;
//! * [`decomposition`]: splitting single-top buildings at bottleneck layers;
//! * [`tape`]: the integer-sequence encoding of anchored buildings;
//! * [`bounds`]: upper and lower bounds on the growth constant.
//!
//! Threads, clocks and IO live in the companion `brickcount` crate.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod decomposition;
pub mod enumerator;
pub mod formulas;
pub mod geometry;
pub mod tape;

pub use enumerator::{CountLedger, EnumError};
pub use formulas::ExactInt;
pub use geometry::{BrickShape, CanonicalKey, Configuration, Orientation, Placement};
