//! Grundy sequences for restricted Nim variants and the fractal
//! integer-sequence machinery they generate.
//!
//! Three games over a rule sequence f with 0 <= f(n) <= n:
//!
//! - **Maximum Nim**: remove at most f(m) stones from a pile of size m.
//!   For weakly increasing rules the Grundy sequence is self-similar
//!   (deleting all first instances reproduces it) and computable in
//!   linear time ([`maxnim`]).
//! - **Minimum Nim**: remove strictly more than f(m) stones. For
//!   regular rules the Grundy sequence is a step sequence driven by the
//!   function q(k) = min{j : j - f(j) > k}, and the pair of Maximum and
//!   Minimum values identifies the pile size ([`minnim`]).
//! - **Serial Nim**: ordered heaps, moves only in the leftmost nonempty
//!   heap; the value is always the first heap size or one less
//!   ([`serialnim`]).
//!
//! The [`fractal`] module houses the sequence side: the first-instance
//! deletion operator, fractal and interspersion checks, restrictions
//! and relabelings, associated position arrays, and the bijection
//! between fractal sequences and subadditive triangles.
//!
//! All sequences are 0-indexed with g_0 = 0; displays that start at
//! n = 1 are shifted by one. Everything works on explicit finite
//! windows, and checks report the window on which their verdict is
//! exact. Values are 64-bit; arithmetic that could overflow reports an
//! error instead of wrapping.

pub mod error;
pub mod fractal;
pub mod maxnim;
pub mod mex;
pub mod minnim;
pub mod prefix;
pub mod rule;
pub mod serialnim;

pub use error::{Error, Result};
pub use mex::mex;
pub use prefix::{Game, GrundyPrefix, Method};
pub use rule::{RuleKind, RuleSequence};
