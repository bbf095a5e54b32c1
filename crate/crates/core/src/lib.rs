//! Dessins d'enfants as computational stand-ins for finite-index subgroups
//! of Gamma(2), the principal congruence subgroup of level 2 in PSL(2, Z).
//!
//! A dessin is a transitive pair of permutations `(sigma, alpha)` of the
//! edge labels `{1..n}` together with a marked edge: `sigma` rotates edges
//! counterclockwise around black vertices, `alpha` around white vertices.
//! Gamma(2) is free on
//!
//! ```text
//! A = [1 2]      B = [1 0]
//!     [0 1],         [2 1],
//! ```
//!
//! and the edges of a dessin carry a right action of Gamma(2) (see [`action`])
//! under which the marked edge's stabilizer is a subgroup of index `n`. The
//! crate computes both directions of that correspondence and the standard
//! invariants on top of it:
//!
//! * [`perm`] — permutations of `{1..n}` in cycle notation,
//! * [`word`] — free words in `A`, `B` and projective integer matrices,
//! * [`dessin`] — the dessin type, degree reports, level, genus, file format,
//! * [`action`] — edge actions, word tracing, membership, Schreier generators,
//! * [`larcher`] — cusp-width filters certifying noncongruence,
//! * [`congruence`] — the Wohlfahrt test: congruence iff Gamma(level) is contained,
//! * [`gamma1`] — the induced dessin for the full modular group Gamma(1).
//!
//! The crate is `no_std` (with `alloc`); all computation is exact.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod action;
pub mod congruence;
pub mod dessin;
pub mod gamma1;
pub mod larcher;
pub mod perm;
pub mod word;

pub use action::{group_generators, is_member, trace, CosetTable, EdgeAction};
pub use congruence::{decide, CongruenceVerdict, DEFAULT_MAX_COSETS};
pub use dessin::{Dessin, DegreeReport};
pub use perm::{Label, Permutation};
pub use word::{Letter, ProjMatrix, Word};
