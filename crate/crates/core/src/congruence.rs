//! The Wohlfahrt congruence test.
//!
//! A finite-index subgroup of Gamma(2) of level `m` (twice the lcm of the
//! dessin's degrees) is a congruence subgroup iff it contains the principal
//! congruence subgroup Gamma(m). Gamma(m) itself is the stabilizer of the
//! identity in the right action of Gamma(2) on its image in PSL(2, Z/m), so
//! a BFS over that image yields a [`CosetTable`] whose Schreier words
//! generate Gamma(m) as words in `A`, `B`. Testing each generator for
//! membership on the dessin decides congruence; the first failure is a
//! witness.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::action::{CosetTable, EdgeAction};
use crate::dessin::Dessin;
use crate::perm::{Label, Permutation};
use crate::word::{ProjMatrix, Word};

/// Default cap on the index of Gamma(m) in Gamma(2).
pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

/// An element of PSL(2, Z/m): residues identified with their negatives.
/// The stored representative is the lexicographically smaller of the pair.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ModMatrix {
    m: u32,
    a: u32,
    b: u32,
    c: u32,
    d: u32,
}

impl ModMatrix {
    /// Reduces an integer matrix mod `m` (`m >= 2`).
    pub fn reduce(mat: &ProjMatrix, m: u32) -> ModMatrix {
        assert!(m >= 2, "modulus must be at least 2");
        let r = |x: i64| x.rem_euclid(m as i64) as u32;
        let (a, b, c, d) = mat.entries();
        ModMatrix::canonical(m, r(a), r(b), r(c), r(d))
    }

    pub fn identity(m: u32) -> ModMatrix {
        assert!(m >= 2, "modulus must be at least 2");
        ModMatrix::canonical(m, 1, 0, 0, 1)
    }

    fn canonical(m: u32, a: u32, b: u32, c: u32, d: u32) -> ModMatrix {
        let neg = |x: u32| (m - x) % m;
        let flipped = (neg(a), neg(b), neg(c), neg(d));
        if flipped < (a, b, c, d) {
            ModMatrix { m, a: flipped.0, b: flipped.1, c: flipped.2, d: flipped.3 }
        } else {
            ModMatrix { m, a, b, c, d }
        }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// The representative as `(a, b, c, d)`.
    pub fn entries(&self) -> (u32, u32, u32, u32) {
        (self.a, self.b, self.c, self.d)
    }

    /// Product mod `m`; both factors must share the modulus.
    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.m, other.m, "moduli differ");
        let m = self.m as u64;
        let e = |x: u64| (x % m) as u32;
        let (a, b, c, d) = (self.a as u64, self.b as u64, self.c as u64, self.d as u64);
        let (p, q, r, s) = (other.a as u64, other.b as u64, other.c as u64, other.d as u64);
        ModMatrix::canonical(
            self.m,
            e(a * p + b * r),
            e(a * q + b * s),
            e(c * p + d * r),
            e(c * q + d * s),
        )
    }

    /// True iff the class is `±I mod m`.
    pub fn is_identity(&self) -> bool {
        *self == ModMatrix::identity(self.m)
    }
}

/// Errors from [`quotient_table`] and [`gamma_m_generators`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    /// The modulus must be an even number at least 2 (levels always are).
    InvalidModulus { m: u32 },
    /// The coset enumeration would exceed the cap.
    BudgetExceeded { max_cosets: usize },
}

impl fmt::Display for CongruenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceError::InvalidModulus { m } => {
                write!(f, "modulus {m} is not an even number >= 2")
            }
            CongruenceError::BudgetExceeded { max_cosets } => {
                write!(f, "coset enumeration exceeds the cap of {max_cosets}")
            }
        }
    }
}

impl core::error::Error for CongruenceError {}

/// Outcome of [`decide`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CongruenceVerdict {
    /// Every generator of Gamma(level) is a loop: the subgroup is congruence.
    Congruence {
        /// The index of Gamma(level) in Gamma(2).
        quotient_index: usize,
    },
    /// Some generator of Gamma(level) fails membership.
    Noncongruence {
        quotient_index: usize,
        /// The first failing generator in BFS order.
        witness: Word,
    },
    /// The quotient is larger than the coset cap; undecided.
    BudgetExceeded { max_cosets: usize },
}

impl CongruenceVerdict {
    pub fn is_congruence(&self) -> bool {
        matches!(self, CongruenceVerdict::Congruence { .. })
    }

    pub fn quotient_index(&self) -> Option<usize> {
        match self {
            CongruenceVerdict::Congruence { quotient_index }
            | CongruenceVerdict::Noncongruence { quotient_index, .. } => Some(*quotient_index),
            CongruenceVerdict::BudgetExceeded { .. } => None,
        }
    }

    /// Number of Gamma(level) generators tested (`index + 1`).
    pub fn generator_count(&self) -> Option<usize> {
        self.quotient_index().map(|i| i + 1)
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            CongruenceVerdict::Noncongruence { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// Enumerates the image of Gamma(2) in PSL(2, Z/m) by BFS from the identity
/// (right multiplication, order `A`, `B`, `A^-1`, `B^-1`) and returns the
/// coset table of Gamma(m) in Gamma(2). Cosets are numbered in discovery
/// order starting at 1.
pub fn quotient_table(m: u32, max_cosets: usize) -> Result<CosetTable, CongruenceError> {
    if m < 2 || !m.is_multiple_of(2) {
        return Err(CongruenceError::InvalidModulus { m });
    }
    // The index is m^3/12 * prod(1 - p^-2) > m^3/20, so a cheap size check
    // avoids hopeless enumerations.
    if (m as u128).pow(3) / 20 > max_cosets as u128 {
        return Err(CongruenceError::BudgetExceeded { max_cosets });
    }
    let gens = [
        ModMatrix::reduce(&ProjMatrix::gen_a(1), m),
        ModMatrix::reduce(&ProjMatrix::gen_b(1), m),
        ModMatrix::reduce(&ProjMatrix::gen_a(-1), m),
        ModMatrix::reduce(&ProjMatrix::gen_b(-1), m),
    ];
    let mut index_of: BTreeMap<ModMatrix, u32> = BTreeMap::new();
    let mut reps: Vec<ModMatrix> = Vec::new();
    let mut arrow_a: Vec<Label> = Vec::new();
    let mut arrow_b: Vec<Label> = Vec::new();
    index_of.insert(ModMatrix::identity(m), 1);
    reps.push(ModMatrix::identity(m));
    let mut next = 0usize;
    while next < reps.len() {
        let current = reps[next];
        next += 1;
        let mut images = [0 as Label; 4];
        for (slot, gen) in images.iter_mut().zip(&gens) {
            let product = current.mul(gen);
            let fresh = reps.len() as Label + 1;
            let label = *index_of.entry(product).or_insert_with(|| {
                reps.push(product);
                fresh
            });
            if reps.len() > max_cosets {
                return Err(CongruenceError::BudgetExceeded { max_cosets });
            }
            *slot = label;
        }
        arrow_a.push(images[0]);
        arrow_b.push(images[1]);
    }
    let arrow_a = Permutation::from_images(arrow_a).expect("right multiplication is a bijection");
    let arrow_b = Permutation::from_images(arrow_b).expect("right multiplication is a bijection");
    Ok(CosetTable::new(EdgeAction::from_arrows(arrow_a, arrow_b, 1)))
}

/// Free generators of Gamma(m) as words in `A`, `B` (the Schreier basis of
/// the quotient table): always `index + 1` words.
pub fn gamma_m_generators(m: u32, max_cosets: usize) -> Result<Vec<Word>, CongruenceError> {
    Ok(quotient_table(m, max_cosets)?.schreier_generators())
}

/// Decides congruence for the subgroup attached to `d` by testing every
/// generator of Gamma(level) for membership.
pub fn decide(d: &Dessin, max_cosets: usize) -> CongruenceVerdict {
    let level = d.level();
    let m = match u32::try_from(level) {
        Ok(m) => m,
        // The quotient would dwarf any practical budget.
        Err(_) => return CongruenceVerdict::BudgetExceeded { max_cosets },
    };
    let table = match quotient_table(m, max_cosets) {
        Ok(table) => table,
        Err(CongruenceError::BudgetExceeded { max_cosets }) => {
            return CongruenceVerdict::BudgetExceeded { max_cosets }
        }
        Err(CongruenceError::InvalidModulus { m }) => {
            unreachable!("level {m} is always even")
        }
    };
    let quotient_index = table.size();
    let act = EdgeAction::new(d);
    for witness in table.schreier_generators() {
        if !act.is_member(&witness) {
            return CongruenceVerdict::Noncongruence { quotient_index, witness };
        }
    }
    CongruenceVerdict::Congruence { quotient_index }
}
