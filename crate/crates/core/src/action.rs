//! The right action of Gamma(2) on dessin edges, and Schreier generators.
//!
//! Edges of an `n`-edge dessin correspond to the right cosets of an index-`n`
//! subgroup of Gamma(2), the marked edge to the subgroup itself. The
//! generator `A` rotates counterclockwise within a face and the generator
//! `B` clockwise around the black vertex, so `A` acts as the face rotation
//! `phi` and `B` as `sigma^-1`. A word is traced letter by letter, left to
//! right, from the marked edge; it lies in the subgroup iff the trace
//! returns to the marked edge.
//!
//! [`CosetTable`] runs a BFS over any such pair of arrow permutations
//! (edge actions here, Gamma(m)-coset actions in [`crate::congruence`]) and
//! emits the Schreier generators of the point stabilizer: one word per
//! non-tree arrow, which for a free group of rank 2 acting on `N` points is
//! a free basis of size `N + 1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::dessin::Dessin;
use crate::perm::{Label, Permutation};
use crate::word::{Letter, Word};

/// The action of `A` and `B` on edge labels, with a base point.
#[derive(Clone, Debug)]
pub struct EdgeAction {
    rho_a: Permutation,
    rho_b: Permutation,
    rho_a_inv: Permutation,
    rho_b_inv: Permutation,
    base: Label,
}

impl EdgeAction {
    /// The edge action of a dessin: `A` acts as `faces()`, `B` as
    /// `sigma^-1`, based at the marked edge.
    pub fn new(d: &Dessin) -> Self {
        let rho_a = d.faces();
        let rho_b = d.sigma().inverse();
        EdgeAction {
            rho_a_inv: rho_a.inverse(),
            rho_b_inv: rho_b.inverse(),
            rho_a,
            rho_b,
            base: d.marked(),
        }
    }

    /// Builds an action from explicit arrow permutations.
    pub fn from_arrows(rho_a: Permutation, rho_b: Permutation, base: Label) -> Self {
        assert_eq!(rho_a.len(), rho_b.len(), "arrow permutations differ in size");
        assert!(
            base >= 1 && base as usize <= rho_a.len(),
            "base point outside 1..=n"
        );
        EdgeAction {
            rho_a_inv: rho_a.inverse(),
            rho_b_inv: rho_b.inverse(),
            rho_a,
            rho_b,
            base,
        }
    }

    pub fn rho_a(&self) -> &Permutation {
        &self.rho_a
    }

    pub fn rho_b(&self) -> &Permutation {
        &self.rho_b
    }

    pub fn base(&self) -> Label {
        self.base
    }

    /// One letter step from `x`.
    fn step(&self, x: Label, letter: Letter, inverted: bool) -> Label {
        match (letter, inverted) {
            (Letter::A, false) => self.rho_a.apply(x),
            (Letter::A, true) => self.rho_a_inv.apply(x),
            (Letter::B, false) => self.rho_b.apply(x),
            (Letter::B, true) => self.rho_b_inv.apply(x),
        }
    }

    /// The end of the trace of `w` started at `start`.
    pub fn end_from(&self, start: Label, w: &Word) -> Label {
        w.letters()
            .fold(start, |x, (letter, inverted)| self.step(x, letter, inverted))
    }

    /// The edges visited tracing `w` from the base, base included
    /// (`letter_len(w) + 1` entries).
    pub fn trace(&self, w: &Word) -> Vec<Label> {
        let mut path = Vec::with_capacity(w.letter_len() as usize + 1);
        let mut x = self.base;
        path.push(x);
        for (letter, inverted) in w.letters() {
            x = self.step(x, letter, inverted);
            path.push(x);
        }
        path
    }

    /// True iff `w` lies in the subgroup attached to the base point, i.e.
    /// the trace is a loop.
    pub fn is_member(&self, w: &Word) -> bool {
        self.end_from(self.base, w) == self.base
    }
}

/// The edges visited tracing `w` from the marked edge of `d`.
pub fn trace(d: &Dessin, w: &Word) -> Vec<Label> {
    EdgeAction::new(d).trace(w)
}

/// True iff `w` lies in the subgroup of Gamma(2) attached to `d`.
pub fn is_member(d: &Dessin, w: &Word) -> bool {
    EdgeAction::new(d).is_member(w)
}

/// A free generating set for the subgroup attached to `d`: always exactly
/// `n + 1` words, each a loop at the marked edge.
pub fn group_generators(d: &Dessin) -> Vec<Word> {
    CosetTable::new(EdgeAction::new(d)).schreier_generators()
}

/// A BFS coset table over a transitive pair of arrow permutations.
///
/// The BFS from the base tries, at every point and in this order, the
/// arrows `A`, `B`, `A^-1`, `B^-1`; points are kept in discovery order and
/// the tree paths provide a transversal word per point.
pub struct CosetTable {
    action: EdgeAction,
    /// Points in BFS discovery order; `discovery[0]` is the base.
    discovery: Vec<Label>,
    /// BFS tree step that discovered each point: `(parent, letter, inverted)`.
    parent: Vec<Option<(Label, Letter, bool)>>,
    /// Whether the positive `A`-arrow out of each point belongs to the tree.
    tree_a: Vec<bool>,
    /// Whether the positive `B`-arrow out of each point belongs to the tree.
    tree_b: Vec<bool>,
}

impl CosetTable {
    /// Runs the BFS. Panics if the arrows do not act transitively.
    pub fn new(action: EdgeAction) -> Self {
        let n = action.rho_a.len();
        let mut discovery = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        let mut tree_a = vec![false; n];
        let mut tree_b = vec![false; n];
        let mut seen = vec![false; n];
        let mut queue = alloc::collections::VecDeque::new();
        seen[action.base as usize - 1] = true;
        discovery.push(action.base);
        queue.push_back(action.base);
        while let Some(x) = queue.pop_front() {
            for (letter, inverted) in
                [(Letter::A, false), (Letter::B, false), (Letter::A, true), (Letter::B, true)]
            {
                let y = action.step(x, letter, inverted);
                if seen[y as usize - 1] {
                    continue;
                }
                seen[y as usize - 1] = true;
                parent[y as usize - 1] = Some((x, letter, inverted));
                // Record which positive arrow the tree edge uses: x -> y for
                // a forward step, y -> x for an inverted one.
                let (tree, from) = match letter {
                    Letter::A => (&mut tree_a, if inverted { y } else { x }),
                    Letter::B => (&mut tree_b, if inverted { y } else { x }),
                };
                tree[from as usize - 1] = true;
                discovery.push(y);
                queue.push_back(y);
            }
        }
        assert_eq!(discovery.len(), n, "arrows must act transitively");
        CosetTable { action, discovery, parent, tree_a, tree_b }
    }

    /// Number of points (the index of the stabilizer subgroup).
    pub fn size(&self) -> usize {
        self.action.rho_a.len()
    }

    pub fn base(&self) -> Label {
        self.action.base
    }

    /// Points in BFS discovery order.
    pub fn discovery(&self) -> &[Label] {
        &self.discovery
    }

    /// The word labeling the BFS tree path from the base to `x`; applying it
    /// to the base ends at `x`.
    pub fn transversal(&self, x: Label) -> Word {
        let mut steps = Vec::new();
        let mut cur = x;
        while let Some((p, letter, inverted)) = self.parent[cur as usize - 1] {
            steps.push((letter, inverted));
            cur = p;
        }
        let mut w = Word::identity();
        for &(letter, inverted) in steps.iter().rev() {
            w.push(letter, if inverted { -1 } else { 1 });
        }
        w
    }

    /// Schreier generators of the base-point stabilizer: for every non-tree
    /// positive arrow `x -> y` labeled `g`, the reduced word
    /// `transversal(x) g transversal(y)^-1`. Points are visited in discovery
    /// order, `A`-arrows before `B`-arrows; empty words are dropped.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let mut out = Vec::with_capacity(self.size() + 1);
        for &x in &self.discovery {
            for letter in [Letter::A, Letter::B] {
                let tree = match letter {
                    Letter::A => &self.tree_a,
                    Letter::B => &self.tree_b,
                };
                if tree[x as usize - 1] {
                    continue;
                }
                let y = self.action.step(x, letter, false);
                let word = self
                    .transversal(x)
                    .concat(&Word::syllable(letter, 1))
                    .concat(&self.transversal(y).inverse());
                if !word.is_identity() {
                    out.push(word);
                }
            }
        }
        out
    }
}
