//! The dessin a subgroup induces for the full modular group Gamma(1).
//!
//! Gamma(1) = PSL(2, Z) is generated by `S = [0 -1; 1 0]` (order 2) and
//! `U = TS` (order 3, `T = [1 1; 0 1]`). A subgroup of Gamma(2) also has
//! finite index in Gamma(1), and its Gamma(1)-dessin has the cosets of the
//! subgroup in Gamma(1) as edges, `U` acting as the black rotation and `S`
//! as the white one.
//!
//! Since Gamma(1) splits over Gamma(2) into six cosets, every Gamma(1)-coset
//! factors uniquely as (Gamma(2)-coset) * (transversal element): edges are
//! pairs `(e, j)` of a source edge and a transversal index. Multiplying a
//! transversal representative by `S` or `U` lands in some `Gamma(2) * c_j'`,
//! and the Gamma(2) part, rewritten as a word in `A`, `B`, moves `e` through
//! the source dessin's edge action.

use alloc::vec;
use alloc::vec::Vec;

use crate::action::EdgeAction;
use crate::dessin::Dessin;
use crate::perm::{Label, Permutation};
use crate::word::{ProjMatrix, Word};

/// `T = [1 1; 0 1]`.
fn gen_t() -> ProjMatrix {
    ProjMatrix::new(1, 1, 0, 1).expect("det 1")
}

/// `S = [0 -1; 1 0]`.
fn gen_s() -> ProjMatrix {
    ProjMatrix::new(0, -1, 1, 0).expect("det 1")
}

fn mod2_key(m: &ProjMatrix) -> (u8, u8, u8, u8) {
    let (a, b, c, d) = m.entries();
    let r = |x: i64| x.rem_euclid(2) as u8;
    (r(a), r(b), r(c), r(d))
}

/// A transversal of Gamma(2) in Gamma(1): one representative per element of
/// PSL(2, Z/2), found by BFS over right multiplication by `T` then `S`
/// starting from the identity. The result is
/// `[I, T, S, TS, ST, TST]` (word length at most 3), identity first.
pub fn gamma2_transversal() -> [ProjMatrix; 6] {
    let steps = [gen_t(), gen_s()];
    let mut reps: Vec<ProjMatrix> = vec![ProjMatrix::identity()];
    let mut keys: Vec<(u8, u8, u8, u8)> = vec![mod2_key(&ProjMatrix::identity())];
    let mut next = 0;
    while next < reps.len() {
        let current = reps[next];
        next += 1;
        for step in &steps {
            let candidate = current.mul(step);
            let key = mod2_key(&candidate);
            if !keys.contains(&key) {
                keys.push(key);
                reps.push(candidate);
            }
        }
    }
    reps.try_into().expect("PSL(2, Z/2) has six elements")
}

/// The Gamma(1)-dessin of a Gamma(2)-dessin: `6n` edges, one per pair
/// `(e, j)` of a source edge and a transversal index `j` in `1..=6`,
/// flattened row-major as `6(e-1) + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma1Dessin {
    source_edges: usize,
    dessin: Dessin,
}

impl Gamma1Dessin {
    /// Edge count of the source dessin.
    pub fn source_edges(&self) -> usize {
        self.source_edges
    }

    /// Edge count (`6n`).
    pub fn edge_count(&self) -> usize {
        self.dessin.n()
    }

    /// The flat label of the pair `(e, j)`, `j` in `1..=6`.
    pub fn label(e: Label, j: u8) -> Label {
        assert!((1..=6).contains(&j), "transversal index outside 1..=6");
        6 * (e - 1) + j as Label
    }

    /// The pair `(e, j)` of a flat label.
    pub fn pair(label: Label) -> (Label, u8) {
        ((label - 1) / 6 + 1, ((label - 1) % 6 + 1) as u8)
    }

    /// The underlying dessin: `sigma` is the `U`-action (every black vertex
    /// has degree 3), `alpha` the `S`-action (every white vertex degree 2),
    /// marked at `(source mark, 1)`.
    pub fn dessin(&self) -> &Dessin {
        &self.dessin
    }
}

/// Builds the Gamma(1)-dessin (see [`Gamma1Dessin`]). The black rotation is
/// the action of `U = TS`, the white rotation the action of `S`; the genus
/// is preserved and the face degrees double the source's vertex and face
/// degrees.
pub fn to_gamma1(d: &Dessin) -> Gamma1Dessin {
    let reps = gamma2_transversal();
    let keys: Vec<_> = reps.iter().map(mod2_key).collect();
    let s = gen_s();
    let u = gen_t().mul(&s);
    let act = EdgeAction::new(d);
    let n = d.n();
    // For each transversal index and generator: the landing index j' and the
    // Gamma(2) word h = c_j * g * c_j'^-1 (independent of the edge).
    let routes = |g: &ProjMatrix| -> Vec<(usize, Word)> {
        (0..6)
            .map(|j| {
                let m = reps[j].mul(g);
                let key = mod2_key(&m);
                let jp = keys.iter().position(|k| *k == key).expect("transversal covers PSL(2, Z/2)");
                let h = m.mul(&reps[jp].inverse());
                assert!(h.in_gamma2(), "transversal defect: {h} is outside Gamma(2)");
                (jp, h.to_word().expect("h lies in Gamma(2)"))
            })
            .collect()
    };
    let build = |routes: &[(usize, Word)]| -> Permutation {
        let mut images = vec![0 as Label; 6 * n];
        for e in 1..=n as Label {
            for (j, (jp, h)) in routes.iter().enumerate() {
                let ep = act.end_from(e, h);
                images[(Gamma1Dessin::label(e, j as u8 + 1) - 1) as usize] =
                    Gamma1Dessin::label(ep, *jp as u8 + 1);
            }
        }
        Permutation::from_images(images).expect("a group action permutes the edges")
    };
    let sigma1 = build(&routes(&u));
    let alpha1 = build(&routes(&s));
    let marked = Gamma1Dessin::label(d.marked(), 1);
    Gamma1Dessin {
        source_edges: n,
        dessin: Dessin::new(sigma1, alpha1, marked)
            .expect("Gamma(1) acts transitively on its cosets"),
    }
}
