//! Dessins: transitive permutation pairs with a marked edge.
//!
//! A dessin on `n` edges is a bipartite graph embedded in an oriented
//! surface, encoded by two permutations of the edge labels `{1..n}`:
//! `sigma` lists the edges counterclockwise around each black vertex and
//! `alpha` does the same around each white vertex. The faces are the cycles
//! of the counterclockwise face rotation `phi = (sigma * alpha)^-1` (product
//! left to right). Vertex and face degrees determine the level
//! `2 * lcm(degrees)` and the Euler formula `V - n + F = 2 - 2g` the genus.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! edges = 3
//! sigma = (1 2 3)
//! alpha =
//! marked = 1
//! ```
//!
//! `marked` defaults to 1; an empty cycle list is the identity.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::perm::{self, format_cycles, is_transitive, parse_cycles, Label, PermError, Permutation};

/// A transitive pair of permutations of `{1..n}` plus a marked edge.
#[derive(Clone, PartialEq, Eq)]
pub struct Dessin {
    sigma: Permutation,
    alpha: Permutation,
    marked: Label,
}

/// Errors from building or parsing dessins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DessinError {
    /// `sigma` and `alpha` act on sets of different sizes.
    SizeMismatch { sigma: usize, alpha: usize },
    /// A dessin needs at least one edge.
    NoEdges,
    /// The marked edge is not a label in `1..=n`.
    MarkedOutOfRange { marked: Label, n: usize },
    /// `sigma` and `alpha` do not act transitively (the graph is
    /// disconnected).
    Intransitive,
    /// A required key (`edges`, `sigma`, `alpha`) is absent.
    MissingKey(&'static str),
    /// A key appears twice.
    DuplicateKey(String),
    /// A line has an unrecognized key.
    UnknownKey(String),
    /// A line is not of the form `key = value`, or a value fails to parse.
    BadValue { key: String, reason: String },
    /// A cycle list is invalid.
    Perm(PermError),
}

impl fmt::Display for DessinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DessinError::SizeMismatch { sigma, alpha } => {
                write!(f, "sigma acts on {sigma} labels but alpha on {alpha}")
            }
            DessinError::NoEdges => f.write_str("a dessin needs at least one edge"),
            DessinError::MarkedOutOfRange { marked, n } => {
                write!(f, "marked edge {marked} outside 1..={n}")
            }
            DessinError::Intransitive => f.write_str("sigma and alpha do not act transitively"),
            DessinError::MissingKey(key) => write!(f, "missing key '{key}'"),
            DessinError::DuplicateKey(key) => write!(f, "duplicate key '{key}'"),
            DessinError::UnknownKey(key) => write!(f, "unknown key '{key}'"),
            DessinError::BadValue { key, reason } => write!(f, "bad value for '{key}': {reason}"),
            DessinError::Perm(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for DessinError {}

impl From<PermError> for DessinError {
    fn from(e: PermError) -> Self {
        DessinError::Perm(e)
    }
}

/// Vertex and face degree multisets with the derived level and genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    /// Black vertex degrees (cycle lengths of `sigma`), descending.
    pub black: Vec<usize>,
    /// White vertex degrees (cycle lengths of `alpha`), descending.
    pub white: Vec<usize>,
    /// Face degrees (cycle lengths of `phi`), descending.
    pub face: Vec<usize>,
    /// `2 * lcm` of all vertex and face degrees.
    pub level: u64,
    /// Genus of the carrier surface, from `V - n + F = 2 - 2g`.
    pub genus: usize,
}

/// One face together with the vertices it borders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceIncidence {
    /// The face's edge labels in rotation order (a cycle of `phi`).
    pub face: Vec<Label>,
    /// Cycles of `sigma` (black vertices) sharing at least one edge.
    pub black: Vec<Vec<Label>>,
    /// Cycles of `alpha` (white vertices) sharing at least one edge.
    pub white: Vec<Vec<Label>>,
}

impl Dessin {
    /// Validates sizes, the marked edge, and transitivity.
    pub fn new(sigma: Permutation, alpha: Permutation, marked: Label) -> Result<Self, DessinError> {
        if sigma.len() != alpha.len() {
            return Err(DessinError::SizeMismatch {
                sigma: sigma.len(),
                alpha: alpha.len(),
            });
        }
        let n = sigma.len();
        if n == 0 {
            return Err(DessinError::NoEdges);
        }
        if marked == 0 || marked as usize > n {
            return Err(DessinError::MarkedOutOfRange { marked, n });
        }
        if !is_transitive(n, &[&sigma, &alpha]) {
            return Err(DessinError::Intransitive);
        }
        Ok(Dessin { sigma, alpha, marked })
    }

    /// Number of edges.
    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// Rotation around black vertices.
    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    /// Rotation around white vertices.
    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    /// The marked edge.
    pub fn marked(&self) -> Label {
        self.marked
    }

    /// Same dessin with the mark moved to `e`.
    pub fn remark(&self, e: Label) -> Result<Dessin, DessinError> {
        if e == 0 || e as usize > self.n() {
            return Err(DessinError::MarkedOutOfRange { marked: e, n: self.n() });
        }
        Ok(Dessin {
            sigma: self.sigma.clone(),
            alpha: self.alpha.clone(),
            marked: e,
        })
    }

    /// The counterclockwise face rotation `phi = (sigma * alpha)^-1`; its
    /// cycles are the faces.
    pub fn faces(&self) -> Permutation {
        self.sigma.then(&self.alpha).inverse()
    }

    /// Degree multisets, level, and genus.
    pub fn report(&self) -> DegreeReport {
        let lengths = |p: &Permutation| {
            let mut v: Vec<usize> = p.cycles().iter().map(Vec::len).collect();
            v.sort_unstable_by(|x, y| y.cmp(x));
            v
        };
        let black = lengths(&self.sigma);
        let white = lengths(&self.alpha);
        let face = lengths(&self.faces());
        let level = 2 * black
            .iter()
            .chain(&white)
            .chain(&face)
            .fold(1u64, |acc, &d| perm::lcm(acc, d as u64));
        let vertices = black.len() + white.len();
        let chi = vertices as i64 - self.n() as i64 + face.len() as i64;
        debug_assert!(chi <= 2 && (2 - chi) % 2 == 0, "Euler characteristic out of range");
        let genus = ((2 - chi) / 2) as usize;
        DegreeReport { black, white, face, level, genus }
    }

    /// The level `2 * lcm(all vertex and face degrees)`.
    pub fn level(&self) -> u64 {
        self.report().level
    }

    /// The genus of the carrier surface.
    pub fn genus(&self) -> usize {
        self.report().genus
    }

    /// For each face, the black and white vertices sharing an edge with it.
    /// Faces and vertices appear in canonical cycle order.
    pub fn face_vertex_incidence(&self) -> Vec<FaceIncidence> {
        let blacks = self.sigma.cycles();
        let whites = self.alpha.cycles();
        let vertex_of = |cycles: &[Vec<Label>]| {
            let mut of = alloc::vec![0usize; self.n()];
            for (i, cycle) in cycles.iter().enumerate() {
                for &label in cycle {
                    of[label as usize - 1] = i;
                }
            }
            of
        };
        let black_of = vertex_of(&blacks);
        let white_of = vertex_of(&whites);
        self.faces()
            .cycles()
            .into_iter()
            .map(|face| {
                let mut black_idx: Vec<usize> = face.iter().map(|&e| black_of[e as usize - 1]).collect();
                let mut white_idx: Vec<usize> = face.iter().map(|&e| white_of[e as usize - 1]).collect();
                black_idx.sort_unstable();
                black_idx.dedup();
                white_idx.sort_unstable();
                white_idx.dedup();
                FaceIncidence {
                    face,
                    black: black_idx.iter().map(|&i| blacks[i].clone()).collect(),
                    white: white_idx.iter().map(|&i| whites[i].clone()).collect(),
                }
            })
            .collect()
    }

    /// Parses the line-oriented text format (see the module docs).
    pub fn parse(text: &str) -> Result<Dessin, DessinError> {
        let mut edges: Option<usize> = None;
        let mut sigma_text: Option<String> = None;
        let mut alpha_text: Option<String> = None;
        let mut marked: Option<Label> = None;
        for raw in text.lines() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = match line.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => {
                    return Err(DessinError::BadValue {
                        key: line.to_string(),
                        reason: String::from("expected 'key = value'"),
                    })
                }
            };
            match key {
                "edges" => {
                    if edges.is_some() {
                        return Err(DessinError::DuplicateKey(key.to_string()));
                    }
                    let n: usize = value.parse().map_err(|_| DessinError::BadValue {
                        key: key.to_string(),
                        reason: format!("'{value}' is not a count"),
                    })?;
                    if n == 0 {
                        return Err(DessinError::NoEdges);
                    }
                    edges = Some(n);
                }
                "sigma" | "alpha" => {
                    let slot = if key == "sigma" { &mut sigma_text } else { &mut alpha_text };
                    if slot.is_some() {
                        return Err(DessinError::DuplicateKey(key.to_string()));
                    }
                    *slot = Some(value.to_string());
                }
                "marked" => {
                    if marked.is_some() {
                        return Err(DessinError::DuplicateKey(key.to_string()));
                    }
                    marked = Some(value.parse().map_err(|_| DessinError::BadValue {
                        key: key.to_string(),
                        reason: format!("'{value}' is not a label"),
                    })?);
                }
                _ => return Err(DessinError::UnknownKey(key.to_string())),
            }
        }
        let n = edges.ok_or(DessinError::MissingKey("edges"))?;
        let sigma = parse_cycles(&sigma_text.ok_or(DessinError::MissingKey("sigma"))?, n)?;
        let alpha = parse_cycles(&alpha_text.ok_or(DessinError::MissingKey("alpha"))?, n)?;
        Dessin::new(sigma, alpha, marked.unwrap_or(1))
    }

    /// Graphviz DOT export. Vertices become nodes (`b<i>` filled,
    /// `w<j>` open); each edge appears once, labeled, grouped by black vertex
    /// in rotation order so the embedding can be read off the out-edge lists.
    /// The marked edge is drawn bold.
    pub fn to_dot(&self) -> String {
        let blacks = self.sigma.cycles();
        let whites = self.alpha.cycles();
        let mut white_of = alloc::vec![0usize; self.n()];
        for (j, cycle) in whites.iter().enumerate() {
            for &label in cycle {
                white_of[label as usize - 1] = j;
            }
        }
        let mut out = String::from("digraph dessin {\n");
        out.push_str(&format!("  // edges = {}, marked = {}\n", self.n(), self.marked));
        out.push_str(&format!("  // sigma = {}\n", self.sigma));
        out.push_str(&format!("  // alpha = {}\n", self.alpha));
        out.push_str(&format!("  // faces = {}\n", self.faces()));
        out.push_str("  // out-edges at each black vertex follow its counterclockwise order\n");
        out.push_str("  edge [arrowhead=none];\n");
        for i in 0..blacks.len() {
            out.push_str(&format!(
                "  b{i} [shape=circle, style=filled, fillcolor=black, label=\"\"];\n"
            ));
        }
        for j in 0..whites.len() {
            out.push_str(&format!("  w{j} [shape=circle, label=\"\"];\n"));
        }
        for (i, cycle) in blacks.iter().enumerate() {
            for &label in cycle {
                let j = white_of[label as usize - 1];
                let attrs = if label == self.marked {
                    format!("label=\"{label}\", penwidth=2")
                } else {
                    format!("label=\"{label}\"")
                };
                out.push_str(&format!("  b{i} -> w{j} [{attrs}];\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Dessin {
    /// The canonical text format; [`Dessin::parse`] inverts it exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "edges = {}", self.n())?;
        let cycles = |p: &Permutation| {
            let text = format_cycles(p);
            if text.is_empty() {
                String::new()
            } else {
                format!(" {text}")
            }
        };
        writeln!(f, "sigma ={}", cycles(&self.sigma))?;
        writeln!(f, "alpha ={}", cycles(&self.alpha))?;
        writeln!(f, "marked = {}", self.marked)
    }
}

impl fmt::Debug for Dessin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Dessin {{ sigma: {}, alpha: {}, marked: {} }}",
            self.sigma, self.alpha, self.marked
        )
    }
}

impl core::str::FromStr for Dessin {
    type Err = DessinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Dessin::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dessin(n: usize, sigma: &str, alpha: &str, marked: Label) -> Dessin {
        Dessin::new(
            parse_cycles(sigma, n).unwrap(),
            parse_cycles(alpha, n).unwrap(),
            marked,
        )
        .unwrap()
    }

    #[test]
    fn faces_of_the_five_edge_sphere_graph() {
        // sigma = (1 2 3 4 5), alpha = (1 2)(3 4): faces (2 5 4)(1)(3).
        let d = dessin(5, "(1 2 3 4 5)", "(1 2)(3 4)", 2);
        assert_eq!(format_cycles(&d.faces()), "(2 5 4)");
    }

    #[test]
    fn faces_of_the_five_edge_torus_graph() {
        let d = dessin(5, "(1 2 3 4 5)", "(1 3)(2 4)", 1);
        assert_eq!(format_cycles(&d.faces()), "(1 2 3 5 4)");
    }

    #[test]
    fn faces_of_gamma0_6_meet_gamma2() {
        let d = dessin(4, "(3 2 1)", "(2 3 4)", 1);
        assert_eq!(format_cycles(&d.faces()), "(1 2 4)");
    }

    #[test]
    fn report_levels_and_genera() {
        let sphere = dessin(5, "(1 2 3 4 5)", "(1 2)(3 4)", 2);
        let r = sphere.report();
        assert_eq!((r.level, r.genus), (60, 0));
        assert_eq!(r.black, [5]);
        assert_eq!(r.white, [2, 2, 1]);
        assert_eq!(r.face, [3, 1, 1]);

        let torus = dessin(5, "(1 2 3 4 5)", "(1 3)(2 4)", 1);
        assert_eq!((torus.level(), torus.genus()), (20, 1));

        let star = dessin(3, "(1 2 3)", "", 1);
        assert_eq!((star.level(), star.genus()), (6, 0));

        let g06 = dessin(4, "(3 2 1)", "(2 3 4)", 1);
        assert_eq!((g06.level(), g06.genus()), (6, 0));

        let fish = dessin(4, "(1 2 3 4)", "(3 4)", 1);
        assert_eq!((fish.level(), fish.genus()), (24, 0));

        let one = dessin(1, "", "", 1);
        assert_eq!((one.level(), one.genus()), (2, 0));
    }

    #[test]
    fn incidence_on_the_fish() {
        let fish = dessin(4, "(1 2 3 4)", "(3 4)", 1);
        let inc = fish.face_vertex_incidence();
        assert_eq!(inc.len(), 2);
        assert_eq!(inc[0].face, [1, 4, 2]);
        assert_eq!(inc[0].black, [vec![1, 2, 3, 4]]);
        assert_eq!(inc[0].white, [vec![1], vec![2], vec![3, 4]]);
        assert_eq!(inc[1].face, [3]);
        assert_eq!(inc[1].black, [vec![1, 2, 3, 4]]);
        assert_eq!(inc[1].white, [vec![3, 4]]);
    }

    #[test]
    fn constructor_validates() {
        let c5 = parse_cycles("(1 2 3 4 5)", 5).unwrap();
        let id5 = Permutation::identity(5);
        assert!(Dessin::new(c5.clone(), id5.clone(), 6).is_err());
        assert!(Dessin::new(c5.clone(), id5.clone(), 0).is_err());
        assert_eq!(
            Dessin::new(parse_cycles("(1 2)", 4).unwrap(), parse_cycles("(3 4)", 4).unwrap(), 1),
            Err(DessinError::Intransitive)
        );
        assert_eq!(
            Dessin::new(c5, Permutation::identity(4), 1),
            Err(DessinError::SizeMismatch { sigma: 5, alpha: 4 })
        );
    }

    #[test]
    fn parse_text_format() {
        let d = Dessin::parse(
            "# a three-pointed star\nedges = 3\nsigma = (1 2 3)\nalpha =\nmarked = 1\n",
        )
        .unwrap();
        assert_eq!(d.n(), 3);
        assert!(d.alpha().is_identity());
        assert_eq!(d.marked(), 1);

        // marked defaults to 1; separators and comments are flexible.
        let d = Dessin::parse("edges = 5 # five\nsigma = (1,2,3,4,5)\nalpha = (1 3)(2 4)").unwrap();
        assert_eq!(d.marked(), 1);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Dessin::parse("sigma = (1 2)\nalpha ="),
            Err(DessinError::MissingKey("edges"))
        );
        assert_eq!(
            Dessin::parse("edges = 2\nsigma = (1 2)"),
            Err(DessinError::MissingKey("alpha"))
        );
        assert_eq!(
            Dessin::parse("edges = 2\nedges = 2\nsigma = (1 2)\nalpha ="),
            Err(DessinError::DuplicateKey(String::from("edges")))
        );
        assert_eq!(
            Dessin::parse("edges = 2\nsigma = (1 2)\nalpha =\nmark = 1"),
            Err(DessinError::UnknownKey(String::from("mark")))
        );
        assert_eq!(
            Dessin::parse("edges = 2\nsigma = (1 2)\nalpha =\nmarked = 3"),
            Err(DessinError::MarkedOutOfRange { marked: 3, n: 2 })
        );
        assert_eq!(
            Dessin::parse("edges = 2\nsigma = (1 3)\nalpha ="),
            Err(DessinError::Perm(PermError::LabelOutOfRange { label: 3, n: 2 }))
        );
        assert!(matches!(
            Dessin::parse("edges = 0\nsigma =\nalpha ="),
            Err(DessinError::NoEdges)
        ));
        assert!(matches!(
            Dessin::parse("edges = two\nsigma =\nalpha ="),
            Err(DessinError::BadValue { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        for (n, s, a, m) in [
            (5usize, "(1 2 3 4 5)", "(1 2)(3 4)", 2),
            (3, "(1 2 3)", "", 1),
            (1, "", "", 1),
        ] {
            let d = dessin(n, s, a, m);
            let text = d.to_string();
            assert_eq!(Dessin::parse(&text).unwrap(), d, "on {text:?}");
            // Canonical text is a fixed point of parse-then-format.
            assert_eq!(Dessin::parse(&text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn remark_moves_only_the_mark() {
        let d = dessin(3, "(1 2 3)", "", 1);
        let d2 = d.remark(3).unwrap();
        assert_eq!(d2.marked(), 3);
        assert_eq!(d2.sigma(), d.sigma());
        assert!(d.remark(4).is_err());
    }

    #[test]
    fn dot_output_is_stable() {
        let d = dessin(3, "(1 2 3)", "", 1);
        let dot = d.to_dot();
        assert!(dot.starts_with("digraph dessin {"));
        assert!(dot.contains("b0 [shape=circle, style=filled"));
        assert!(dot.contains("w2 [shape=circle, label=\"\"];"));
        assert!(dot.contains("b0 -> w0 [label=\"1\", penwidth=2];"));
        assert!(dot.contains("b0 -> w1 [label=\"2\"];"));
        assert!(dot.ends_with("}\n"));
    }
}
