//! Cusp-width filters that certify noncongruence without coset enumeration.
//!
//! For a congruence subgroup of Gamma(2) of level `2n`, Larcher's theorems
//! constrain cusp widths. In dessin terms (vertices and faces are cusps,
//! their widths twice the degrees):
//!
//! * for every face of degree `d` and every vertex of degree `e` bordering
//!   it, `2de` must be divisible by `n`;
//! * some vertex or face must have degree exactly `n`.
//!
//! A dessin violating either condition cannot be congruence. The converse
//! fails: passing both filters proves nothing.

use alloc::vec::Vec;
use core::fmt;

use crate::dessin::Dessin;

/// A reason the dessin cannot be congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A face of degree `face_degree` borders a vertex of degree
    /// `vertex_degree` with `2 * face_degree * vertex_degree` not divisible
    /// by `n` (`remainder` is the nonzero residue).
    Pair {
        face_degree: usize,
        vertex_degree: usize,
        remainder: u64,
    },
    /// No vertex or face has degree exactly `n = level / 2`.
    MissingWidth { n: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Pair { face_degree, vertex_degree, remainder } => write!(
                f,
                "face d={face_degree} vertex e={vertex_degree} : 2de mod n = {remainder}"
            ),
            Violation::MissingWidth { n } => {
                write!(f, "no vertex or face of degree {n}")
            }
        }
    }
}

/// Outcome of the filters. `CertifiedNoncongruence` always carries at least
/// one violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterVerdict {
    CertifiedNoncongruence(Vec<Violation>),
    Inconclusive,
}

impl FilterVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, FilterVerdict::CertifiedNoncongruence(_))
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            FilterVerdict::CertifiedNoncongruence(v) => v,
            FilterVerdict::Inconclusive => &[],
        }
    }
}

fn verdict(violations: Vec<Violation>) -> FilterVerdict {
    if violations.is_empty() {
        FilterVerdict::Inconclusive
    } else {
        FilterVerdict::CertifiedNoncongruence(violations)
    }
}

/// The divisibility filter: every (face degree, bordering vertex degree)
/// pair `(d, e)` must satisfy `n | 2de`, where `n = level / 2`. Each
/// violating degree pair is reported once.
pub fn pair_filter(d: &Dessin) -> FilterVerdict {
    let n = d.level() / 2;
    let mut violations: Vec<Violation> = Vec::new();
    for inc in d.face_vertex_incidence() {
        let face_degree = inc.face.len();
        for vertex in inc.black.iter().chain(&inc.white) {
            let vertex_degree = vertex.len();
            let remainder = 2 * face_degree as u64 * vertex_degree as u64 % n;
            if remainder != 0 {
                let v = Violation::Pair { face_degree, vertex_degree, remainder };
                if !violations.contains(&v) {
                    violations.push(v);
                }
            }
        }
    }
    verdict(violations)
}

/// The width filter: some vertex or face must have degree exactly
/// `n = level / 2`.
pub fn width_filter(d: &Dessin) -> FilterVerdict {
    let report = d.report();
    let n = report.level / 2;
    let hit = report
        .black
        .iter()
        .chain(&report.white)
        .chain(&report.face)
        .any(|&degree| degree as u64 == n);
    if hit {
        FilterVerdict::Inconclusive
    } else {
        verdict(alloc::vec![Violation::MissingWidth { n }])
    }
}

/// Both filters together; certified if either one fires.
pub fn filters(d: &Dessin) -> FilterVerdict {
    let mut violations = Vec::from(pair_filter(d).violations());
    violations.extend_from_slice(width_filter(d).violations());
    verdict(violations)
}
