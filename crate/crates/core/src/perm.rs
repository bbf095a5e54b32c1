//! Permutations of `{1..n}` with disjoint-cycle parsing and formatting.
//!
//! Labels are 1-based. Composition is written left to right throughout the
//! crate: [`Permutation::then`] applies the receiver first, so
//! `p.then(&q)` maps `x` to `q(p(x))`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A 1-based point moved by a [`Permutation`] (an edge label of a dessin).
pub type Label = u32;

/// A bijection of `{1..n}`, stored as the image vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    /// `images[i]` is the image of label `i + 1`; values lie in `1..=n`.
    images: Vec<Label>,
}

/// Errors from building or parsing permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    /// An image vector entry lies outside `1..=n`.
    ImageOutOfRange { image: Label, n: usize },
    /// Two positions map to the same image.
    DuplicateImage { image: Label },
    /// A cycle mentions a label outside `1..=n` (0 included).
    LabelOutOfRange { label: Label, n: usize },
    /// A label occurs twice among the cycles.
    DuplicateLabel { label: Label },
    /// Cycle text does not match `( label (sep label)* )*`.
    Malformed(String),
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::ImageOutOfRange { image, n } => {
                write!(f, "image {image} outside 1..={n}")
            }
            PermError::DuplicateImage { image } => write!(f, "image {image} repeated"),
            PermError::LabelOutOfRange { label, n } => {
                write!(f, "label {label} outside 1..={n}")
            }
            PermError::DuplicateLabel { label } => write!(f, "label {label} repeated"),
            PermError::Malformed(reason) => write!(f, "malformed cycles: {reason}"),
        }
    }
}

impl core::error::Error for PermError {}

impl Permutation {
    /// The identity on `{1..n}`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as Label).collect(),
        }
    }

    /// Builds a permutation from its image vector (`images[i]` is the image
    /// of `i + 1`).
    pub fn from_images(images: Vec<Label>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im == 0 || im as usize > n {
                return Err(PermError::ImageOutOfRange { image: im, n });
            }
            if seen[im as usize - 1] {
                return Err(PermError::DuplicateImage { image: im });
            }
            seen[im as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles. Labels absent
    /// from every cycle are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<Label>]) -> Result<Self, PermError> {
        let mut images: Vec<Label> = (1..=n as Label).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for &label in cycle {
                if label == 0 || label as usize > n {
                    return Err(PermError::LabelOutOfRange { label, n });
                }
                if seen[label as usize - 1] {
                    return Err(PermError::DuplicateLabel { label });
                }
                seen[label as usize - 1] = true;
            }
            for (i, &label) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[label as usize - 1] = next;
            }
        }
        Ok(Permutation { images })
    }

    /// The size `n` of the underlying set.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    /// True for the (unique) permutation of the empty set.
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// The image of `x`. Panics if `x` is not in `1..=n`.
    pub fn apply(&self, x: Label) -> Label {
        self.images[x as usize - 1]
    }

    /// Left-to-right composition: the result maps `x` to `next(self(x))`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(
            self.len(),
            next.len(),
            "composing permutations of different sizes"
        );
        Permutation {
            images: self.images.iter().map(|&im| next.apply(im)).collect(),
        }
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize - 1] = i as Label + 1;
        }
        Permutation { images }
    }

    /// True iff every label is fixed.
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| im as usize == i + 1)
    }

    /// The full cycle decomposition, fixed points included. Each cycle starts
    /// at its smallest label; cycles are sorted by first label.
    pub fn cycles(&self) -> Vec<Vec<Label>> {
        let mut seen = vec![false; self.len()];
        let mut cycles = Vec::new();
        for start in 1..=self.len() as Label {
            if seen[start as usize - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            loop {
                seen[x as usize - 1] = true;
                cycle.push(x);
                x = self.apply(x);
                if x == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// The order of the permutation (lcm of its cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

/// Least common multiple; panics on u64 overflow.
pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    (a / gcd(a, b)).checked_mul(b).expect("lcm overflows u64")
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("()")
        } else {
            f.write_str(&format_cycles(self))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} on 1..={}", self.len())
    }
}

/// Parses disjoint-cycle notation, e.g. `(3 2 1)(4)` or `(1,2)(3,4)`, into a
/// permutation of `{1..n}`. Fixed points may be omitted; empty input (after
/// comments and whitespace) is the identity.
pub fn parse_cycles(text: &str, n: usize) -> Result<Permutation, PermError> {
    let mut cycles: Vec<Vec<Label>> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_whitespace() {
            i += 1;
        } else if ch == '(' {
            i += 1;
            let mut cycle = Vec::new();
            loop {
                while i < bytes.len() && ((bytes[i] as char).is_whitespace() || bytes[i] == b',') {
                    i += 1;
                }
                if i >= bytes.len() {
                    return Err(PermError::Malformed(String::from("unclosed '('")));
                }
                if bytes[i] == b')' {
                    i += 1;
                    break;
                }
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == start {
                    return Err(PermError::Malformed(alloc::format!(
                        "expected a label at byte {start}"
                    )));
                }
                let label: Label = text[start..i]
                    .parse()
                    .map_err(|_| PermError::Malformed(alloc::format!(
                        "label '{}' does not fit u32",
                        &text[start..i]
                    )))?;
                cycle.push(label);
            }
            if cycle.is_empty() {
                return Err(PermError::Malformed(String::from("empty cycle '()'")));
            }
            cycles.push(cycle);
        } else {
            return Err(PermError::Malformed(alloc::format!(
                "unexpected character '{ch}'"
            )));
        }
    }
    Permutation::from_cycles(n, &cycles)
}

/// Canonical cycle text: fixed points omitted, each cycle starting at its
/// smallest label, cycles sorted by first label, labels space-separated.
/// The identity formats as the empty string.
pub fn format_cycles(p: &Permutation) -> String {
    let mut out = String::new();
    for cycle in p.cycles() {
        if cycle.len() < 2 {
            continue;
        }
        out.push('(');
        for (i, label) in cycle.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&alloc::format!("{label}"));
        }
        out.push(')');
    }
    out
}

/// True iff the group generated by `perms` acts transitively on `{1..n}`.
/// All permutations must have size `n`; `n = 0` counts as transitive.
pub fn is_transitive(n: usize, perms: &[&Permutation]) -> bool {
    if n == 0 {
        return true;
    }
    for p in perms {
        assert_eq!(p.len(), n, "permutation size differs from n");
    }
    let mut seen = vec![false; n];
    let mut stack = vec![1 as Label];
    seen[0] = true;
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for p in perms {
            let y = p.apply(x);
            if !seen[y as usize - 1] {
                seen[y as usize - 1] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached == n
}

/// Iterator over all permutations of `{1..n}` in lexicographic order of
/// their image vectors.
pub fn all(n: usize) -> AllPermutations {
    AllPermutations {
        next: Some((1..=n as Label).collect()),
    }
}

/// See [`all`].
pub struct AllPermutations {
    next: Option<Vec<Label>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Standard next-permutation step on the image vector.
        let advanced = (|v: &mut Vec<Label>| {
            if v.len() < 2 {
                return false;
            }
            let mut i = v.len() - 1;
            while i > 0 && v[i - 1] >= v[i] {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            let mut j = v.len() - 1;
            while v[j] <= v[i - 1] {
                j -= 1;
            }
            v.swap(i - 1, j);
            v[i..].reverse();
            true
        })(&mut succ);
        self.next = advanced.then_some(succ);
        Some(Permutation { images: current })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        parse_cycles(text, n).unwrap()
    }

    #[test]
    fn composition_is_left_to_right() {
        let sigma = p("(1 2 3 4 5)", 5);
        let alpha = p("(1 3)(2 4)", 5);
        assert_eq!(sigma.then(&alpha), p("(1 4 5 3 2)", 5));
    }

    #[test]
    fn inverse_round_trips() {
        let q = p("(1 2 3 5 4)", 5);
        assert!(q.then(&q.inverse()).is_identity());
        assert_eq!(q.inverse().apply(2), 1);
    }

    #[test]
    fn cycles_include_fixed_points_and_canonicalize() {
        let q = p("(3 2 1)(4)", 4);
        assert_eq!(q.cycles(), vec![vec![1, 3, 2], vec![4]]);
        assert_eq!(format_cycles(&q), "(1 3 2)");
        assert_eq!(format_cycles(&Permutation::identity(3)), "");
    }

    #[test]
    fn parse_accepts_commas_and_omitted_fixed_points() {
        assert_eq!(p("(1,2)(3,4)", 5), p("(1 2)(3 4)(5)", 5));
        assert!(parse_cycles("", 3).unwrap().is_identity());
        assert!(parse_cycles("  \t ", 3).unwrap().is_identity());
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            parse_cycles("(1 2)(2 3)", 3),
            Err(PermError::DuplicateLabel { label: 2 })
        );
        assert_eq!(
            parse_cycles("(1 4)", 3),
            Err(PermError::LabelOutOfRange { label: 4, n: 3 })
        );
        assert_eq!(
            parse_cycles("(0 1)", 3),
            Err(PermError::LabelOutOfRange { label: 0, n: 3 })
        );
        assert!(matches!(parse_cycles("(1 2", 3), Err(PermError::Malformed(_))));
        assert!(matches!(parse_cycles("()", 3), Err(PermError::Malformed(_))));
        assert!(matches!(parse_cycles("1 2", 3), Err(PermError::Malformed(_))));
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(vec![2, 3, 1]).is_ok());
        assert_eq!(
            Permutation::from_images(vec![2, 2, 1]),
            Err(PermError::DuplicateImage { image: 2 })
        );
        assert_eq!(
            Permutation::from_images(vec![4, 1, 2]),
            Err(PermError::ImageOutOfRange { image: 4, n: 3 })
        );
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        assert_eq!(p("(1 2 3)(4 5)", 5).order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
    }

    #[test]
    fn transitivity() {
        let five = p("(1 2 3 4 5)", 5);
        assert!(is_transitive(5, &[&five]));
        let a = p("(1 2)(3 4)", 4);
        let b = p("(1 3)(2 4)", 4);
        assert!(is_transitive(4, &[&a, &b]));
        assert!(!is_transitive(4, &[&a]));
        assert!(is_transitive(1, &[&Permutation::identity(1)]));
    }

    #[test]
    fn all_is_lexicographic_and_complete() {
        let perms: Vec<_> = all(3).collect();
        assert_eq!(perms.len(), 6);
        assert!(perms[0].is_identity());
        assert_eq!(perms[1], p("(2 3)", 3));
        assert_eq!(perms[5], p("(1 3)", 3));
        assert_eq!(all(0).count(), 1);
        assert_eq!(all(1).count(), 1);
        assert_eq!(all(5).count(), 120);
    }
}
