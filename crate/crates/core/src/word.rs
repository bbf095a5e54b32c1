//! Free words in the generators of Gamma(2) and projective integer matrices.
//!
//! Gamma(2) is free on
//!
//! ```text
//! A = [1 2]      B = [1 0]
//!     [0 1],         [2 1],
//! ```
//!
//! so its elements are exactly the reduced words in `A`, `B`. [`Word`] keeps
//! the reduced form as an invariant; [`ProjMatrix`] is an integer matrix of
//! determinant 1 identified with its negative (an element of PSL(2, Z)).
//! [`ProjMatrix::to_word`] inverts [`ProjMatrix::eval`] by peeling generator
//! powers off the left, using that `A` shifts the first row by twice the
//! second and `B` vice versa.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// One of the two free generators of Gamma(2).
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    A,
    B,
}

/// A maximal run `letter^exp` inside a reduced word; `exp` is never 0.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Syllable {
    pub letter: Letter,
    pub exp: i64,
}

/// A freely reduced word in `A`, `B`: adjacent syllables use distinct
/// letters and no exponent is zero. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Errors from [`Word::parse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordParseError {
    /// A character other than `A`, `B`, `a`, `b`, `^`, digits, `-`, space.
    UnexpectedChar { at: usize, ch: char },
    /// `^` not followed by an integer.
    MissingExponent { at: usize },
    /// An explicit `^0`.
    ZeroExponent { at: usize },
    /// Exponent does not fit in `i64`.
    ExponentOverflow { at: usize },
}

impl fmt::Display for WordParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordParseError::UnexpectedChar { at, ch } => {
                write!(f, "unexpected character '{ch}' at byte {at}")
            }
            WordParseError::MissingExponent { at } => {
                write!(f, "'^' without an exponent at byte {at}")
            }
            WordParseError::ZeroExponent { at } => write!(f, "zero exponent at byte {at}"),
            WordParseError::ExponentOverflow { at } => {
                write!(f, "exponent at byte {at} does not fit i64")
            }
        }
    }
}

impl core::error::Error for WordParseError {}

impl Word {
    /// The empty word.
    pub fn identity() -> Self {
        Word::default()
    }

    /// The one-syllable word `letter^exp` (identity if `exp == 0`).
    pub fn syllable(letter: Letter, exp: i64) -> Self {
        let mut w = Word::identity();
        w.push(letter, exp);
        w
    }

    /// Appends `letter^exp`, merging and cancelling with the current tail so
    /// the word stays reduced.
    pub fn push(&mut self, letter: Letter, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.letter == letter {
                last.exp += exp;
                if last.exp == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push(Syllable { letter, exp });
    }

    /// The reduced concatenation `self * other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.letter, s.exp);
        }
        out
    }

    /// The inverse word (syllables reversed, exponents negated).
    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    letter: s.letter,
                    exp: -s.exp,
                })
                .collect(),
        }
    }

    /// True for the empty word.
    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The reduced syllables.
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Word length counted in letters, i.e. the sum of `|exp|`.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    /// The individual letters left to right as `(letter, inverted)` steps.
    pub fn letters(&self) -> impl Iterator<Item = (Letter, bool)> + '_ {
        self.syllables.iter().flat_map(|s| {
            core::iter::repeat_n((s.letter, s.exp < 0), s.exp.unsigned_abs() as usize)
        })
    }

    /// Parses `term*` where `term := ('A'|'B'|'a'|'b') ('^' int)?`; lowercase
    /// means the inverse generator and whitespace may separate tokens. The
    /// result is freely reduced.
    pub fn parse(text: &str) -> Result<Word, WordParseError> {
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut w = Word::identity();
        while i < bytes.len() {
            let ch = bytes[i] as char;
            if ch.is_whitespace() {
                i += 1;
                continue;
            }
            let (letter, sign) = match ch {
                'A' => (Letter::A, 1),
                'a' => (Letter::A, -1),
                'B' => (Letter::B, 1),
                'b' => (Letter::B, -1),
                _ => return Err(WordParseError::UnexpectedChar { at: i, ch }),
            };
            i += 1;
            let mut exp: i64 = 1;
            // Optional exponent, whitespace tolerated around '^'.
            let mut j = i;
            while j < bytes.len() && (bytes[j] as char).is_whitespace() {
                j += 1;
            }
            if j < bytes.len() && bytes[j] == b'^' {
                i = j + 1;
                while i < bytes.len() && (bytes[i] as char).is_whitespace() {
                    i += 1;
                }
                let at = i;
                let negative = i < bytes.len() && bytes[i] == b'-';
                if negative {
                    i += 1;
                }
                let start = i;
                let mut value: i64 = 0;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((bytes[i] - b'0') as i64))
                        .ok_or(WordParseError::ExponentOverflow { at })?;
                    i += 1;
                }
                if i == start {
                    return Err(WordParseError::MissingExponent { at });
                }
                if value == 0 {
                    return Err(WordParseError::ZeroExponent { at });
                }
                exp = if negative { -value } else { value };
            }
            w.push(letter, sign * exp);
        }
        Ok(w)
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    /// Canonical form: uppercase letters, `^exp` for exponents other than 1,
    /// syllables space-separated, e.g. `A B A^-2 B^-2`. The identity is the
    /// empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let letter = match s.letter {
                Letter::A => "A",
                Letter::B => "B",
            };
            if s.exp == 1 {
                f.write_str(letter)?;
            } else {
                write!(f, "{letter}^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Errors from [`ProjMatrix`] constructors and [`ProjMatrix::to_word`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// Determinant is not 1.
    NotUnimodular { det: i64 },
    /// The matrix is not congruent to the identity mod 2, so it lies outside
    /// Gamma(2).
    NotInGamma2,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::NotUnimodular { det } => write!(f, "determinant {det}, expected 1"),
            MatrixError::NotInGamma2 => {
                f.write_str("matrix is not the identity mod 2, so it lies outside Gamma(2)")
            }
        }
    }
}

impl core::error::Error for MatrixError {}

/// An element of PSL(2, Z): an integer matrix of determinant 1, identified
/// with its negative. The stored representative has `c > 0`, or `c == 0` and
/// `a > 0`.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl ProjMatrix {
    /// Builds the projective class of `[a b; c d]`; the determinant must be 1.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, MatrixError> {
        let det = (a as i128) * (d as i128) - (b as i128) * (c as i128);
        if det != 1 {
            return Err(MatrixError::NotUnimodular {
                det: det.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
            });
        }
        Ok(Self::canonical(a, b, c, d))
    }

    fn canonical(a: i64, b: i64, c: i64, d: i64) -> Self {
        if c < 0 || (c == 0 && a < 0) {
            ProjMatrix { a: -a, b: -b, c: -c, d: -d }
        } else {
            ProjMatrix { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        ProjMatrix { a: 1, b: 0, c: 0, d: 1 }
    }

    /// The generator `A = [1 2; 0 1]` raised to `exp`.
    pub fn gen_a(exp: i64) -> Self {
        ProjMatrix::canonical(1, 2 * exp, 0, 1)
    }

    /// The generator `B = [1 0; 2 1]` raised to `exp`.
    pub fn gen_b(exp: i64) -> Self {
        ProjMatrix::canonical(1, 0, 2 * exp, 1)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The canonical representative as `(a, b, c, d)`.
    pub fn entries(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    /// Matrix product `self * other`. Panics if an entry of the product
    /// leaves the `i64` range.
    pub fn mul(&self, other: &ProjMatrix) -> ProjMatrix {
        let wide = |x: i128| -> i64 {
            i64::try_from(x).expect("matrix entry exceeds i64 during multiplication")
        };
        let (a, b, c, d) = (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let (e, f, g, h) = (other.a as i128, other.b as i128, other.c as i128, other.d as i128);
        ProjMatrix::canonical(
            wide(a * e + b * g),
            wide(a * f + b * h),
            wide(c * e + d * g),
            wide(c * f + d * h),
        )
    }

    /// The inverse class (`[d -b; -c a]`).
    pub fn inverse(&self) -> ProjMatrix {
        ProjMatrix::canonical(self.d, -self.b, -self.c, self.a)
    }

    /// Evaluates a word syllable by syllable, left to right, so
    /// `eval(vw) = eval(v) * eval(w)`.
    pub fn eval(w: &Word) -> ProjMatrix {
        let mut m = ProjMatrix::identity();
        for s in w.syllables() {
            let factor = match s.letter {
                Letter::A => ProjMatrix::gen_a(s.exp),
                Letter::B => ProjMatrix::gen_b(s.exp),
            };
            m = m.mul(&factor);
        }
        m
    }

    /// True iff the class reduces to the identity mod 2 (diagonal odd,
    /// off-diagonal even), i.e. lies in Gamma(2).
    pub fn in_gamma2(&self) -> bool {
        self.a % 2 != 0 && self.d % 2 != 0 && self.b % 2 == 0 && self.c % 2 == 0
    }

    /// The unique reduced word evaluating to this class. Works by peeling
    /// generator powers off the left: while `c != 0`, if `|a| > |c|` there is
    /// a unique `k` with `|a - 2kc| < |c|` (strip `A^k`), otherwise a unique
    /// `k` with `|c - 2ka| < |a|` (strip `B^k`); parity rules out ties, and
    /// `min(|a|, |c|)` strictly decreases. At `c == 0` the remainder is
    /// `±A^(b/2)`.
    pub fn to_word(&self) -> Result<Word, MatrixError> {
        if !self.in_gamma2() {
            return Err(MatrixError::NotInGamma2);
        }
        let (mut a, mut b, mut c, mut d) =
            (self.a as i128, self.b as i128, self.c as i128, self.d as i128);
        let mut w = Word::identity();
        while c != 0 {
            if a.abs() > c.abs() {
                let k = nearest(a, 2 * c);
                w.push(Letter::A, k);
                a -= 2 * (k as i128) * c;
                b -= 2 * (k as i128) * d;
            } else {
                let k = nearest(c, 2 * a);
                w.push(Letter::B, k);
                c -= 2 * (k as i128) * a;
                d -= 2 * (k as i128) * b;
            }
        }
        if a < 0 {
            b = -b;
        }
        debug_assert!(b % 2 == 0, "Gamma(2) remainder must have even b");
        w.push(Letter::A, i64::try_from(b / 2).expect("exponent exceeds i64"));
        Ok(w)
    }
}

/// The integer nearest to `x / t` (`t` even, no ties possible for the
/// parities that occur during peeling).
fn nearest(x: i128, t: i128) -> i64 {
    if t < 0 {
        return -nearest(x, -t);
    }
    let q = x.div_euclid(t);
    let r = x.rem_euclid(t);
    debug_assert!(2 * r != t, "tie in balanced division");
    let k = if 2 * r > t { q + 1 } else { q };
    i64::try_from(k).expect("exponent exceeds i64")
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn parse_and_format_round_trip() {
        let word = w("ABA^-2B^-2");
        assert_eq!(word.to_string(), "A B A^-2 B^-2");
        assert_eq!(w("A B A^-2 B^-2"), word);
        assert_eq!(w(&word.to_string()), word);
        assert_eq!(w(""), Word::identity());
        assert_eq!(w("aB^3").to_string(), "A^-1 B^3");
        // Lowercase flips the sign of the whole power.
        assert_eq!(w("b^-2"), Word::syllable(Letter::B, 2));
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(w("Aa"), Word::identity());
        assert_eq!(w("A^2 B b A^-1"), w("A"));
        assert_eq!(w("A^2 a B b A^-1"), Word::identity());
        assert_eq!(w("A^3 A^-1"), w("A^2"));
    }

    #[test]
    fn parse_rejects_bad_text() {
        assert!(matches!(
            Word::parse("AXB"),
            Err(WordParseError::UnexpectedChar { at: 1, ch: 'X' })
        ));
        assert!(matches!(
            Word::parse("A^"),
            Err(WordParseError::MissingExponent { .. })
        ));
        assert!(matches!(
            Word::parse("A^0"),
            Err(WordParseError::ZeroExponent { .. })
        ));
        assert!(matches!(
            Word::parse("A^99999999999999999999"),
            Err(WordParseError::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn concat_and_inverse_reduce() {
        let x = w("A B^2");
        assert_eq!(x.concat(&x.inverse()), Word::identity());
        assert_eq!(w("A B").concat(&w("b A")), w("A^2"));
        assert_eq!(x.inverse().to_string(), "B^-2 A^-1");
        assert_eq!(x.letter_len(), 3);
    }

    #[test]
    fn eval_matches_hand_computation() {
        assert_eq!(ProjMatrix::eval(&w("A")).entries(), (1, 2, 0, 1));
        assert_eq!(ProjMatrix::eval(&w("B")).entries(), (1, 0, 2, 1));
        // The running example: B A B^3 A^-1 B^-4.
        let m = ProjMatrix::eval(&w("B A B^3 A^-1 B^-4"));
        assert_eq!(m.entries(), (205, -24, 504, -59));
    }

    #[test]
    fn projective_sign_is_canonical() {
        let m = ProjMatrix::new(-1, 0, 0, -1).unwrap();
        assert_eq!(m, ProjMatrix::identity());
        let m = ProjMatrix::new(-5, -2, -2, -1).unwrap();
        assert_eq!(m.entries(), (5, 2, 2, 1));
        assert!(ProjMatrix::new(1, 1, 1, 1).is_err());
    }

    #[test]
    fn gamma2_parity_test() {
        assert!(ProjMatrix::eval(&w("A B^-3 A^2")).in_gamma2());
        assert!(!ProjMatrix::new(1, 1, 0, 1).unwrap().in_gamma2());
        assert!(!ProjMatrix::new(0, -1, 1, 0).unwrap().in_gamma2());
    }

    #[test]
    fn peeling_recovers_reduced_words() {
        for text in [
            "",
            "A",
            "B",
            "A^-1",
            "B^-5",
            "A B",
            "B A B^3 A^-1 B^-4",
            "A^3 B^-2 A B A^-4",
            "B^2 A^-1 B",
        ] {
            let word = w(text);
            let back = ProjMatrix::eval(&word).to_word().unwrap();
            assert_eq!(back, word, "peeling failed on {text}");
        }
    }

    #[test]
    fn peeling_rejects_outside_gamma2() {
        let t = ProjMatrix::new(1, 1, 0, 1).unwrap();
        assert_eq!(t.to_word(), Err(MatrixError::NotInGamma2));
    }

    #[test]
    fn eval_is_a_homomorphism() {
        let x = w("A^2 B^-1");
        let y = w("B A^3");
        assert_eq!(
            ProjMatrix::eval(&x.concat(&y)),
            ProjMatrix::eval(&x).mul(&ProjMatrix::eval(&y))
        );
        assert_eq!(ProjMatrix::eval(&x.inverse()), ProjMatrix::eval(&x).inverse());
    }
}
