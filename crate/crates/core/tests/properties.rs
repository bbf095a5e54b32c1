//! Randomized and exhaustive property checks tying the modules together.
//!
//! Random inputs use a fixed-seed ChaCha stream so failures reproduce
//! exactly; exhaustive loops cover every dessin with few enough edges.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gamma2::congruence::gamma_m_generators;
use gamma2::gamma1::to_gamma1;
use gamma2::larcher::filters;
use gamma2::perm::{all, format_cycles, is_transitive, parse_cycles};
use gamma2::{
    decide, group_generators, is_member, trace, Dessin, EdgeAction, Label, Letter, Permutation,
    ProjMatrix, Word, DEFAULT_MAX_COSETS,
};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<Label> = (1..=n as Label).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::from_images(images).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, max_letters: usize) -> Word {
    let len = rng.gen_range(0..=max_letters);
    let mut w = Word::identity();
    for _ in 0..len {
        let letter = if rng.gen::<bool>() { Letter::A } else { Letter::B };
        let exp = if rng.gen::<bool>() { 1 } else { -1 };
        w.push(letter, exp);
    }
    w
}

/// Every transitive pair on `{1..n}`, as a dessin with marked edge 1.
fn transitive_dessins(n: usize) -> Vec<Dessin> {
    let perms: Vec<Permutation> = all(n).collect();
    let mut out = Vec::new();
    for sigma in &perms {
        for alpha in &perms {
            if is_transitive(n, &[sigma, alpha]) {
                out.push(Dessin::new(sigma.clone(), alpha.clone(), 1).unwrap());
            }
        }
    }
    out
}

/// Membership of every generator of the principal congruence subgroup at
/// the level of `d`, with the generator lists shared across calls.
fn contains_level_subgroup(d: &Dessin, cache: &mut BTreeMap<u32, Vec<Word>>) -> bool {
    let m = u32::try_from(d.level()).unwrap();
    let generators = cache
        .entry(m)
        .or_insert_with(|| gamma_m_generators(m, DEFAULT_MAX_COSETS).unwrap());
    generators.iter().all(|w| is_member(d, w))
}

#[test]
fn permutation_text_round_trips_exhaustively() {
    for n in 1..=6 {
        for p in all(n) {
            let text = format_cycles(&p);
            assert_eq!(parse_cycles(&text, n).unwrap(), p, "n = {n}, text = {text}");
        }
    }
}

#[test]
fn permutation_algebra_laws_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let n = rng.gen_range(1..=40);
        let p = random_permutation(&mut rng, n);
        let q = random_permutation(&mut rng, n);
        let pq = p.then(&q);
        for x in 1..=n as Label {
            assert_eq!(pq.apply(x), q.apply(p.apply(x)));
        }
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(Permutation::from_cycles(n, &p.cycles()).unwrap(), p);
    }
}

#[test]
fn permutation_order_matches_brute_force() {
    for n in 1..=7 {
        for p in all(n) {
            let mut power = p.clone();
            let mut count = 1;
            while !power.is_identity() {
                power = power.then(&p);
                count += 1;
            }
            assert_eq!(p.order(), count, "p = {p}");
        }
    }
}

#[test]
fn word_concat_and_inverse_laws_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..2000 {
        let v = random_word(&mut rng, 20);
        let w = random_word(&mut rng, 20);
        assert!(v.concat(&v.inverse()).is_identity());
        assert_eq!(
            v.concat(&w).inverse(),
            w.inverse().concat(&v.inverse())
        );
        let round: Word = v.to_string().parse().unwrap();
        assert_eq!(round, v);
    }
}

#[test]
fn eval_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..2000 {
        let v = random_word(&mut rng, 20);
        let w = random_word(&mut rng, 20);
        assert_eq!(
            ProjMatrix::eval(&v.concat(&w)),
            ProjMatrix::eval(&v).mul(&ProjMatrix::eval(&w))
        );
    }
}

#[test]
fn matrix_word_round_trips_for_every_short_word() {
    for len in 0..=8usize {
        for code in 0..4u32.pow(len as u32) {
            let mut w = Word::identity();
            let mut c = code;
            for _ in 0..len {
                let letter = if c & 1 == 0 { Letter::A } else { Letter::B };
                let exp = if c & 2 == 0 { 1 } else { -1 };
                w.push(letter, exp);
                c >>= 2;
            }
            let m = ProjMatrix::eval(&w);
            assert_eq!(m.to_word().unwrap(), w, "m = {:?}", m.entries());
        }
    }
}

#[test]
fn matrix_word_round_trips_for_random_long_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..1000 {
        let w = random_word(&mut rng, 40);
        assert_eq!(ProjMatrix::eval(&w).to_word().unwrap(), w, "w = {w}");
    }
}

/// Counts the matrices over `Z/m` congruent to the identity mod 2 with
/// determinant 1, then halves to identify each matrix with its negative.
/// This recounts from the definition what the coset enumeration builds.
#[test]
fn quotient_size_matches_brute_force_count() {
    for m in [4u64, 6, 8, 10, 12] {
        let mut count = 0u64;
        for a in (1..m).step_by(2) {
            for d in (1..m).step_by(2) {
                for b in (0..m).step_by(2) {
                    for c in (0..m).step_by(2) {
                        if (a * d + m * m - b * c) % m == 1 {
                            count += 1;
                        }
                    }
                }
            }
        }
        let table = gamma2::congruence::quotient_table(m as u32, DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(table.size() as u64, count / 2, "m = {m}");
    }
}

#[test]
fn euler_formula_and_level_hold_for_every_small_dessin() {
    for n in 1..=5usize {
        for d in transitive_dessins(n) {
            let report = d.report();
            let vertices = d.sigma().cycles().len() + d.alpha().cycles().len();
            let faces = d.faces().cycles().len();
            let euler = vertices as i64 - n as i64 + faces as i64;
            assert_eq!(euler, 2 - 2 * report.genus as i64);
            let mut expected_level = 1u64;
            for cycle in d
                .sigma()
                .cycles()
                .iter()
                .chain(d.alpha().cycles().iter())
                .chain(d.faces().cycles().iter())
            {
                expected_level = lcm(expected_level, cycle.len() as u64);
            }
            assert_eq!(report.level, 2 * expected_level);
        }
    }
}

#[test]
fn generators_have_rank_index_plus_one_and_are_members() {
    for n in 1..=4usize {
        for base in transitive_dessins(n) {
            for e in 1..=n as Label {
                let d = base.remark(e).unwrap();
                let words = group_generators(&d);
                assert_eq!(words.len(), n + 1);
                for w in &words {
                    assert!(!w.is_identity());
                    assert!(is_member(&d, w), "{w} on {d}");
                }
            }
        }
    }
}

#[test]
fn membership_is_invariant_under_inversion() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let pool: Vec<Vec<Dessin>> = (1..=4).map(transitive_dessins).collect();
    for _ in 0..2000 {
        let n = rng.gen_range(1..=4);
        let dessins = &pool[n - 1];
        let d = &dessins[rng.gen_range(0..dessins.len())];
        let w = random_word(&mut rng, 30);
        assert_eq!(is_member(d, &w), is_member(d, &w.inverse()));
        let path = trace(d, &w);
        assert_eq!(path.len() as u64, w.letter_len() + 1);
        assert_eq!(path[0], d.marked());
        assert_eq!(is_member(d, &w), *path.last().unwrap() == d.marked());
    }
}

#[test]
fn action_respects_concatenation() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    let pool: Vec<Vec<Dessin>> = (1..=4).map(transitive_dessins).collect();
    for _ in 0..2000 {
        let n = rng.gen_range(1..=4);
        let dessins = &pool[n - 1];
        let d = &dessins[rng.gen_range(0..dessins.len())];
        let action = EdgeAction::new(d);
        let v = random_word(&mut rng, 15);
        let w = random_word(&mut rng, 15);
        let e = rng.gen_range(1..=n as Label);
        assert_eq!(
            action.end_from(e, &v.concat(&w)),
            action.end_from(action.end_from(e, &v), &w)
        );
    }
}

#[test]
fn congruence_verdict_is_marking_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let pool: Vec<Vec<Dessin>> = (1..=4).map(transitive_dessins).collect();
    let mut cache = BTreeMap::new();
    for trial in 0..5000 {
        let n = rng.gen_range(1..=4);
        let dessins = &pool[n - 1];
        let base = &dessins[rng.gen_range(0..dessins.len())];
        let d1 = base.remark(rng.gen_range(1..=n as Label)).unwrap();
        let d2 = base.remark(rng.gen_range(1..=n as Label)).unwrap();
        assert_eq!(d1.level(), d2.level());
        let c1 = contains_level_subgroup(&d1, &mut cache);
        let c2 = contains_level_subgroup(&d2, &mut cache);
        assert_eq!(c1, c2, "d1 = {d1}, d2 = {d2}");
        if trial % 250 == 0 {
            assert_eq!(decide(&d1, DEFAULT_MAX_COSETS).is_congruence(), c1);
        }
    }
}

#[test]
fn filters_never_certify_a_congruence_subgroup() {
    let mut cache = BTreeMap::new();
    for n in 1..=4usize {
        for d in transitive_dessins(n) {
            if filters(&d).is_certified() {
                assert!(
                    !contains_level_subgroup(&d, &mut cache),
                    "filter certified the congruence dessin {d}"
                );
            }
        }
    }
}

#[test]
fn gamma1_conversion_preserves_structure() {
    for n in 1..=4usize {
        for d in transitive_dessins(n) {
            let converted = to_gamma1(&d);
            let result = converted.dessin();
            assert_eq!(result.n(), 6 * n);
            for cycle in result.sigma().cycles() {
                assert_eq!(cycle.len(), 3);
            }
            for cycle in result.alpha().cycles() {
                assert_eq!(cycle.len(), 2);
            }
            let source = d.report();
            let mut doubled: Vec<usize> = source
                .black
                .iter()
                .chain(source.white.iter())
                .chain(source.face.iter())
                .map(|deg| 2 * deg)
                .collect();
            doubled.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(result.report().face, doubled);
            assert_eq!(result.report().genus, source.genus);
        }
    }
}

#[test]
fn dessin_text_round_trips_exhaustively() {
    for n in 1..=4usize {
        for base in transitive_dessins(n) {
            for e in 1..=n as Label {
                let d = base.remark(e).unwrap();
                assert_eq!(d.to_string().parse::<Dessin>().unwrap(), d);
            }
        }
    }
}
