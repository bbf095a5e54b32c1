//! Exhaustive enumeration of dessins with a fixed number of edges.
//!
//! Subgroups of index `n` in the group generated by `A` and `B` correspond
//! to dessins with `n` edges and a marked edge, counted up to relabelings
//! that keep the marked edge fixed. The enumeration walks every pair of
//! permutations of `{1..n}`, keeps the transitive ones, and canonicalizes
//! each pair by minimizing over relabelings of `{2..n}` with the marked
//! edge pinned at 1.

use std::collections::{BTreeMap, BTreeSet};

use gamma2::congruence::{gamma_m_generators, CongruenceError};
use gamma2::larcher::{pair_filter, width_filter};
use gamma2::perm::{all, is_transitive};
use gamma2::{is_member, Dessin, Label, Permutation, Word};

/// Tallies from deciding congruence for every subgroup of a given index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Classification {
    pub congruence: u64,
    pub noncongruence: u64,
    pub budget_exceeded: u64,
    /// Certified noncongruence by the face/vertex degree pair filter.
    pub pair_certified: u64,
    /// Certified noncongruence by the missing-width filter.
    pub width_certified: u64,
    /// Certified by at least one filter.
    pub filter_certified: u64,
}

/// Counts, and optionally classifies, all dessins with `n` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub n: usize,
    /// Transitive pairs `(sigma, alpha)` on `{1..n}`, all labelings.
    pub transitive_pairs: u64,
    /// Canonical representatives with the marked edge pinned at 1.
    pub rooted_count: u64,
    /// `transitive_pairs / (n-1)!`, the number of index-`n` subgroups.
    pub subgroup_count: u64,
    pub classification: Option<Classification>,
}

/// Enumerates all dessins with `n` edges. With `classify`, also decides
/// congruence for one representative per subgroup, sharing the generator
/// lists between dessins of the same level.
pub fn enumerate(n: usize, classify: bool, max_cosets: usize) -> EnumerationReport {
    assert!(n >= 1, "a dessin needs at least one edge");
    let perms: Vec<Permutation> = all(n).collect();
    let relabelings = rooted_relabelings(n);
    let mut transitive_pairs = 0u64;
    let mut canonical: BTreeSet<(Vec<Label>, Vec<Label>)> = BTreeSet::new();
    for sigma in &perms {
        for alpha in &perms {
            if !is_transitive(n, &[sigma, alpha]) {
                continue;
            }
            transitive_pairs += 1;
            canonical.insert(canonical_form(sigma, alpha, &relabelings));
        }
    }
    let fact = factorial(n - 1);
    assert_eq!(
        transitive_pairs % fact,
        0,
        "relabelings of {{2..n}} act freely on transitive pairs"
    );
    let subgroup_count = transitive_pairs / fact;
    let rooted_count = canonical.len() as u64;
    let classification = classify.then(|| classify_all(&canonical, max_cosets));
    EnumerationReport {
        n,
        transitive_pairs,
        rooted_count,
        subgroup_count,
        classification,
    }
}

fn classify_all(
    canonical: &BTreeSet<(Vec<Label>, Vec<Label>)>,
    max_cosets: usize,
) -> Classification {
    let mut tally = Classification::default();
    let mut generators: BTreeMap<u32, Result<Vec<Word>, CongruenceError>> = BTreeMap::new();
    for (sigma, alpha) in canonical {
        let sigma = Permutation::from_images(sigma.clone()).unwrap();
        let alpha = Permutation::from_images(alpha.clone()).unwrap();
        let d = Dessin::new(sigma, alpha, 1).unwrap();
        let pair = pair_filter(&d).is_certified();
        let width = width_filter(&d).is_certified();
        tally.pair_certified += u64::from(pair);
        tally.width_certified += u64::from(width);
        tally.filter_certified += u64::from(pair || width);
        let Ok(m) = u32::try_from(d.level()) else {
            tally.budget_exceeded += 1;
            continue;
        };
        let entry = generators
            .entry(m)
            .or_insert_with(|| gamma_m_generators(m, max_cosets));
        match entry {
            Err(_) => tally.budget_exceeded += 1,
            Ok(words) => {
                if words.iter().all(|w| is_member(&d, w)) {
                    tally.congruence += 1;
                } else {
                    tally.noncongruence += 1;
                }
            }
        }
    }
    tally
}

/// All permutations of `{1..n}` that fix the label 1.
fn rooted_relabelings(n: usize) -> Vec<Permutation> {
    all(n - 1)
        .map(|q| {
            let mut images = Vec::with_capacity(n);
            images.push(1);
            for x in 1..n {
                images.push(q.apply(x as Label) + 1);
            }
            Permutation::from_images(images).unwrap()
        })
        .collect()
}

/// Lexicographically least image vectors of `(sigma, alpha)` over
/// simultaneous conjugation by the given relabelings.
fn canonical_form(
    sigma: &Permutation,
    alpha: &Permutation,
    relabelings: &[Permutation],
) -> (Vec<Label>, Vec<Label>) {
    let mut best: Option<(Vec<Label>, Vec<Label>)> = None;
    for pi in relabelings {
        let inv = pi.inverse();
        let cand = (
            images(&inv.then(sigma).then(pi)),
            images(&inv.then(alpha).then(pi)),
        );
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap()
}

fn images(p: &Permutation) -> Vec<Label> {
    (1..=p.len() as Label).map(|x| p.apply(x)).collect()
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}
