#![allow(dead_code)]

//! Oracles shared by the integration suites. None of them touches the
//! bitset pattern matrices or the pruned searches they check.

use gradedpi_core::{DegreeWord, ElementaryGrading, GradingTuple, GroupDescriptor, GroupElement};
use rand::seq::SliceRandom;
use rand::Rng;

/// Whether the integer product of the matrix units is nonzero.
fn unit_product(n: usize, units: &[(usize, usize)]) -> bool {
    let mut acc = vec![vec![0i64; n]; n];
    for (i, row) in acc.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &(p, q) in units {
        let mut unit = vec![vec![0i64; n]; n];
        unit[p][q] = 1;
        let mut next = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if acc[i][k] != 0 {
                    for j in 0..n {
                        next[i][j] += acc[i][k] * unit[k][j];
                    }
                }
            }
        }
        acc = next;
    }
    acc.iter().flatten().any(|&v| v != 0)
}

/// Substitutes every admissible tuple of matrix units into `x_1 ... x_k`;
/// the word is an identity iff all products vanish.
pub fn brute_force_is_identity(grading: &ElementaryGrading, word: &[GroupElement]) -> bool {
    let desc = grading.descriptor();
    let entries = grading.tuple().entries();
    let n = entries.len();
    let units: Vec<Vec<(usize, usize)>> = word
        .iter()
        .map(|h| {
            let mut v = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    if desc.sub(&entries[q], &entries[p]).unwrap() == *h {
                        v.push((p, q));
                    }
                }
            }
            v
        })
        .collect();
    if units.iter().any(|u| u.is_empty()) {
        return true;
    }
    let mut choice = vec![0usize; word.len()];
    loop {
        let picked: Vec<(usize, usize)> = choice.iter().zip(&units).map(|(&c, u)| u[c]).collect();
        if unit_product(n, &picked) {
            return false;
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return true;
            }
            choice[k] += 1;
            if choice[k] < units[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Some contiguous sum outside the support, by direct summation.
pub fn brute_force_is_trivial(grading: &ElementaryGrading, word: &[GroupElement]) -> bool {
    let desc = grading.descriptor();
    let support = pairwise_differences(grading);
    (0..word.len()).any(|i| {
        (i..word.len()).any(|j| {
            let s = desc.word_sum(&word[i..=j]).unwrap();
            !support.contains(&s)
        })
    })
}

pub fn pairwise_differences(grading: &ElementaryGrading) -> Vec<GroupElement> {
    let desc = grading.descriptor();
    let e = grading.tuple().entries();
    let mut out = Vec::new();
    for a in e {
        for b in e {
            out.push(desc.sub(a, b).unwrap());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every word of length `len` over `alphabet`, in odometer order.
pub fn all_words(alphabet: &[GroupElement], len: usize) -> Vec<Vec<GroupElement>> {
    let mut out: Vec<Vec<GroupElement>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |a| {
                    let mut w = w.clone();
                    w.push(a.clone());
                    w
                })
            })
            .collect();
    }
    out
}

pub fn word(letters: &[GroupElement]) -> DegreeWord {
    DegreeWord::new(letters.to_vec()).unwrap()
}

pub fn ints(desc: &GroupDescriptor, values: &[i64]) -> Vec<GroupElement> {
    values.iter().map(|&v| desc.scalar(v).unwrap()).collect()
}

pub fn z(entries: &[i64]) -> ElementaryGrading {
    GradingTuple::integers(entries).unwrap().into()
}

pub fn zm(m: i64, entries: &[i64]) -> ElementaryGrading {
    GradingTuple::cyclic(m, entries).unwrap().into()
}

pub fn scalars(w: &DegreeWord) -> Vec<i64> {
    w.letters().iter().map(|e| e.coords()[0]).collect()
}

/// `n` distinct values drawn from `0..=max`.
pub fn distinct_values(rng: &mut impl Rng, n: usize, max: i64) -> Vec<i64> {
    let mut pool: Vec<i64> = (0..=max).collect();
    pool.shuffle(rng);
    pool.truncate(n);
    pool
}

/// A random distinct-entry grading over `Z` (entries in `0..=12`) or over
/// `Z_m` with `n <= m <= max_modulus`.
pub fn random_distinct_grading(rng: &mut impl Rng, n: usize, cyclic: bool, max_modulus: i64) -> ElementaryGrading {
    if cyclic {
        let m = rng.gen_range((n as i64).max(2)..=max_modulus.max(n as i64));
        zm(m, &distinct_values(rng, n, m - 1))
    } else {
        z(&distinct_values(rng, n, 12))
    }
}
