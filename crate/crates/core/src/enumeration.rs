//! Pruned searches over degree words.
//!
//! All searches run over letters from `support \ {0}` of a grading with
//! distinct entries; there `M_0` is the identity pattern, so degree zero
//! letters never change a verdict. Two facts drive the pruning:
//!
//! * a word with a contiguous subword of degree outside the support is a
//!   trivial identity, and so is every word containing it;
//! * once the running product is zero every extension is an identity and a
//!   consequence of the current word.
//!
//! Letters are visited in *search order*: by size first (sum of absolute
//! values of the coordinates, torsion residues taken in the symmetric range),
//! positive before negative. "Lexicographic" below always refers to that
//! order, and witnesses are the shortest, then lexicographically least.

use std::cmp::Reverse;
use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{ElementaryGrading, GradingTuple};
use crate::group::{GroupDescriptor, GroupElement};
use crate::monomial::{is_consequence, DegreeWord, GeneratorSet};
use crate::pattern::PatternMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Sort key placing small degrees first and `g` before `-g`.
pub fn search_key(desc: &GroupDescriptor, e: &GroupElement) -> (i64, Reverse<Vec<i64>>) {
    let (free, torsion) = e.coords().split_at(desc.free_rank());
    let mut signed: Vec<i64> = free.to_vec();
    signed.extend(
        torsion
            .iter()
            .zip(desc.moduli())
            .map(|(&t, &m)| if 2 * t <= m { t } else { t - m }),
    );
    let weight = signed.iter().map(|c| c.abs()).sum();
    (weight, Reverse(signed))
}

/// Support indexed for fast searching.
pub(crate) struct SearchSpace {
    support: Vec<GroupElement>,
    /// Nonzero support indices in search order.
    letters: Vec<usize>,
    patterns: Vec<PatternMatrix>,
    /// `sum[i * s + j]`: support index of `support[i] + support[j]`, if any.
    sum: Vec<Option<u32>>,
    set_words: usize,
    n: usize,
}

type SupportSet = Vec<u64>;

impl SearchSpace {
    pub(crate) fn new(grading: &ElementaryGrading) -> Self {
        let desc = grading.descriptor();
        let support = grading.support().to_vec();
        let s = support.len();
        let mut letters: Vec<usize> = (0..s).filter(|&i| !support[i].is_zero()).collect();
        letters.sort_by_key(|&i| search_key(desc, &support[i]));
        let patterns = support
            .iter()
            .map(|g| grading.component(g).expect("support element").pattern().clone())
            .collect();
        let mut sum = Vec::with_capacity(s * s);
        for a in &support {
            for b in &support {
                sum.push(grading.support_index(&desc.add_unchecked(a, b)).map(|i| i as u32));
            }
        }
        Self {
            support,
            letters,
            patterns,
            sum,
            set_words: s.div_ceil(64),
            n: grading.size(),
        }
    }

    fn singleton(&self, x: usize) -> SupportSet {
        let mut set = vec![0u64; self.set_words];
        set[x / 64] |= 1 << (x % 64);
        set
    }

    /// Suffix sums after appending `x`, or `None` if one leaves the support.
    fn extend_suffixes(&self, suffixes: &SupportSet, x: usize) -> Option<SupportSet> {
        let s = self.support.len();
        let mut out = self.singleton(x);
        for (w, &bits) in suffixes.iter().enumerate() {
            let mut rest = bits;
            while rest != 0 {
                let i = w * 64 + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let j = self.sum[i * s + x]? as usize;
                out[j / 64] |= 1 << (j % 64);
            }
        }
        Some(out)
    }

    fn word(&self, indices: &[usize]) -> DegreeWord {
        DegreeWord::new(indices.iter().map(|&i| self.support[i].clone()).collect()).expect("search words are nonempty")
    }

    fn rank_of(&self) -> Vec<usize> {
        let mut rank = vec![usize::MAX; self.support.len()];
        for (r, &i) in self.letters.iter().enumerate() {
            rank[i] = r;
        }
        rank
    }

    /// Depth-first collection of non-trivial identities with no identity
    /// as a proper prefix, lexicographic within each first letter.
    fn collect_identities(
        &self,
        word: &mut Vec<usize>,
        product: &PatternMatrix,
        suffixes: &SupportSet,
        max_len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if word.len() == max_len {
            return;
        }
        let mut next = PatternMatrix::zeros(self.n);
        for &x in &self.letters {
            let Some(ext) = self.extend_suffixes(suffixes, x) else {
                continue;
            };
            product.mul_into(&self.patterns[x], &mut next);
            word.push(x);
            if next.is_zero() {
                out.push(word.clone());
            } else {
                self.collect_identities(word, &next, &ext, max_len, out);
            }
            word.pop();
        }
    }

    fn identities_from(&self, first: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut word = vec![first];
        self.collect_identities(
            &mut word,
            &self.patterns[first],
            &self.singleton(first),
            max_len,
            &mut out,
        );
        out
    }

    /// Shortest, lexicographically least non-trivial identity of length at
    /// most `max_len`, by a level-by-level search over deduplicated states.
    ///
    /// A state is the running product with the set of suffix sums; both the
    /// future products and the future triviality tests depend only on it.
    /// A state seen at an earlier level reaches every identity sooner, so
    /// later copies are dropped.
    fn shortest_identity(&self, max_len: usize) -> Option<Vec<usize>> {
        let mut seen: HashSet<(Vec<u64>, SupportSet)> = HashSet::new();
        let mut frontier: Vec<(Vec<usize>, PatternMatrix, SupportSet)> = Vec::new();
        for &x in &self.letters {
            let suffixes = self.singleton(x);
            if seen.insert((self.patterns[x].raw().to_vec(), suffixes.clone())) {
                frontier.push((vec![x], self.patterns[x].clone(), suffixes));
            }
        }
        for _ in 1..max_len {
            let mut next_frontier = Vec::new();
            for (word, product, suffixes) in &frontier {
                for &x in &self.letters {
                    let Some(ext) = self.extend_suffixes(suffixes, x) else {
                        continue;
                    };
                    let next = product.mul(&self.patterns[x]);
                    let mut w = word.clone();
                    w.push(x);
                    if next.is_zero() {
                        return Some(w);
                    }
                    if seen.insert((next.raw().to_vec(), ext.clone())) {
                        next_frontier.push((w, next, ext));
                    }
                }
            }
            if next_frontier.is_empty() {
                break;
            }
            frontier = next_frontier;
        }
        None
    }

    /// Shortest, lexicographically least word of length `2..=max_len` whose
    /// product vanishes, whose contiguous sums stay in the support, and whose
    /// two end truncations do not vanish.
    fn shortest_violation(&self, max_len: usize) -> Option<Vec<usize>> {
        let identity = PatternMatrix::identity(self.n);
        let mut seen: HashSet<(Vec<u64>, Vec<u64>, SupportSet)> = HashSet::new();
        let mut frontier: Vec<(Vec<usize>, PatternMatrix, PatternMatrix, SupportSet)> = Vec::new();
        for &x in &self.letters {
            let suffixes = self.singleton(x);
            let product = self.patterns[x].clone();
            if product.is_zero() {
                continue;
            }
            if seen.insert((product.raw().to_vec(), identity.raw().to_vec(), suffixes.clone())) {
                frontier.push((vec![x], product, identity.clone(), suffixes));
            }
        }
        for _ in 1..max_len {
            let mut next_frontier = Vec::new();
            for (word, product, tail, suffixes) in &frontier {
                for &x in &self.letters {
                    let Some(ext) = self.extend_suffixes(suffixes, x) else {
                        continue;
                    };
                    let next = product.mul(&self.patterns[x]);
                    let next_tail = tail.mul(&self.patterns[x]);
                    let mut w = word.clone();
                    w.push(x);
                    if next.is_zero() {
                        if !next_tail.is_zero() {
                            return Some(w);
                        }
                        continue;
                    }
                    if seen.insert((next.raw().to_vec(), next_tail.raw().to_vec(), ext.clone())) {
                        next_frontier.push((w, next, next_tail, ext));
                    }
                }
            }
            if next_frontier.is_empty() {
                break;
            }
            frontier = next_frontier;
        }
        None
    }
}

/// Minimal non-trivial monomial identities up to a length bound.
#[derive(Debug, Clone)]
pub struct MinimalIdentitySet {
    /// The grading searched; the input with repeated entries removed.
    pub grading: ElementaryGrading,
    pub max_len: usize,
    /// Ordered by length, then lexicographically.
    pub identities: Vec<DegreeWord>,
    /// Identities met by the search before the minimality filter.
    pub recorded: usize,
}

pub fn enumerate_minimal_identities(grading: &ElementaryGrading, max_len: usize) -> Result<MinimalIdentitySet> {
    enumerate_minimal_identities_with(grading, max_len, Execution::Parallel)
}

pub fn enumerate_minimal_identities_with(
    grading: &ElementaryGrading,
    max_len: usize,
    execution: Execution,
) -> Result<MinimalIdentitySet> {
    if max_len < 1 {
        return Err(Error::InvalidBound(format!(
            "max_len must be at least 1, got {max_len}"
        )));
    }
    let reduced = grading.reduce_distinct();
    debug_assert!(reduced.distinct_entries());
    let space = SearchSpace::new(&reduced);
    let per_letter: Vec<Vec<Vec<usize>>> = match execution {
        Execution::Parallel => space
            .letters
            .par_iter()
            .map(|&x| space.identities_from(x, max_len))
            .collect(),
        Execution::Sequential => space
            .letters
            .iter()
            .map(|&x| space.identities_from(x, max_len))
            .collect(),
    };
    let mut found: Vec<Vec<usize>> = per_letter.into_iter().flatten().collect();
    let rank = space.rank_of();
    found.sort_by_cached_key(|w| (w.len(), w.iter().map(|&i| rank[i]).collect::<Vec<_>>()));
    let recorded = found.len();

    let mut identities: Vec<DegreeWord> = Vec::new();
    let mut shorter = GeneratorSet::new(&reduced, [])?;
    let mut pending: Vec<DegreeWord> = Vec::new();
    let mut current_len = 0;
    for w in &found {
        if w.len() != current_len {
            // Identities of the previous length become generators.
            shorter = GeneratorSet::new(&reduced, shorter.words().iter().cloned().chain(pending.drain(..)))?;
            current_len = w.len();
        }
        let word = space.word(w);
        if is_consequence(&reduced, &word, &shorter, true)?.is_none() {
            identities.push(word.clone());
        }
        pending.push(word);
    }
    Ok(MinimalIdentitySet {
        grading: reduced,
        max_len,
        identities,
        recorded,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostNondegeneracy {
    pub almost_nondegenerate: bool,
    /// Shortest, lexicographically least non-trivial identity.
    pub witness: Option<DegreeWord>,
    /// Length bound searched, the size of the reduced grading.
    pub searched_len: usize,
}

/// Decides almost non-degeneracy.
///
/// Searching up to the size `n'` of the reduced grading is enough: a longer
/// identity is a consequence of one of length at most `n'` whose letters are
/// contiguous sums of it, and those stay in the support.
pub fn is_almost_nondegenerate(grading: &ElementaryGrading) -> AlmostNondegeneracy {
    let reduced = grading.reduce_distinct();
    let n = reduced.size();
    let space = SearchSpace::new(&reduced);
    let witness = space.shortest_identity(n).map(|w| space.word(&w));
    AlmostNondegeneracy {
        almost_nondegenerate: witness.is_none(),
        witness,
        searched_len: n,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegeneracyReason {
    /// The group is infinite while every support is finite.
    InfiniteGroup,
    /// Some group element has a zero homogeneous component.
    SupportNotWholeGroup,
    Identity(DegreeWord),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub nondegenerate: bool,
    pub reason: Option<DegeneracyReason>,
}

pub fn is_nondegenerate(grading: &ElementaryGrading) -> Nondegeneracy {
    let verdict = |reason| Nondegeneracy {
        nondegenerate: false,
        reason: Some(reason),
    };
    let Some(order) = grading.descriptor().order() else {
        return verdict(DegeneracyReason::InfiniteGroup);
    };
    if grading.support().len() as u128 != order {
        return verdict(DegeneracyReason::SupportNotWholeGroup);
    }
    match is_almost_nondegenerate(grading).witness {
        Some(w) => verdict(DegeneracyReason::Identity(w)),
        None => Nondegeneracy {
            nondegenerate: true,
            reason: None,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodSequenceVerdict {
    pub tuple: Vec<i64>,
    pub max_len: usize,
    pub good_up_to_len: bool,
    pub violation: Option<Vec<i64>>,
}

/// Bounded test of the good-sequence property for an integer tuple.
///
/// A good verdict only covers violations of length at most `max_len`.
pub fn is_good_sequence(tuple: &[i64], max_len: usize) -> Result<GoodSequenceVerdict> {
    if max_len < 2 {
        return Err(Error::InvalidBound(format!(
            "good-sequence bound must be at least 2, got {max_len}"
        )));
    }
    let grading = ElementaryGrading::new(GradingTuple::integers(tuple)?);
    let space = SearchSpace::new(&grading);
    let violation = space
        .shortest_violation(max_len)
        .map(|w| w.iter().map(|&i| space.support[i].coords()[0]).collect());
    Ok(GoodSequenceVerdict {
        tuple: tuple.to_vec(),
        max_len,
        good_up_to_len: violation.is_none(),
        violation,
    })
}
