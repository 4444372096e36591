//! Deciding graded monomial identities of elementary gradings.
//!
//! A multilinear monomial `x_1 ... x_k` with `deg x_i = h_i` is recorded by
//! its degree word `(h_1, ..., h_k)`. It vanishes on the grading exactly when
//! the boolean product `M_{h_1} ... M_{h_k}` of pattern matrices is zero:
//! products of elementary matrices never cancel, so the field plays no role.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::ElementaryGrading;
use crate::group::{GroupDescriptor, GroupElement};
use crate::pattern::PatternMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DegreeWord {
    letters: Vec<GroupElement>,
}

impl DegreeWord {
    pub fn new(letters: Vec<GroupElement>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(Self { letters })
    }

    pub fn parse(descriptor: &GroupDescriptor, text: &str) -> Result<Self> {
        Self::new(descriptor.parse_elements(text)?)
    }

    /// Word over a rank-one group.
    pub fn scalars(descriptor: &GroupDescriptor, values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| descriptor.scalar(v)).collect::<Result<_>>()?)
    }

    pub fn letters(&self) -> &[GroupElement] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn total_degree(&self, descriptor: &GroupDescriptor) -> Result<GroupElement> {
        descriptor.word_sum(&self.letters)
    }

    /// Subword `h_start ... h_{end-1}`, or `None` when empty.
    pub fn slice(&self, start: usize, end: usize) -> Option<DegreeWord> {
        (start < end && end <= self.len()).then(|| DegreeWord {
            letters: self.letters[start..end].to_vec(),
        })
    }

    fn check(&self, descriptor: &GroupDescriptor) -> Result<()> {
        self.letters.iter().try_for_each(|h| descriptor.check(h))
    }
}

impl fmt::Display for DegreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, h) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Row indices `i_0, ..., i_k` with `e_{i_0 i_1} ... e_{i_{k-1} i_k} != 0`.
    NonIdentityChain(Vec<usize>),
    /// Inclusive letter range whose degree sum lies outside the support.
    TrivialInterval {
        start: usize,
        end: usize,
    },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub word: DegreeWord,
    pub is_identity: bool,
    pub is_trivial: bool,
    pub witness: Witness,
}

pub fn nonzero_rows(m: &PatternMatrix) -> usize {
    m.nonzero_rows()
}

/// Boolean product `M_{h_1} ... M_{h_k}`.
pub fn eval_word(grading: &ElementaryGrading, word: &DegreeWord) -> Result<PatternMatrix> {
    word.check(grading.descriptor())?;
    Ok(eval_unchecked(grading, word.letters()))
}

pub(crate) fn eval_unchecked(grading: &ElementaryGrading, letters: &[GroupElement]) -> PatternMatrix {
    let n = grading.size();
    let mut acc = match grading.component(&letters[0]) {
        Some(c) => c.pattern().clone(),
        None => return PatternMatrix::zeros(n),
    };
    let mut scratch = PatternMatrix::zeros(n);
    for h in &letters[1..] {
        let Some(c) = grading.component(h) else {
            return PatternMatrix::zeros(n);
        };
        acc.mul_into(c.pattern(), &mut scratch);
        std::mem::swap(&mut acc, &mut scratch);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Shortest, then leftmost, inclusive interval whose sum leaves the support.
pub fn trivial_interval(grading: &ElementaryGrading, word: &DegreeWord) -> Result<Option<(usize, usize)>> {
    word.check(grading.descriptor())?;
    Ok(trivial_interval_unchecked(grading, word.letters()))
}

fn trivial_interval_unchecked(grading: &ElementaryGrading, letters: &[GroupElement]) -> Option<(usize, usize)> {
    let desc = grading.descriptor();
    let k = letters.len();
    let mut prefix = Vec::with_capacity(k + 1);
    prefix.push(desc.zero());
    for h in letters {
        let next = desc.add_unchecked(prefix.last().unwrap(), h);
        prefix.push(next);
    }
    for len in 1..=k {
        for start in 0..=k - len {
            let sum = desc.sub_unchecked(&prefix[start + len], &prefix[start]);
            if !grading.in_support(&sum) {
                return Some((start, start + len - 1));
            }
        }
    }
    None
}

/// Lexicographically least index chain realising a nonzero product.
fn least_chain(grading: &ElementaryGrading, letters: &[GroupElement]) -> Option<Vec<usize>> {
    let n = grading.size();
    let k = letters.len();
    let patterns: Vec<&PatternMatrix> = letters
        .iter()
        .map(|h| grading.component(h).map(|c| c.pattern()))
        .collect::<Option<_>>()?;
    // alive[t][i]: a chain can continue from row i through letters t..k.
    let mut alive = vec![vec![false; n]; k + 1];
    alive[k] = vec![true; n];
    for t in (0..k).rev() {
        for i in 0..n {
            alive[t][i] = patterns[t].row_ones(i).any(|j| alive[t + 1][j]);
        }
    }
    let mut chain = vec![(0..n).find(|&i| alive[0][i])?];
    for t in 0..k {
        let cur = *chain.last().unwrap();
        let next = patterns[t]
            .row_ones(cur)
            .find(|&j| alive[t + 1][j])
            .expect("alive row has a live successor");
        chain.push(next);
    }
    Some(chain)
}

pub fn classify_word(grading: &ElementaryGrading, word: &DegreeWord) -> Result<IdentityReport> {
    let product = eval_word(grading, word)?;
    let is_identity = product.is_zero();
    let interval = trivial_interval_unchecked(grading, word.letters());
    let witness = match (interval, is_identity) {
        (Some((start, end)), _) => Witness::TrivialInterval { start, end },
        (None, true) => Witness::None,
        (None, false) => {
            Witness::NonIdentityChain(least_chain(grading, word.letters()).expect("nonzero product has a chain"))
        }
    };
    if interval.is_some() && !is_identity {
        return Err(Error::Inconsistent(format!(
            "word {word} has a subword of degree outside the support but does not vanish"
        )));
    }
    Ok(IdentityReport {
        word: word.clone(),
        is_identity,
        is_trivial: interval.is_some(),
        witness,
    })
}

#[derive(Debug, Default, Clone)]
struct TrieNode {
    /// `(letter id, child)` sorted by letter id.
    children: Vec<(u32, usize)>,
    terminal: Option<usize>,
}

/// A verified set of monomial identities, indexed by a prefix trie.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    words: Vec<DegreeWord>,
    /// Sorted letters occurring in some generator; trie edges use their index.
    alphabet: Vec<GroupElement>,
    nodes: Vec<TrieNode>,
}

impl GeneratorSet {
    /// Fails when some generator is not an identity of `grading`.
    pub fn new(grading: &ElementaryGrading, generators: impl IntoIterator<Item = DegreeWord>) -> Result<Self> {
        let generators: Vec<DegreeWord> = generators.into_iter().collect();
        for word in &generators {
            if !eval_word(grading, word)?.is_zero() {
                return Err(Error::GeneratorNotIdentity(word.to_string()));
            }
        }
        let mut alphabet: Vec<GroupElement> = generators.iter().flat_map(|w| w.letters().iter().cloned()).collect();
        alphabet.sort();
        alphabet.dedup();
        let mut set = Self {
            words: Vec::new(),
            alphabet,
            nodes: vec![TrieNode::default()],
        };
        for word in generators {
            set.insert(word);
        }
        Ok(set)
    }

    fn letter_id(&self, h: &GroupElement) -> Option<u32> {
        self.alphabet.binary_search(h).ok().map(|i| i as u32)
    }

    fn child(&self, node: usize, letter: u32) -> Option<usize> {
        let children = &self.nodes[node].children;
        children
            .binary_search_by_key(&letter, |&(l, _)| l)
            .ok()
            .map(|i| children[i].1)
    }

    fn insert(&mut self, word: DegreeWord) {
        let mut node = 0;
        for h in word.letters() {
            let letter = self.letter_id(h).expect("alphabet covers every generator");
            node = match self.child(node, letter) {
                Some(child) => child,
                None => {
                    self.nodes.push(TrieNode::default());
                    let child = self.nodes.len() - 1;
                    let children = &mut self.nodes[node].children;
                    let at = children.partition_point(|&(l, _)| l < letter);
                    children.insert(at, (letter, child));
                    child
                }
            };
        }
        if self.nodes[node].terminal.is_none() {
            self.nodes[node].terminal = Some(self.words.len());
            self.words.push(word);
        }
    }

    pub fn words(&self) -> &[DegreeWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsequenceWitness {
    /// The word is trivial; inclusive interval as in [`Witness::TrivialInterval`].
    Trivial { start: usize, end: usize },
    /// Letters `start..cuts.last()` split at `cuts` into blocks whose degree
    /// sums spell `generator`.
    Substitution {
        start: usize,
        cuts: Vec<usize>,
        generator: DegreeWord,
    },
}

impl ConsequenceWitness {
    /// Block ranges `[a, b)` of a substitution witness.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        match self {
            Self::Trivial { .. } => Vec::new(),
            Self::Substitution { start, cuts, .. } => {
                let mut prev = *start;
                cuts.iter()
                    .map(|&c| {
                        let b = (prev, c);
                        prev = c;
                        b
                    })
                    .collect()
            }
        }
    }
}

/// Searches for a substitution of a generator (or triviality) producing `word`.
///
/// Walks positions of the word together with nodes of the generator trie;
/// states that failed once are never revisited.
pub fn is_consequence(
    grading: &ElementaryGrading,
    word: &DegreeWord,
    generators: &GeneratorSet,
    allow_trivial: bool,
) -> Result<Option<ConsequenceWitness>> {
    word.check(grading.descriptor())?;
    let letters = word.letters();
    if !eval_unchecked(grading, letters).is_zero() {
        return Err(Error::NotAnIdentity(word.to_string()));
    }
    if allow_trivial {
        if let Some((start, end)) = trivial_interval_unchecked(grading, letters) {
            return Ok(Some(ConsequenceWitness::Trivial { start, end }));
        }
    }
    let desc = grading.descriptor();
    let k = word.len();
    // sums[pos][end - pos - 1] is the generator letter id of the degree of
    // letters pos..end, if that degree occurs in some generator.
    let sums: Vec<Vec<Option<u32>>> = (0..k)
        .map(|pos| {
            let mut acc = desc.zero();
            letters[pos..]
                .iter()
                .map(|h| {
                    acc = desc.add_unchecked(&acc, h);
                    generators.letter_id(&acc)
                })
                .collect()
        })
        .collect();

    struct Search<'a> {
        sums: &'a [Vec<Option<u32>>],
        generators: &'a GeneratorSet,
        dead: HashSet<(usize, usize)>,
        cuts: Vec<usize>,
    }

    impl Search<'_> {
        fn walk(&mut self, pos: usize, node: usize) -> Option<usize> {
            if let Some(g) = self.generators.nodes[node].terminal {
                if !self.cuts.is_empty() {
                    return Some(g);
                }
            }
            if pos == self.sums.len() || self.dead.contains(&(pos, node)) {
                return None;
            }
            for (offset, letter) in self.sums[pos].iter().enumerate() {
                let Some(child) = letter.and_then(|l| self.generators.child(node, l)) else {
                    continue;
                };
                let end = pos + offset + 1;
                self.cuts.push(end);
                if let Some(g) = self.walk(end, child) {
                    return Some(g);
                }
                self.cuts.pop();
            }
            self.dead.insert((pos, node));
            None
        }
    }

    let mut search = Search {
        sums: &sums,
        generators,
        dead: HashSet::new(),
        cuts: Vec::new(),
    };
    for start in 0..k {
        if let Some(g) = search.walk(start, 0) {
            return Ok(Some(ConsequenceWitness::Substitution {
                start,
                cuts: search.cuts,
                generator: generators.words[g].clone(),
            }));
        }
    }
    Ok(None)
}
