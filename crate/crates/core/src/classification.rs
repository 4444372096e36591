//! Almost non-degenerate integer gradings of small matrix algebras.

use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{is_almost_nondegenerate, Execution};
use crate::error::{Error, Result};
use crate::grading::{is_isomorphic, ElementaryGrading, GradingTuple};

/// The three checkable characterisations of gradings equivalent to the
/// canonical `Z`-grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CanonicalZCriteria {
    /// The support has exactly `2n - 1` elements.
    pub support_size: bool,
    /// Sorted entries form `(c, c + g, ..., c + (n-1)g)` with `g > 0`.
    pub arithmetic_progression: bool,
    /// Some nonzero `g` has `dim R_g = n - 1`.
    pub full_component: bool,
}

impl CanonicalZCriteria {
    pub fn agree(&self) -> bool {
        self.support_size == self.arithmetic_progression && self.support_size == self.full_component
    }
}

pub fn canonical_z_criteria(grading: &ElementaryGrading) -> Result<CanonicalZCriteria> {
    let desc = grading.descriptor();
    if !desc.torsion_free() {
        return Err(Error::Torsion(desc.to_string()));
    }
    if !grading.distinct_entries() {
        return Err(Error::RepeatedEntries);
    }
    let n = grading.size();
    let support_size = grading.support().len() == 2 * n - 1;

    let mut sorted = grading.tuple().entries().to_vec();
    sorted.sort();
    let arithmetic_progression = match sorted.get(1) {
        None => true,
        Some(second) => {
            let step = desc.sub_unchecked(second, &sorted[0]);
            sorted.windows(2).all(|w| desc.sub_unchecked(&w[1], &w[0]) == step)
        }
    };

    let full_component = n == 1 || grading.components().any(|(g, c)| !g.is_zero() && c.dim() == n - 1);

    Ok(CanonicalZCriteria {
        support_size,
        arithmetic_progression,
        full_component,
    })
}

/// Whether the grading is equivalent to the canonical `Z`-grading.
///
/// Fails loudly if the characterisations disagree, which would be a bug.
pub fn equiv_canonical_z(grading: &ElementaryGrading) -> Result<bool> {
    let c = canonical_z_criteria(grading)?;
    if !c.agree() {
        return Err(Error::Inconsistent(format!(
            "canonical Z criteria disagree on {}: {c:?}",
            grading.tuple()
        )));
    }
    Ok(c.support_size)
}

/// The four-parameter family `(0, a, a+b, 2a+b)` or the five-entry family
/// `(0, a, a+b, a+2b, 2a+2b)`, with the predicted almost non-degeneracy.
pub fn family_verdict(n: usize, a: i64, b: i64) -> Result<(GradingTuple, bool)> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidBound(format!(
            "family parameters must be positive, got a={a}, b={b}"
        )));
    }
    let (entries, predicted) = match n {
        4 => (vec![0, a, a + b, 2 * a + b], a != 2 * b && 2 * a != b),
        5 => (
            vec![0, a, a + b, a + 2 * b, 2 * a + 2 * b],
            a != 2 * b && b != 2 * a && a != 3 * b && a != 4 * b,
        ),
        _ => return Err(Error::UnsupportedSize(n)),
    };
    Ok((GradingTuple::integers(&entries)?, predicted))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyMatch {
    CanonicalZ { step: i64 },
    FamilyN4 { a: i64, b: i64 },
    FamilyN5 { a: i64, b: i64 },
    Unmatched,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Survivor {
    pub tuple: Vec<i64>,
    pub family: FamilyMatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub n: usize,
    pub bound: i64,
    pub pruned: bool,
    /// Tuples that went through the almost non-degeneracy search.
    pub examined: usize,
    /// Ascending tuples starting at `0`, in lexicographic order.
    pub survivors: Vec<Survivor>,
}

impl ClassificationResult {
    pub fn unmatched(&self) -> Vec<&[i64]> {
        self.survivors
            .iter()
            .filter(|s| s.family == FamilyMatch::Unmatched)
            .map(|s| s.tuple.as_slice())
            .collect()
    }

    pub fn survivor_tuples(&self) -> Vec<Vec<i64>> {
        self.survivors.iter().map(|s| s.tuple.clone()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Skip tuples whose difference profile is not palindromic.
    pub prune_palindromic: bool,
    pub execution: Execution,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            prune_palindromic: true,
            execution: Execution::Parallel,
        }
    }
}

fn match_family(tuple: &[i64]) -> Result<FamilyMatch> {
    let grading = ElementaryGrading::new(GradingTuple::integers(tuple)?);
    if equiv_canonical_z(&grading)? {
        return Ok(FamilyMatch::CanonicalZ {
            step: tuple.get(1).map_or(0, |g| g - tuple[0]),
        });
    }
    let n = tuple.len();
    if n != 4 && n != 5 {
        return Ok(FamilyMatch::Unmatched);
    }
    let a = tuple[1] - tuple[0];
    let b = tuple[2] - tuple[1];
    if a < 1 || b < 1 {
        return Ok(FamilyMatch::Unmatched);
    }
    let (family, predicted) = family_verdict(n, a, b)?;
    if predicted && is_isomorphic(&family, grading.tuple())? {
        return Ok(if n == 4 {
            FamilyMatch::FamilyN4 { a, b }
        } else {
            FamilyMatch::FamilyN5 { a, b }
        });
    }
    Ok(FamilyMatch::Unmatched)
}

/// Ascending tuples `(0, g_2, ..., g_n)` with `g_2 = second` and `g_n <= bound`.
fn tuples_starting_with(n: usize, second: i64, bound: i64) -> Vec<Vec<i64>> {
    fn extend(cur: &mut Vec<i64>, n: usize, bound: i64, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let remaining = (n - cur.len()) as i64;
        let last = *cur.last().unwrap();
        for next in last + 1..=bound - (remaining - 1) {
            cur.push(next);
            extend(cur, n, bound, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![0, second], n, bound, &mut out);
    out
}

fn palindromic(tuple: &[i64]) -> bool {
    let steps: Vec<i64> = tuple.windows(2).map(|w| w[1] - w[0]).collect();
    steps.iter().eq(steps.iter().rev())
}

/// Exhaustive search for almost non-degenerate integer gradings of `M_n`
/// with entries in `[0, bound]`, matched against the known families.
pub fn classify_almost_nondeg(n: usize, bound: i64, options: ClassifyOptions) -> Result<ClassificationResult> {
    if !(2..=5).contains(&n) {
        return Err(Error::UnsupportedSize(n));
    }
    if bound < n as i64 - 1 {
        return Err(Error::InvalidBound(format!(
            "bound must be at least n - 1 = {}, got {bound}",
            n - 1
        )));
    }
    let seconds: Vec<i64> = (1..=bound - (n as i64 - 2)).collect();
    let per_second = |&second: &i64| -> Result<(usize, Vec<Survivor>)> {
        let mut examined = 0;
        let mut survivors = Vec::new();
        for tuple in tuples_starting_with(n, second, bound) {
            if options.prune_palindromic && !palindromic(&tuple) {
                continue;
            }
            examined += 1;
            let grading = ElementaryGrading::new(GradingTuple::integers(&tuple)?);
            if is_almost_nondegenerate(&grading).almost_nondegenerate {
                let family = match_family(&tuple)?;
                survivors.push(Survivor { tuple, family });
            }
        }
        Ok((examined, survivors))
    };
    let parts: Vec<Result<(usize, Vec<Survivor>)>> = match options.execution {
        Execution::Parallel => seconds.par_iter().map(per_second).collect(),
        Execution::Sequential => seconds.iter().map(per_second).collect(),
    };
    let mut examined = 0;
    let mut survivors = Vec::new();
    for part in parts {
        let (e, s) = part?;
        examined += e;
        survivors.extend(s);
    }
    Ok(ClassificationResult {
        n,
        bound,
        pruned: options.prune_palindromic,
        examined,
        survivors,
    })
}
