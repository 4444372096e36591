//! Elementary gradings on `M_n(F)` induced by a degree tuple.
//!
//! The elementary matrix `e_pq` sits in degree `g_q - g_p`. Indices are
//! zero-based throughout the library.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement};
use crate::pattern::PatternMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingTuple {
    descriptor: GroupDescriptor,
    entries: Vec<GroupElement>,
}

impl GradingTuple {
    pub fn new(descriptor: GroupDescriptor, entries: Vec<GroupElement>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyTuple);
        }
        for e in &entries {
            descriptor.check(e)?;
        }
        Ok(Self { descriptor, entries })
    }

    /// Parses a group spec and a comma separated list of entries.
    pub fn parse(group: &str, entries: &str) -> Result<Self> {
        let descriptor = GroupDescriptor::parse(group)?;
        let entries = descriptor.parse_elements(entries)?;
        Self::new(descriptor, entries)
    }

    pub fn integers(entries: &[i64]) -> Result<Self> {
        Self::over_rank_one(GroupDescriptor::integers(), entries)
    }

    pub fn cyclic(modulus: i64, entries: &[i64]) -> Result<Self> {
        Self::over_rank_one(GroupDescriptor::cyclic(modulus)?, entries)
    }

    fn over_rank_one(descriptor: GroupDescriptor, entries: &[i64]) -> Result<Self> {
        let entries = entries
            .iter()
            .map(|&v| descriptor.scalar(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(descriptor, entries)
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn entries(&self) -> &[GroupElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn has_distinct_entries(&self) -> bool {
        let set: BTreeSet<_> = self.entries.iter().collect();
        set.len() == self.entries.len()
    }

    /// Rank-one coordinates, for integer and cyclic tuples.
    pub fn scalars(&self) -> Option<Vec<i64>> {
        (self.descriptor.rank() == 1).then(|| self.entries.iter().map(|e| e.coords()[0]).collect())
    }
}

impl fmt::Display for GradingTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// A nonzero homogeneous component `R_g`.
#[derive(Debug, Clone)]
pub struct Component {
    pairs: Vec<(usize, usize)>,
    pattern: PatternMatrix,
}

impl Component {
    /// Index pairs `(p, q)` with `e_pq` in the component, row-major.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pattern(&self) -> &PatternMatrix {
        &self.pattern
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }
}

#[derive(Debug, Clone)]
pub struct ElementaryGrading {
    tuple: GradingTuple,
    support: Vec<GroupElement>,
    components: BTreeMap<GroupElement, Component>,
    distinct_entries: bool,
}

/// Step sequence `g_{t+1} - g_t` of an ascending tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceProfile {
    pub steps: Vec<GroupElement>,
    pub palindromic: bool,
}

impl ElementaryGrading {
    pub fn new(tuple: GradingTuple) -> Self {
        let n = tuple.len();
        let desc = tuple.descriptor();
        let mut pairs: BTreeMap<GroupElement, Vec<(usize, usize)>> = BTreeMap::new();
        for p in 0..n {
            for q in 0..n {
                let g = desc.sub_unchecked(&tuple.entries[q], &tuple.entries[p]);
                pairs.entry(g).or_default().push((p, q));
            }
        }
        let components: BTreeMap<_, _> = pairs
            .into_iter()
            .map(|(g, pairs)| {
                let pattern = PatternMatrix::from_ones(n, pairs.iter().copied());
                debug_assert_eq!(pattern.popcount(), pairs.len());
                (g, Component { pairs, pattern })
            })
            .collect();
        let support = components.keys().cloned().collect();
        let distinct_entries = tuple.has_distinct_entries();
        debug_assert_eq!(
            distinct_entries,
            components[&desc.zero()].dim() == n,
            "neutral component has dimension n exactly when entries are distinct"
        );
        Self {
            tuple,
            support,
            components,
            distinct_entries,
        }
    }

    pub fn tuple(&self) -> &GradingTuple {
        &self.tuple
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        self.tuple.descriptor()
    }

    /// Matrix size `n`.
    pub fn size(&self) -> usize {
        self.tuple.len()
    }

    /// Support in ascending coordinate order.
    pub fn support(&self) -> &[GroupElement] {
        &self.support
    }

    pub fn in_support(&self, g: &GroupElement) -> bool {
        self.components.contains_key(g)
    }

    pub fn support_index(&self, g: &GroupElement) -> Option<usize> {
        self.support.binary_search(g).ok()
    }

    pub fn components(&self) -> impl Iterator<Item = (&GroupElement, &Component)> {
        self.components.iter()
    }

    pub fn component(&self, g: &GroupElement) -> Option<&Component> {
        self.components.get(g)
    }

    /// Pairs of `R_g`, empty outside the support.
    pub fn component_pairs(&self, g: &GroupElement) -> &[(usize, usize)] {
        self.components.get(g).map_or(&[], |c| c.pairs())
    }

    pub fn dim(&self, g: &GroupElement) -> usize {
        self.component_pairs(g).len()
    }

    pub fn distinct_entries(&self) -> bool {
        self.distinct_entries
    }

    /// `M_g`: ones exactly at `(p, q)` with `g_q - g_p = g`.
    pub fn pattern_matrix(&self, g: &GroupElement) -> Result<PatternMatrix> {
        self.descriptor().check(g)?;
        Ok(self
            .components
            .get(g)
            .map_or_else(|| PatternMatrix::zeros(self.size()), |c| c.pattern.clone()))
    }

    /// Row-to-column map of `R_g`; injective when entries are distinct.
    pub fn hat_map(&self, g: &GroupElement) -> Result<BTreeMap<usize, usize>> {
        self.descriptor().check(g)?;
        if !self.distinct_entries {
            return Err(Error::RepeatedEntries);
        }
        let c = self
            .components
            .get(g)
            .ok_or_else(|| Error::NotInSupport(g.to_string()))?;
        Ok(c.pairs.iter().copied().collect())
    }

    /// Grading induced by the first occurrence of every distinct entry.
    pub fn reduce_distinct(&self) -> ElementaryGrading {
        if self.distinct_entries {
            return self.clone();
        }
        let mut seen = BTreeSet::new();
        let entries = self
            .tuple
            .entries
            .iter()
            .filter(|e| seen.insert((*e).clone()))
            .cloned()
            .collect();
        let tuple = GradingTuple {
            descriptor: self.descriptor().clone(),
            entries,
        };
        ElementaryGrading::new(tuple)
    }

    pub fn difference_profile(&self) -> Result<DifferenceProfile> {
        let desc = self.descriptor();
        if !desc.torsion_free() {
            return Err(Error::Torsion(desc.to_string()));
        }
        if !self.distinct_entries {
            return Err(Error::RepeatedEntries);
        }
        let mut sorted = self.tuple.entries.clone();
        sorted.sort();
        let steps: Vec<_> = sorted.windows(2).map(|w| desc.sub_unchecked(&w[1], &w[0])).collect();
        let palindromic = steps.iter().eq(steps.iter().rev());
        Ok(DifferenceProfile { steps, palindromic })
    }
}

impl From<GradingTuple> for ElementaryGrading {
    fn from(tuple: GradingTuple) -> Self {
        Self::new(tuple)
    }
}

/// Representative of the isomorphism class of the tuple.
///
/// Candidates are the sorted translates `sort(entries - g_i)` whose smallest
/// element is the neutral element; the lexicographically least candidate
/// wins. Translating by the least entry always qualifies, so for integer
/// tuples this yields the ascending tuple starting at `0`.
pub fn canonical_form(tuple: &GradingTuple) -> GradingTuple {
    let desc = tuple.descriptor();
    let zero = desc.zero();
    let mut pivots: Vec<&GroupElement> = tuple.entries().iter().collect();
    pivots.sort();
    pivots.dedup();
    pivots
        .into_iter()
        .filter_map(|pivot| {
            let mut shifted: Vec<_> = tuple.entries().iter().map(|e| desc.sub_unchecked(e, pivot)).collect();
            shifted.sort();
            (shifted[0] == zero).then_some(shifted)
        })
        .min()
        .map(|entries| GradingTuple {
            descriptor: desc.clone(),
            entries,
        })
        .expect("translating by the least entry yields a candidate")
}

pub fn is_isomorphic(a: &GradingTuple, b: &GradingTuple) -> Result<bool> {
    if a.descriptor() != b.descriptor() {
        return Err(Error::DescriptorMismatch {
            element: b.to_string(),
            group: a.descriptor().to_string(),
        });
    }
    Ok(a.len() == b.len() && canonical_form(a) == canonical_form(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(entries: &[i64]) -> ElementaryGrading {
        GradingTuple::integers(entries).unwrap().into()
    }

    fn zm(m: i64, entries: &[i64]) -> ElementaryGrading {
        GradingTuple::cyclic(m, entries).unwrap().into()
    }

    fn el(g: &ElementaryGrading, v: i64) -> GroupElement {
        g.descriptor().scalar(v).unwrap()
    }

    fn support_scalars(g: &ElementaryGrading) -> Vec<i64> {
        g.support().iter().map(|e| e.coords()[0]).collect()
    }

    #[test]
    fn build_canonical_three() {
        let g = z(&[0, 1, 2]);
        assert_eq!(support_scalars(&g), vec![-2, -1, 0, 1, 2]);
        assert_eq!(g.component_pairs(&el(&g, 1)), &[(0, 1), (1, 2)]);
        assert!(g.distinct_entries());
        assert!(g.component_pairs(&el(&g, 7)).is_empty());
    }

    #[test]
    fn build_cyclic_covers_group() {
        let g = zm(5, &[0, 1, 2]);
        assert_eq!(support_scalars(&g), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn build_family_four() {
        let g = z(&[0, 2, 3, 5]);
        assert_eq!(g.component_pairs(&el(&g, 1)), &[(1, 2)]);
        assert_eq!(g.component_pairs(&el(&g, 2)), &[(0, 1), (2, 3)]);
    }

    #[test]
    fn pattern_matrix_examples() {
        let g = z(&[0, 1, 2]);
        assert_eq!(g.pattern_matrix(&el(&g, 1)).unwrap().ones(), vec![(0, 1), (1, 2)]);
        assert!(g.pattern_matrix(&el(&g, 5)).unwrap().is_zero());
        let h = zm(5, &[0, 1, 2]);
        assert_eq!(h.pattern_matrix(&el(&h, 2)).unwrap().ones(), vec![(0, 2)]);
        let other = GroupDescriptor::parse("Z^2").unwrap().zero();
        assert!(g.pattern_matrix(&other).is_err());
    }

    #[test]
    fn hat_map_examples() {
        let g = z(&[0, 1, 2]);
        let m: Vec<_> = g.hat_map(&el(&g, 1)).unwrap().into_iter().collect();
        assert_eq!(m, vec![(0, 1), (1, 2)]);
        let m: Vec<_> = g.hat_map(&el(&g, 2)).unwrap().into_iter().collect();
        assert_eq!(m, vec![(0, 2)]);
        let h = z(&[0, 2, 3, 5]);
        let m: Vec<_> = h.hat_map(&el(&h, 3)).unwrap().into_iter().collect();
        assert_eq!(m, vec![(0, 2), (1, 3)]);
        assert!(matches!(g.hat_map(&el(&g, 9)), Err(Error::NotInSupport(_))));
        let rep = z(&[0, 0, 1]);
        assert_eq!(rep.hat_map(&el(&rep, 1)), Err(Error::RepeatedEntries));
    }

    #[test]
    fn reduce_examples() {
        let r = z(&[0, 0, 1]).reduce_distinct();
        assert_eq!(r.tuple().scalars().unwrap(), vec![0, 1]);
        assert!(r.distinct_entries());
        assert_eq!(
            z(&[0, 1, 2]).reduce_distinct().tuple().scalars().unwrap(),
            vec![0, 1, 2]
        );
        assert_eq!(z(&[4, 4, 4]).reduce_distinct().tuple().scalars().unwrap(), vec![4]);
        assert_eq!(z(&[0, 0, 1]).support(), r.support());
    }

    #[test]
    fn canonical_form_examples() {
        let t = GradingTuple::integers(&[3, 1, 2]).unwrap();
        assert_eq!(canonical_form(&t).scalars().unwrap(), vec![0, 1, 2]);
        let a = GradingTuple::integers(&[7, 12, 17]).unwrap();
        let b = GradingTuple::integers(&[0, 5, 10]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        let z5 = GradingTuple::cyclic(5, &[0, 1]).unwrap();
        assert!(is_isomorphic(&a, &z5).is_err());
    }

    #[test]
    fn mirrored_tuples_are_not_isomorphic() {
        // (0,2,3) is the mirror image of (0,1,3); no translation and
        // permutation relates them, so only a weak isomorphism does.
        let a = GradingTuple::integers(&[0, 1, 3]).unwrap();
        let b = GradingTuple::integers(&[0, 2, 3]).unwrap();
        assert!(!is_isomorphic(&a, &b).unwrap());
        let found = brute_force_isomorphic(&[0, 1, 3], &[0, 2, 3]);
        assert!(!found);
    }

    fn brute_force_isomorphic(a: &[i64], b: &[i64]) -> bool {
        // h_i = g_pi(i) + c means sorted(b) = sorted(a) + c, with c = b_j - a_0.
        let mut sa = a.to_vec();
        sa.sort();
        let mut sb = b.to_vec();
        sb.sort();
        (-30..=30).any(|c| sa.iter().map(|x| x + c).eq(sb.iter().copied()))
    }

    #[test]
    fn canonical_form_exhaustive_small() {
        let mut tuples = Vec::new();
        for n in 1..=4usize {
            let mut idx = vec![0i64; n];
            loop {
                tuples.push(idx.clone());
                let mut k = 0;
                while k < n {
                    idx[k] += 1;
                    if idx[k] <= 3 {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        for a in &tuples {
            let ta = GradingTuple::integers(a).unwrap();
            let ca = canonical_form(&ta);
            assert_eq!(canonical_form(&ca), ca, "idempotent on {a:?}");
            let mut rev = a.clone();
            rev.reverse();
            let shifted: Vec<i64> = rev.iter().map(|x| x - 5).collect();
            assert_eq!(canonical_form(&GradingTuple::integers(&shifted).unwrap()), ca);
            for b in tuples.iter().filter(|b| b.len() == a.len()) {
                let tb = GradingTuple::integers(b).unwrap();
                assert_eq!(
                    is_isomorphic(&ta, &tb).unwrap(),
                    brute_force_isomorphic(a, b),
                    "{a:?} vs {b:?}"
                );
            }
        }
    }

    #[test]
    fn canonical_form_in_cyclic_groups() {
        let a = GradingTuple::cyclic(7, &[1, 2, 4]).unwrap();
        let b = GradingTuple::cyclic(7, &[5, 6, 1]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        let c = canonical_form(&a);
        assert_eq!(c.entries()[0], c.descriptor().zero());
    }

    #[test]
    fn difference_profile_examples() {
        let p = z(&[0, 1, 3, 4]).difference_profile().unwrap();
        let steps: Vec<i64> = p.steps.iter().map(|e| e.coords()[0]).collect();
        assert_eq!(steps, vec![1, 2, 1]);
        assert!(p.palindromic);
        assert!(!z(&[0, 1, 2, 4]).difference_profile().unwrap().palindromic);
        assert!(z(&[2, 0, 1]).difference_profile().unwrap().palindromic);
        assert!(matches!(zm(5, &[0, 1]).difference_profile(), Err(Error::Torsion(_))));
        assert_eq!(z(&[0, 0, 1]).difference_profile(), Err(Error::RepeatedEntries));
    }

    #[test]
    fn structural_invariants() {
        let gradings = [
            z(&[0, 1, 2]),
            z(&[0, 2, 3, 5]),
            z(&[0, 0, 1, 4]),
            zm(5, &[0, 1, 2, 3]),
            zm(6, &[0, 3, 3, 1]),
            GradingTuple::parse("Z x Z_3", "(0,0),(1,2),(1,0)").unwrap().into(),
        ];
        for g in &gradings {
            let desc = g.descriptor();
            let n = g.size();
            assert!(g.in_support(&desc.zero()));
            let total: usize = g.components().map(|(_, c)| c.dim()).sum();
            assert_eq!(total, n * n);
            for h in g.support() {
                let m = g.pattern_matrix(h).unwrap();
                let minus = desc.neg(h).unwrap();
                assert_eq!(m.transpose(), g.pattern_matrix(&minus).unwrap());
                assert_eq!(m.popcount(), g.dim(h));
                assert_eq!(g.dim(h), g.dim(&minus));
            }
            if g.distinct_entries() {
                assert_eq!(g.pattern_matrix(&desc.zero()).unwrap(), PatternMatrix::identity(n));
            }
            assert_eq!(g.distinct_entries(), g.dim(&desc.zero()) == n);
        }
    }
}
