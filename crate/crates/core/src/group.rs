//! Finitely generated abelian groups `Z^r x Z_m1 x ... x Z_ms`.
//!
//! Elements are plain coordinate vectors, free coordinates first and torsion
//! residues after. The descriptor owns the arithmetic so that residues are
//! always reduced.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    free_rank: usize,
    moduli: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(Coords);

/// Ranks up to two stay off the heap.
type Coords = SmallVec<[i64; 2]>;

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [c] = self.0.as_slice() {
            return write!(f, "{c}");
        }
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl GroupDescriptor {
    pub fn new(free_rank: usize, moduli: Vec<i64>) -> Result<Self> {
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::ModulusTooSmall(format!("Z_{m}")));
        }
        if free_rank == 0 && moduli.is_empty() {
            return Err(Error::GroupSyntax(String::new()));
        }
        Ok(Self { free_rank, moduli })
    }

    /// The infinite cyclic group.
    pub fn integers() -> Self {
        Self {
            free_rank: 1,
            moduli: Vec::new(),
        }
    }

    pub fn cyclic(m: i64) -> Result<Self> {
        Self::new(0, vec![m])
    }

    /// Parses `factor ("x" factor)*` with factors `Z`, `Z^k` and `Z_m`.
    ///
    /// Free factors may appear anywhere in the spec; they are collected in
    /// front, since `Z^r x prod Z_m` is the only shape the elements use.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut free_rank = 0usize;
        let mut moduli = Vec::new();
        let trimmed = spec.trim();
        if trimmed.is_empty() {
            return Err(Error::GroupSyntax(spec.to_string()));
        }
        for raw in trimmed.split('x') {
            let token = raw.trim();
            if token == "Z" {
                free_rank += 1;
            } else if let Some(exp) = token.strip_prefix("Z^") {
                let k: i64 = exp.trim().parse().map_err(|_| Error::GroupSyntax(token.to_string()))?;
                if k < 1 {
                    return Err(Error::RankTooSmall(token.to_string()));
                }
                free_rank += k as usize;
            } else if let Some(m) = token.strip_prefix("Z_") {
                let m: i64 = m.trim().parse().map_err(|_| Error::GroupSyntax(token.to_string()))?;
                if m < 2 {
                    return Err(Error::ModulusTooSmall(token.to_string()));
                }
                moduli.push(m);
            } else {
                return Err(Error::GroupSyntax(if token.is_empty() {
                    spec.to_string()
                } else {
                    token.to_string()
                }));
            }
        }
        Ok(Self { free_rank, moduli })
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    /// Number of coordinates of an element.
    pub fn rank(&self) -> usize {
        self.free_rank + self.moduli.len()
    }

    pub fn torsion_free(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn has_order_2_element(&self) -> bool {
        self.moduli.iter().any(|m| m % 2 == 0)
    }

    /// Group order, `None` when the group is infinite.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.moduli.iter().map(|&m| m as u128).product())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(smallvec::smallvec![0; self.rank()])
    }

    /// Builds an element, reducing torsion coordinates.
    pub fn element(&self, mut coords: Vec<i64>) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::DescriptorMismatch {
                element: GroupElement(coords.into()).to_string(),
                group: self.to_string(),
            });
        }
        for (c, &m) in coords[self.free_rank..].iter_mut().zip(&self.moduli) {
            *c = c.rem_euclid(m);
        }
        Ok(GroupElement(coords.into()))
    }

    /// Shorthand for rank-one groups.
    pub fn scalar(&self, value: i64) -> Result<GroupElement> {
        self.element(vec![value])
    }

    pub fn check(&self, e: &GroupElement) -> Result<()> {
        let ok = e.0.len() == self.rank()
            && e.0[self.free_rank..]
                .iter()
                .zip(&self.moduli)
                .all(|(&c, &m)| (0..m).contains(&c));
        if ok {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch {
                element: e.to_string(),
                group: self.to_string(),
            })
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut out: Coords = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(&mut out);
        GroupElement(out)
    }

    pub(crate) fn neg_unchecked(&self, a: &GroupElement) -> GroupElement {
        let mut out: Coords = a.0.iter().map(|x| -x).collect();
        self.reduce(&mut out);
        GroupElement(out)
    }

    pub(crate) fn sub_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut out: Coords = a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect();
        self.reduce(&mut out);
        GroupElement(out)
    }

    fn reduce(&self, coords: &mut [i64]) {
        for (c, &m) in coords[self.free_rank..].iter_mut().zip(&self.moduli) {
            *c = c.rem_euclid(m);
        }
    }

    /// Total degree of a monomial whose variables have the given degrees.
    pub fn word_sum(&self, word: &[GroupElement]) -> Result<GroupElement> {
        let (first, rest) = word.split_first().ok_or(Error::EmptyWord)?;
        self.check(first)?;
        let mut acc = first.clone();
        for h in rest {
            acc = self.add(&acc, h)?;
        }
        Ok(acc)
    }

    /// Lexicographic order on free parts; only defined without torsion.
    pub fn lex_cmp(&self, a: &GroupElement, b: &GroupElement) -> Result<Ordering> {
        if !self.torsion_free() {
            return Err(Error::Torsion(self.to_string()));
        }
        self.check(a)?;
        self.check(b)?;
        Ok(a.0.cmp(&b.0))
    }

    pub fn lex_less(&self, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        Ok(self.lex_cmp(a, b)? == Ordering::Less)
    }

    /// Parses `int` or `(int,...,int)`; the bare form only for rank one.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let t = text.trim();
        let inner = match t.strip_prefix('(') {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| Error::ElementSyntax(text.to_string()))?,
            None => t,
        };
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ElementSyntax(text.to_string()))?;
        self.element(coords).map_err(|_| Error::DescriptorMismatch {
            element: text.trim().to_string(),
            group: self.to_string(),
        })
    }

    /// Parses a comma separated list of elements, e.g. `0,2,3` or `(0,0),(1,2)`.
    pub fn parse_elements(&self, text: &str) -> Result<Vec<GroupElement>> {
        split_top_level(text)
            .ok_or_else(|| Error::ElementSyntax(text.to_string()))?
            .into_iter()
            .map(|item| self.parse_element(item))
            .collect()
    }
}

/// Splits on commas that are not inside parentheses.
fn split_top_level(text: &str) -> Option<Vec<&str>> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                items.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    items.push(&text[start..]);
    if items.iter().any(|s| s.trim().is_empty()) {
        return None;
    }
    Some(items)
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        match self.free_rank {
            0 => {}
            1 => factors.push("Z".to_string()),
            r => factors.push(format!("Z^{r}")),
        }
        factors.extend(self.moduli.iter().map(|m| format!("Z_{m}")));
        f.write_str(&factors.join(" x "))
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let z = GroupDescriptor::parse("Z").unwrap();
        assert_eq!((z.free_rank(), z.moduli()), (1, &[][..]));
        let z5 = GroupDescriptor::parse("Z_5").unwrap();
        assert_eq!((z5.free_rank(), z5.moduli()), (0, &[5][..]));
        let g = GroupDescriptor::parse("Z^2 x Z_3").unwrap();
        assert_eq!((g.free_rank(), g.moduli()), (2, &[3][..]));
        assert_eq!(g.to_string(), "Z^2 x Z_3");
    }

    #[test]
    fn parse_errors_echo_token() {
        assert_eq!(GroupDescriptor::parse("Z_1"), Err(Error::ModulusTooSmall("Z_1".into())));
        assert_eq!(
            GroupDescriptor::parse("Z^0 x Z_3"),
            Err(Error::RankTooSmall("Z^0".into()))
        );
        assert_eq!(GroupDescriptor::parse("Z x Q"), Err(Error::GroupSyntax("Q".into())));
        assert!(GroupDescriptor::parse("").is_err());
        assert!(GroupDescriptor::parse("Z x").is_err());
    }

    #[test]
    fn order_two_and_torsion_flags() {
        let g = GroupDescriptor::parse("Z x Z_4").unwrap();
        assert!(g.has_order_2_element());
        assert!(!g.torsion_free());
        let h = GroupDescriptor::parse("Z_3 x Z_5").unwrap();
        assert!(!h.has_order_2_element());
        assert_eq!(h.order(), Some(15));
        assert!(GroupDescriptor::integers().torsion_free());
        assert_eq!(GroupDescriptor::integers().order(), None);
    }

    #[test]
    fn arithmetic_examples() {
        let z5 = GroupDescriptor::cyclic(5).unwrap();
        let two = z5.scalar(2).unwrap();
        assert_eq!(z5.add(&two, &two).unwrap(), z5.scalar(4).unwrap());

        let z = GroupDescriptor::integers();
        assert_eq!(z.neg(&z.scalar(3).unwrap()).unwrap().coords(), &[-3]);

        let g = GroupDescriptor::parse("Z x Z_3").unwrap();
        let a = g.element(vec![1, 2]).unwrap();
        let b = g.element(vec![0, 2]).unwrap();
        assert_eq!(g.add(&a, &b).unwrap().coords(), &[1, 1]);
    }

    #[test]
    fn mismatch_is_reported() {
        let z = GroupDescriptor::integers();
        let g = GroupDescriptor::parse("Z x Z_3").unwrap();
        let a = g.element(vec![1, 2]).unwrap();
        assert!(matches!(z.add(&a, &z.zero()), Err(Error::DescriptorMismatch { .. })));
    }

    #[test]
    fn word_sum_examples() {
        let z = GroupDescriptor::integers();
        let w = z.parse_elements("1,1,1").unwrap();
        assert_eq!(z.word_sum(&w).unwrap(), z.scalar(3).unwrap());
        let w = z.parse_elements("2,-1,-1").unwrap();
        assert!(z.word_sum(&w).unwrap().is_zero());
        let z5 = GroupDescriptor::cyclic(5).unwrap();
        let w = z5.parse_elements("2,2").unwrap();
        assert_eq!(z5.word_sum(&w).unwrap(), z5.scalar(4).unwrap());
        assert_eq!(z.word_sum(&[]), Err(Error::EmptyWord));
    }

    #[test]
    fn lex_less_examples() {
        let z = GroupDescriptor::integers();
        let s = |v| z.scalar(v).unwrap();
        assert!(z.lex_less(&s(0), &s(3)).unwrap());
        assert!(!z.lex_less(&s(2), &s(2)).unwrap());
        let z2 = GroupDescriptor::parse("Z^2").unwrap();
        let a = z2.element(vec![1, 5]).unwrap();
        let b = z2.element(vec![2, 0]).unwrap();
        assert!(z2.lex_less(&a, &b).unwrap());
        let z5 = GroupDescriptor::cyclic(5).unwrap();
        assert!(matches!(z5.lex_less(&z5.zero(), &z5.zero()), Err(Error::Torsion(_))));
    }

    #[test]
    fn element_syntax() {
        let z = GroupDescriptor::integers();
        assert_eq!(z.parse_element("3").unwrap(), z.parse_element("(3)").unwrap());
        let z5 = GroupDescriptor::cyclic(5).unwrap();
        assert_eq!(z5.parse_element("-1").unwrap().coords(), &[4]);
        let g = GroupDescriptor::parse("Z x Z_3").unwrap();
        let list = g.parse_elements("(0,0),(1,2)").unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[1].to_string(), "(1,2)");
        assert!(g.parse_element("3").is_err());
        assert!(g.parse_elements("(0,0),(1,2").is_err());
        assert!(z.parse_elements("1,,2").is_err());
        assert!(z.parse_element("x").is_err());
    }

    fn group_and_triple() -> impl Strategy<Value = (GroupDescriptor, [Vec<i64>; 3])> {
        (0usize..3, proptest::collection::vec(2i64..8, 0..3))
            .prop_filter("nonempty group", |(r, m)| *r + m.len() > 0)
            .prop_flat_map(|(r, m)| {
                let g = GroupDescriptor::new(r, m).unwrap();
                let rank = g.rank();
                let v = || proptest::collection::vec(-50i64..50, rank);
                (Just(g), [v(), v(), v()])
            })
    }

    proptest! {
        #[test]
        fn add_neg_is_zero((g, [a, _, _]) in group_and_triple()) {
            let a = g.element(a).unwrap();
            prop_assert!(g.add(&a, &g.neg(&a).unwrap()).unwrap().is_zero());
        }

        #[test]
        fn add_is_associative_and_commutative((g, [a, b, c]) in group_and_triple()) {
            let (a, b, c) = (g.element(a).unwrap(), g.element(b).unwrap(), g.element(c).unwrap());
            let ab_c = g.add(&g.add(&a, &b).unwrap(), &c).unwrap();
            let a_bc = g.add(&a, &g.add(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(&ab_c, &a_bc);
            prop_assert_eq!(g.add(&a, &b).unwrap(), g.add(&b, &a).unwrap());
        }

        #[test]
        fn lex_order_is_translation_invariant(
            r in 1usize..4,
            seed in proptest::collection::vec(-30i64..30, 12),
        ) {
            let g = GroupDescriptor::new(r, vec![]).unwrap();
            let a = g.element(seed[0..r].to_vec()).unwrap();
            let b = g.element(seed[4..4 + r].to_vec()).unwrap();
            let c = g.element(seed[8..8 + r].to_vec()).unwrap();
            let shifted = g.lex_less(&g.add(&a, &c).unwrap(), &g.add(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(g.lex_less(&a, &b).unwrap(), shifted);
        }

        #[test]
        fn word_sum_splits((g, [a, b, c]) in group_and_triple(), split in 1usize..3) {
            let w = vec![g.element(a).unwrap(), g.element(b).unwrap(), g.element(c).unwrap()];
            let whole = g.word_sum(&w).unwrap();
            let parts = g.add(&g.word_sum(&w[..split]).unwrap(), &g.word_sum(&w[split..]).unwrap()).unwrap();
            prop_assert_eq!(whole, parts);
        }

        #[test]
        fn element_display_round_trips((g, [a, _, _]) in group_and_triple()) {
            let a = g.element(a).unwrap();
            prop_assert_eq!(g.parse_element(&a.to_string()).unwrap(), a);
        }
    }
}
