//! Finite group arithmetic for `S_n` and `K = S_n ≀ Z₂`.
//!
//! Elements are enumerated in a fixed order: permutations lexicographically
//! by image sequence, wreath elements lexicographically by `(α, β, t)`. The
//! position of an element in that order is its index; representations and
//! class data are stored against these indices.

mod classes;
mod perm;
mod wreath;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use classes::{ClassLabel, ConjugacyClass};
pub use perm::Permutation;
pub use wreath::WreathElement;

use crate::{Error, Result};

/// Default ceiling on the number of elements a group may enumerate.
pub const DEFAULT_ENUMERATION_CAP: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Symmetric(usize),
    Wreath(usize),
}

impl GroupKind {
    pub fn degree(&self) -> usize {
        match *self {
            GroupKind::Symmetric(n) | GroupKind::Wreath(n) => n,
        }
    }

    pub fn order(&self) -> Option<usize> {
        let fact = factorial(self.degree())?;
        match self {
            GroupKind::Symmetric(_) => Some(fact),
            GroupKind::Wreath(_) => fact.checked_mul(fact)?.checked_mul(2),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Symmetric(n) => write!(f, "sym:{n}"),
            GroupKind::Wreath(n) => write!(f, "wreath:{n}"),
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, n) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group spec {s:?} is not kind:n")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in {s:?}")))?;
        match kind.trim() {
            "sym" | "symmetric" => Ok(GroupKind::Symmetric(n)),
            "wreath" => Ok(GroupKind::Wreath(n)),
            other => Err(Error::Parse(format!("unknown group kind {other:?}"))),
        }
    }
}

pub(crate) fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Element {
    Perm(Permutation),
    Wreath(WreathElement),
}

impl Element {
    pub fn kind(&self) -> GroupKind {
        match self {
            Element::Perm(p) => GroupKind::Symmetric(p.degree()),
            Element::Wreath(w) => GroupKind::Wreath(w.degree()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::Perm(p) => p.is_identity(),
            Element::Wreath(w) => w.is_identity(),
        }
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::Perm(p) => Element::Perm(p.inverse()),
            Element::Wreath(w) => Element::Wreath(w.inverse()),
        }
    }

    pub fn as_wreath(&self) -> Option<&WreathElement> {
        match self {
            Element::Wreath(w) => Some(w),
            Element::Perm(_) => None,
        }
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            Element::Perm(p) => Some(p),
            Element::Wreath(_) => None,
        }
    }

    /// Parses the canonical text form: `[..]` for permutations, `([..],[..],t)`
    /// for wreath elements. Permutations may also be given in cycle notation
    /// such as `(01)(23)`; the empty string is the identity.
    pub fn parse_in(kind: GroupKind, text: &str) -> Result<Element> {
        let e = match kind {
            GroupKind::Symmetric(n) if !text.trim_start().starts_with('[') => {
                Element::Perm(Permutation::from_cycles(text, n)?)
            }
            GroupKind::Symmetric(_) => Element::Perm(text.parse()?),
            GroupKind::Wreath(_) => Element::Wreath(text.parse()?),
        };
        if e.kind() != kind {
            return Err(Error::GroupMismatch(format!("{text} is not in {kind}")));
        }
        Ok(e)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => p.fmt(f),
            Element::Wreath(w) => w.fmt(f),
        }
    }
}

/// `g · h` under the composition convention "apply `h` first, then `g`".
pub fn multiply(g: &Element, h: &Element) -> Result<Element> {
    match (g, h) {
        (Element::Perm(a), Element::Perm(b)) => a.compose(b).map(Element::Perm),
        (Element::Wreath(a), Element::Wreath(b)) => a.compose(b).map(Element::Wreath),
        _ => Err(Error::GroupMismatch(format!("{g} and {h}"))),
    }
}

/// `x⁻¹ · g · x`.
pub fn conjugate(g: &Element, x: &Element) -> Result<Element> {
    multiply(&x.inverse(), &multiply(g, x)?)
}

/// An enumerated finite group with index-based arithmetic.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    kind: GroupKind,
    elements: Vec<Element>,
    generators: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(kind: GroupKind) -> Result<Self> {
        Self::with_cap(kind, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(kind: GroupKind, cap: usize) -> Result<Self> {
        let n = kind.degree();
        let order = kind.order().ok_or(Error::CapExceeded {
            size: usize::MAX,
            cap,
        })?;
        if order > cap {
            return Err(Error::CapExceeded { size: order, cap });
        }
        let fact = factorial(n).expect("bounded by order");
        let elements: Vec<Element> = match kind {
            GroupKind::Symmetric(_) => (0..fact)
                .map(|r| Element::Perm(Permutation::from_lex_rank(n, r)))
                .collect(),
            GroupKind::Wreath(_) => {
                let perms: Vec<Permutation> = (0..fact)
                    .map(|r| Permutation::from_lex_rank(n, r))
                    .collect();
                let mut out = Vec::with_capacity(order);
                for a in &perms {
                    for b in &perms {
                        for flip in [false, true] {
                            out.push(Element::Wreath(WreathElement {
                                alpha: a.clone(),
                                beta: b.clone(),
                                flip,
                            }));
                        }
                    }
                }
                out
            }
        };
        let mut group = Self {
            kind,
            elements,
            generators: Vec::new(),
            inverses: Vec::new(),
        };
        group.inverses = (0..group.order())
            .map(|i| group.index_of(&group.elements[i].inverse()))
            .collect::<Result<_>>()?;
        group.generators = group
            .generator_elements()
            .iter()
            .map(|g| group.index_of(g))
            .collect::<Result<_>>()?;
        Ok(group)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        Self::new(GroupKind::Symmetric(n))
    }

    pub fn wreath(n: usize) -> Result<Self> {
        Self::new(GroupKind::Wreath(n))
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.kind.degree()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Element {
        &self.elements[idx]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn identity_element(&self) -> &Element {
        &self.elements[0]
    }

    /// Generating set: adjacent transpositions for `S_n`; `((s_i, e), 0)` and
    /// the block swap for `K`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    fn generator_elements(&self) -> Vec<Element> {
        let n = self.degree();
        let adjacent: Vec<Permutation> = (0..n.saturating_sub(1))
            .map(|i| Permutation::transposition(n, i, i + 1).expect("valid transposition"))
            .collect();
        match self.kind {
            GroupKind::Symmetric(_) => adjacent.into_iter().map(Element::Perm).collect(),
            GroupKind::Wreath(_) => adjacent
                .into_iter()
                .map(|p| {
                    Element::Wreath(WreathElement {
                        alpha: p,
                        beta: Permutation::identity(n),
                        flip: false,
                    })
                })
                .chain(std::iter::once(Element::Wreath(WreathElement::swap(n))))
                .collect(),
        }
    }

    pub fn contains(&self, g: &Element) -> bool {
        g.kind() == self.kind
    }

    pub fn index_of(&self, g: &Element) -> Result<usize> {
        if !self.contains(g) {
            return Err(Error::GroupMismatch(format!("{g} is not in {}", self.kind)));
        }
        Ok(match g {
            Element::Perm(p) => p.lex_rank(),
            Element::Wreath(w) => {
                let fact = self.degree_factorial();
                (w.alpha.lex_rank() * fact + w.beta.lex_rank()) * 2 + usize::from(w.flip)
            }
        })
    }

    fn degree_factorial(&self) -> usize {
        match self.kind {
            GroupKind::Symmetric(_) => self.order(),
            GroupKind::Wreath(_) => factorial(self.degree()).expect("bounded by order"),
        }
    }

    /// For wreath groups: the lexicographic ranks of `α`, `β` and the flip bit
    /// of the element at `idx`.
    pub fn wreath_parts(&self, idx: usize) -> Option<(usize, usize, bool)> {
        match self.kind {
            GroupKind::Wreath(_) => {
                let fact = self.degree_factorial();
                let flip = idx % 2 == 1;
                let pair = idx / 2;
                Some((pair / fact, pair % fact, flip))
            }
            GroupKind::Symmetric(_) => None,
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let prod = match (&self.elements[a], &self.elements[b]) {
            (Element::Perm(x), Element::Perm(y)) => Element::Perm(x.compose_unchecked(y)),
            (Element::Wreath(x), Element::Wreath(y)) => Element::Wreath(x.compose_unchecked(y)),
            _ => unreachable!("elements of one group share a kind"),
        };
        self.index_of(&prod).expect("closed under products")
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x⁻¹ g x` on indices.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.inv(x), self.mul(g, x))
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        if !self.contains(g) || !self.contains(h) {
            return Err(Error::GroupMismatch(format!(
                "{g}, {h} not both in {}",
                self.kind
            )));
        }
        multiply(g, h)
    }

    pub fn conjugate(&self, g: &Element, x: &Element) -> Result<Element> {
        if !self.contains(g) || !self.contains(x) {
            return Err(Error::GroupMismatch(format!(
                "{g}, {x} not both in {}",
                self.kind
            )));
        }
        conjugate(g, x)
    }

    pub fn is_involution(&self, idx: usize) -> bool {
        idx != self.identity() && self.mul(idx, idx) == self.identity()
    }

    /// Complete partition into conjugacy classes, ordered by smallest member
    /// index.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        classes::conjugacy_classes(self)
    }

    /// The class of the block swap `s = ((e,e),1)`, i.e. all `((α, α⁻¹), 1)`.
    pub fn involution_class(&self) -> Result<ConjugacyClass> {
        match self.kind {
            GroupKind::Wreath(n) => {
                let s = self.index_of(&Element::Wreath(WreathElement::swap(n)))?;
                Ok(classes::class_of(self, s))
            }
            GroupKind::Symmetric(_) => Err(Error::Unsupported(
                "involution_class is defined for wreath groups; use class_of for S_n".into(),
            )),
        }
    }

    pub fn class_of(&self, idx: usize) -> ConjugacyClass {
        classes::class_of(self, idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Element {
        Element::Perm(Permutation::from_images(v.to_vec()).unwrap())
    }

    #[test]
    fn orders() {
        assert_eq!(FiniteGroup::symmetric(0).unwrap().order(), 1);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::wreath(2).unwrap().order(), 8);
        assert_eq!(FiniteGroup::wreath(3).unwrap().order(), 72);
        assert_eq!(FiniteGroup::wreath(4).unwrap().order(), 1152);
    }

    #[test]
    fn cap_is_enforced() {
        let err = FiniteGroup::with_cap(GroupKind::Wreath(4), 1000).unwrap_err();
        assert_eq!(
            err,
            Error::CapExceeded {
                size: 1152,
                cap: 1000
            }
        );
        assert!(FiniteGroup::symmetric(9).is_err());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let g = FiniteGroup::wreath(2).unwrap();
        let mut sorted = g.elements().to_vec();
        sorted.sort();
        assert_eq!(sorted, g.elements());
        for (i, e) in g.elements().iter().enumerate() {
            assert_eq!(g.index_of(e).unwrap(), i);
        }
    }

    #[test]
    fn identity_is_a_left_unit_in_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        for x in g.elements() {
            assert_eq!(&g.multiply(g.identity_element(), x).unwrap(), x);
        }
    }

    #[test]
    fn conjugating_transposition() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t01 = perm(&[1, 0, 2]);
        let t12 = perm(&[0, 2, 1]);
        let t02 = perm(&[2, 1, 0]);
        assert_eq!(g.conjugate(&t01, &t12).unwrap(), t02);
        assert_eq!(g.conjugate(&t01, g.identity_element()).unwrap(), t01);
    }

    #[test]
    fn conjugating_swap_in_wreath_2() {
        let tau = Permutation::from_images(vec![1, 0]).unwrap();
        let e = Permutation::identity(2);
        let s = Element::Wreath(WreathElement::swap(2));
        let x = Element::Wreath(WreathElement::new(tau.clone(), e, false).unwrap());
        let expected = Element::Wreath(WreathElement::new(tau.clone(), tau, true).unwrap());
        assert_eq!(conjugate(&s, &x).unwrap(), expected);
    }

    #[test]
    fn mixed_kinds_are_rejected() {
        let a = perm(&[1, 0]);
        let b = Element::Wreath(WreathElement::swap(2));
        assert!(matches!(multiply(&a, &b), Err(Error::GroupMismatch(_))));
        let g = FiniteGroup::symmetric(3).unwrap();
        assert!(g.multiply(&a, &a).is_err());
    }

    #[test]
    fn group_axioms_exhaustive_small() {
        for kind in [
            GroupKind::Symmetric(3),
            GroupKind::Symmetric(4),
            GroupKind::Wreath(2),
        ] {
            let g = FiniteGroup::new(kind).unwrap();
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.mul(g.identity(), a), a);
                assert_eq!(g.mul(a, g.identity()), a);
                assert_eq!(g.mul(a, g.inv(a)), g.identity());
                for b in 0..n {
                    let ab = g.mul(a, b);
                    for c in 0..n {
                        assert_eq!(g.mul(ab, c), g.mul(a, g.mul(b, c)), "{kind}");
                    }
                }
            }
        }
    }

    #[test]
    fn group_spec_parsing() {
        assert_eq!(
            "sym:3".parse::<GroupKind>().unwrap(),
            GroupKind::Symmetric(3)
        );
        assert_eq!(
            "wreath:2".parse::<GroupKind>().unwrap(),
            GroupKind::Wreath(2)
        );
        assert!("cyclic:3".parse::<GroupKind>().is_err());
        assert!("sym".parse::<GroupKind>().is_err());
    }

    #[test]
    fn wreath_parts_decode_index() {
        let g = FiniteGroup::wreath(3).unwrap();
        for (i, e) in g.elements().iter().enumerate() {
            let w = e.as_wreath().unwrap();
            let (a, b, t) = g.wreath_parts(i).unwrap();
            assert_eq!(a, w.alpha.lex_rank());
            assert_eq!(b, w.beta.lex_rank());
            assert_eq!(t, w.flip);
        }
    }
}
