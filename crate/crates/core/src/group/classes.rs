use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Element, FiniteGroup, GroupKind};
use crate::rep::Partition;

/// Cycle-type descriptor of a conjugacy class.
///
/// For `K = S_n ≀ Z₂` the classes with `t = 0` are labeled by the unordered
/// pair of cycle types of `α` and `β`; those with `t = 1` by the cycle type
/// of `αβ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    CycleType(Partition),
    Inner(Partition, Partition),
    Swap(Partition),
}

impl ClassLabel {
    pub fn of(g: &Element) -> ClassLabel {
        match g {
            Element::Perm(p) => ClassLabel::CycleType(p.cycle_type()),
            Element::Wreath(w) if w.flip => {
                ClassLabel::Swap(w.alpha.compose_unchecked(&w.beta).cycle_type())
            }
            Element::Wreath(w) => {
                let (a, b) = (w.alpha.cycle_type(), w.beta.cycle_type());
                if a >= b {
                    ClassLabel::Inner(a, b)
                } else {
                    ClassLabel::Inner(b, a)
                }
            }
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::CycleType(p) => write!(f, "{p}"),
            ClassLabel::Inner(a, b) => write!(f, "{{{a},{b}}}·0"),
            ClassLabel::Swap(c) => write!(f, "{c}·1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub kind: GroupKind,
    /// Smallest member index.
    pub representative: usize,
    /// Member indices in increasing order.
    pub members: Vec<usize>,
    pub label: ClassLabel,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }
}

/// Orbit of `x` under conjugation: closure of `{x}` under conjugation by the
/// generators, which reaches the full orbit because every group element is
/// a word in the generators.
fn orbit(group: &FiniteGroup, x: usize) -> Vec<usize> {
    let mut seen = vec![false; group.order()];
    let mut queue = VecDeque::from([x]);
    seen[x] = true;
    let mut members = Vec::new();
    while let Some(y) = queue.pop_front() {
        members.push(y);
        for &s in group.generators() {
            let z = group.conj(y, s);
            if !seen[z] {
                seen[z] = true;
                queue.push_back(z);
            }
        }
    }
    members.sort_unstable();
    members
}

pub(super) fn class_of(group: &FiniteGroup, x: usize) -> ConjugacyClass {
    let members = orbit(group, x);
    ConjugacyClass {
        kind: group.kind(),
        representative: members[0],
        label: ClassLabel::of(group.element(members[0])),
        members,
    }
}

pub(super) fn conjugacy_classes(group: &FiniteGroup) -> Vec<ConjugacyClass> {
    let mut assigned = vec![false; group.order()];
    let mut out = Vec::new();
    for x in 0..group.order() {
        if assigned[x] {
            continue;
        }
        let class = class_of(group, x);
        for &m in &class.members {
            assigned[m] = true;
        }
        out.push(class);
    }
    out
}
