use crate::group::{FiniteGroup, GroupKind};
use crate::linalg::{self, CMatrix};
use crate::rep::{Catalog, Irrep};
use crate::{Error, Result};

/// A hidden subgroup `{e, m}` with `m` an involution, or the trivial
/// subgroup `{e}` used as a control.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiddenSubgroup {
    kind: GroupKind,
    m: Option<usize>,
}

impl HiddenSubgroup {
    pub fn trivial(kind: GroupKind) -> Self {
        Self { kind, m: None }
    }

    pub fn involution(group: &FiniteGroup, m: usize) -> Result<Self> {
        if m >= group.order() {
            return Err(Error::OutOfRange(format!(
                "element index {m} in a group of order {}",
                group.order()
            )));
        }
        if m == group.identity() {
            return Err(Error::InvalidElement(
                "the hidden involution must not be the identity".into(),
            ));
        }
        if !group.is_involution(m) {
            return Err(Error::InvalidElement(format!(
                "{} is not an involution",
                group.element(m)
            )));
        }
        Ok(Self {
            kind: group.kind(),
            m: Some(m),
        })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn m(&self) -> Option<usize> {
        self.m
    }

    pub fn is_trivial(&self) -> bool {
        self.m.is_none()
    }

    pub fn order(&self) -> usize {
        if self.m.is_some() {
            2
        } else {
            1
        }
    }

    pub fn describe(&self, group: &FiniteGroup) -> String {
        match self.m {
            Some(m) => format!("{{e, {}}}", group.element(m)),
            None => "{e}".into(),
        }
    }

    fn check(&self, kind: GroupKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::GroupMismatch(format!(
                "subgroup of {} used with {kind}",
                self.kind
            )));
        }
        Ok(())
    }

    /// Exact rank of `Π_H` in irrep `i`: `(d + χ(m))/2`, or `d` when trivial.
    pub fn exact_rank(&self, catalog: &Catalog, i: usize) -> Result<usize> {
        self.check(catalog.kind())?;
        let d = catalog.table().dimension(i);
        Ok(match self.m {
            None => d as usize,
            Some(m) => ((d + catalog.table().value(i, m)) / 2) as usize,
        })
    }
}

/// `Π_H = (1/|H|) Σ_{h∈H} ρ(h)`.
pub fn subgroup_projector(irrep: &Irrep, h: &HiddenSubgroup) -> Result<CMatrix> {
    h.check(irrep.rep.kind())?;
    let d = irrep.dim();
    Ok(match h.m {
        None => linalg::identity(d),
        Some(m) => (linalg::identity(d) + irrep.matrix(m)) * linalg::c(0.5),
    })
}

/// Rank of `Π_H` as its rounded trace.
pub fn subgroup_rank(irrep: &Irrep, h: &HiddenSubgroup) -> Result<usize> {
    linalg::projector_rank(&subgroup_projector(irrep, h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Element;

    #[test]
    fn sign_irrep_projector_vanishes() {
        let cat = Catalog::new(GroupKind::Symmetric(3)).unwrap();
        let g = cat.group();
        let m = g
            .index_of(&Element::parse_in(g.kind(), "(01)").unwrap())
            .unwrap();
        let h = HiddenSubgroup::involution(g, m).unwrap();
        let sign = cat.irrep_by_label(&"[1,1,1]".parse().unwrap()).unwrap();
        let p = subgroup_projector(&sign, &h).unwrap();
        assert!(p.norm() < 1e-15);
        assert_eq!(subgroup_rank(&sign, &h).unwrap(), 0);
        let two = cat.irrep_by_label(&"[2,1]".parse().unwrap()).unwrap();
        let p = subgroup_projector(&two, &h).unwrap();
        assert!(
            linalg::max_abs_diff(
                &p,
                &CMatrix::from_diagonal(&nalgebra::dvector![linalg::ONE, linalg::ZERO])
            ) < 1e-15
        );
    }

    #[test]
    fn rejects_identity_and_non_involutions() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert!(HiddenSubgroup::involution(&g, 0).is_err());
        let three_cycle = g
            .index_of(&Element::parse_in(g.kind(), "(012)").unwrap())
            .unwrap();
        assert!(HiddenSubgroup::involution(&g, three_cycle).is_err());
        assert!(HiddenSubgroup::involution(&g, 99).is_err());
    }

    #[test]
    fn projector_rank_matches_character_formula() {
        for n in 2..=3 {
            let cat = Catalog::new(GroupKind::Wreath(n)).unwrap();
            let m = cat.group().involution_class().unwrap().representative;
            let h = HiddenSubgroup::involution(cat.group(), m).unwrap();
            for i in 0..cat.len() {
                let irrep = cat.irrep(i).unwrap();
                let p = subgroup_projector(&irrep, &h).unwrap();
                assert!(linalg::is_projector(&p, 1e-9));
                assert_eq!(
                    subgroup_rank(&irrep, &h).unwrap(),
                    h.exact_rank(&cat, i).unwrap()
                );
            }
        }
    }
}
