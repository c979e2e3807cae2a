use super::{character_sn, partitions, wreath_character_at, wreath_irrep_labels, IrrepLabel};
use crate::group::{ClassLabel, ConjugacyClass, FiniteGroup, GroupKind};
use crate::{Error, Result};

/// Exact integer character table. Rows follow the irrep order, columns the
/// class order of [`FiniteGroup::conjugacy_classes`].
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub kind: GroupKind,
    pub order: usize,
    pub classes: Vec<ConjugacyClass>,
    pub labels: Vec<IrrepLabel>,
    pub values: Vec<Vec<i64>>,
    class_index: Vec<usize>,
}

/// Irrep labels of a group in catalog order.
pub fn irrep_labels(kind: GroupKind) -> Result<Vec<IrrepLabel>> {
    Ok(match kind {
        GroupKind::Symmetric(n) => partitions(n)?.into_iter().map(IrrepLabel::Sym).collect(),
        GroupKind::Wreath(n) => wreath_irrep_labels(n)?
            .into_iter()
            .map(IrrepLabel::Wreath)
            .collect(),
    })
}

/// Character value of `label` on the class with descriptor `class`.
pub fn character_at(label: &IrrepLabel, class: &ClassLabel) -> Result<i64> {
    match (label, class) {
        (IrrepLabel::Sym(p), ClassLabel::CycleType(c)) => character_sn(p, c),
        (IrrepLabel::Wreath(w), _) => wreath_character_at(w, class),
        _ => Err(Error::GroupMismatch(format!("{label} at class {class}"))),
    }
}

impl CharacterTable {
    pub fn new(group: &FiniteGroup) -> Result<Self> {
        let classes = group.conjugacy_classes();
        let labels = irrep_labels(group.kind())?;
        let values = labels
            .iter()
            .map(|l| classes.iter().map(|c| character_at(l, &c.label)).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        let mut class_index = vec![0; group.order()];
        for (ci, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_index[m] = ci;
            }
        }
        Ok(Self {
            kind: group.kind(),
            order: group.order(),
            classes,
            labels,
            values,
            class_index,
        })
    }

    pub fn class_index(&self, element: usize) -> usize {
        self.class_index[element]
    }

    pub fn position(&self, label: &IrrepLabel) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| {
            Error::InvalidElement(format!("{label} is not an irrep of {}", self.kind))
        })
    }

    pub fn row(&self, label: &IrrepLabel) -> Result<&[i64]> {
        Ok(&self.values[self.position(label)?])
    }

    /// Character value of irrep `i` at element index `g`.
    pub fn value(&self, i: usize, g: usize) -> i64 {
        self.values[i][self.class_index[g]]
    }

    pub fn dimension(&self, i: usize) -> i64 {
        self.values[i][self.class_index(0)]
    }

    /// `Σ_C |C| χ(C) ψ(C)` for integer class functions; characters here are
    /// real, so no conjugation is needed.
    pub fn weighted_pairing(&self, chi: &[i64], psi: &[i64]) -> i128 {
        self.classes
            .iter()
            .zip(chi.iter().zip(psi))
            .map(|(c, (&a, &b))| c.size() as i128 * a as i128 * b as i128)
            .sum()
    }

    /// `⟨χ, ψ⟩ = (1/|G|) Σ_C |C| χ(C) ψ(C)`, required to be an integer.
    pub fn inner_product(&self, chi: &[i64], psi: &[i64]) -> Result<i64> {
        let total = self.weighted_pairing(chi, psi);
        let order = self.order as i128;
        if total % order != 0 {
            return Err(Error::NonIntegerMultiplicity(format!(
                "pairing {total} is not divisible by |G| = {order}"
            )));
        }
        Ok((total / order) as i64)
    }

    /// Checks row orthogonality exactly: `Σ_C |C| χ_σ(C) χ_τ(C) = |G| δ_στ`.
    pub fn check_orthogonality(&self) -> Result<()> {
        if self.labels.len() != self.classes.len() {
            return Err(Error::Verification(format!(
                "{} irreps for {} classes",
                self.labels.len(),
                self.classes.len()
            )));
        }
        for (i, a) in self.values.iter().enumerate() {
            for (j, b) in self.values.iter().enumerate() {
                let expected = if i == j { self.order as i128 } else { 0 };
                let got = self.weighted_pairing(a, b);
                if got != expected {
                    return Err(Error::Verification(format!(
                        "⟨{}, {}⟩ pairing is {got}, expected {expected}",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonality_for_supported_groups() {
        for kind in [
            GroupKind::Symmetric(1),
            GroupKind::Symmetric(3),
            GroupKind::Symmetric(5),
            GroupKind::Wreath(1),
            GroupKind::Wreath(2),
            GroupKind::Wreath(3),
        ] {
            let g = FiniteGroup::new(kind).unwrap();
            let table = CharacterTable::new(&g).unwrap();
            table.check_orthogonality().unwrap();
            let dims: i64 = (0..table.labels.len())
                .map(|i| table.dimension(i).pow(2))
                .sum();
            assert_eq!(dims as usize, g.order(), "{kind}");
        }
    }

    #[test]
    fn s3_tensor_square_multiplicities() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = CharacterTable::new(&g).unwrap();
        let rho = t.row(&"[2,1]".parse().unwrap()).unwrap().to_vec();
        let square: Vec<i64> = rho.iter().map(|x| x * x).collect();
        let mults: Vec<i64> = ["[3]", "[1,1,1]", "[2,1]"]
            .iter()
            .map(|s| {
                t.inner_product(&square, t.row(&s.parse().unwrap()).unwrap())
                    .unwrap()
            })
            .collect();
        assert_eq!(mults, vec![1, 1, 1]);
    }

    #[test]
    fn non_character_rejected() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = CharacterTable::new(&g).unwrap();
        let bogus = vec![1, 0, 0];
        assert!(matches!(
            t.inner_product(&bogus, &t.values[0]),
            Err(Error::NonIntegerMultiplicity(_))
        ));
    }
}
