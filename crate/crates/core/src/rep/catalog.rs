use std::sync::{Arc, OnceLock};

use super::{
    wreath_irrep, young_orthogonal_rep, CharacterTable, Irrep, IrrepCache, IrrepLabel, MatrixRep,
};
use crate::group::{FiniteGroup, GroupKind};
use crate::linalg;
use crate::{Error, Result};

/// A group with its character table and lazily built irrep matrices.
#[derive(Debug)]
pub struct Catalog {
    group: Arc<FiniteGroup>,
    table: CharacterTable,
    irreps: Vec<OnceLock<Arc<Irrep>>>,
    cache: Option<IrrepCache>,
}

impl Catalog {
    pub fn new(kind: GroupKind) -> Result<Self> {
        Self::from_group(Arc::new(FiniteGroup::new(kind)?), None)
    }

    pub fn with_cache(kind: GroupKind, cache: Option<IrrepCache>) -> Result<Self> {
        Self::from_group(Arc::new(FiniteGroup::new(kind)?), cache)
    }

    pub fn from_group(group: Arc<FiniteGroup>, cache: Option<IrrepCache>) -> Result<Self> {
        let table = CharacterTable::new(&group)?;
        let irreps = (0..table.labels.len()).map(|_| OnceLock::new()).collect();
        Ok(Self {
            group,
            table,
            irreps,
            cache,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<FiniteGroup> {
        Arc::clone(&self.group)
    }

    pub fn kind(&self) -> GroupKind {
        self.group.kind()
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn labels(&self) -> &[IrrepLabel] {
        &self.table.labels
    }

    pub fn len(&self) -> usize {
        self.table.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.labels.is_empty()
    }

    pub fn position(&self, label: &IrrepLabel) -> Result<usize> {
        self.table.position(label)
    }

    pub fn dimension(&self, i: usize) -> usize {
        self.table.dimension(i) as usize
    }

    /// Irrep `i`, building (or loading) its matrices on first use.
    pub fn irrep(&self, i: usize) -> Result<Arc<Irrep>> {
        let cell = self
            .irreps
            .get(i)
            .ok_or_else(|| Error::OutOfRange(format!("irrep index {i} of {}", self.len())))?;
        if let Some(irrep) = cell.get() {
            return Ok(Arc::clone(irrep));
        }
        let built = Arc::new(self.build(i)?);
        Ok(Arc::clone(cell.get_or_init(|| built)))
    }

    pub fn irrep_by_label(&self, label: &IrrepLabel) -> Result<Arc<Irrep>> {
        self.irrep(self.position(label)?)
    }

    fn build(&self, i: usize) -> Result<Irrep> {
        let label = self.table.labels[i].clone();
        let character = self.table.values[i].clone();
        if let Some(cache) = &self.cache {
            if let Some(rep) = cache.load(self.kind(), &label) {
                if self.traces_match(i, &rep) {
                    return Ok(Irrep {
                        label,
                        rep,
                        character,
                    });
                }
            }
        }
        let rep = match &label {
            IrrepLabel::Sym(p) => young_orthogonal_rep(&self.group, p)?,
            IrrepLabel::Wreath(w) => wreath_irrep(&self.group, w)?,
        };
        if let Some(cache) = &self.cache {
            // a failed write only costs a rebuild next time
            let _ = cache.store(&label, &rep);
        }
        Ok(Irrep {
            label,
            rep,
            character,
        })
    }

    fn traces_match(&self, i: usize, rep: &MatrixRep) -> bool {
        rep.dim() == self.dimension(i)
            && rep.traces().iter().enumerate().all(|(g, tr)| {
                (tr.re - self.table.value(i, g) as f64).abs() < linalg::EPS
                    && tr.im.abs() < linalg::EPS
            })
    }

    pub fn all_irreps(&self) -> Result<Vec<Arc<Irrep>>> {
        (0..self.len()).map(|i| self.irrep(i)).collect()
    }

    /// Checks every irrep invariant: homomorphism, unitarity, exact
    /// irreducibility of the character row, and traces against characters.
    pub fn verify_irrep(&self, i: usize) -> Result<()> {
        let irrep = self.irrep(i)?;
        irrep.rep.check_homomorphism(&self.group, linalg::EPS)?;
        let row = &self.table.values[i];
        if self.table.inner_product(row, row)? != 1 {
            return Err(Error::Verification(format!("{} is reducible", irrep.label)));
        }
        if irrep.dim() as u64 != irrep.label.dimension() {
            return Err(Error::Verification(format!(
                "{} has matrix dimension {}",
                irrep.label,
                irrep.dim()
            )));
        }
        if !self.traces_match(i, &irrep.rep) {
            return Err(Error::Verification(format!(
                "traces of {} disagree with its character",
                irrep.label
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lazy_build_and_verify() {
        let cat = Catalog::new(GroupKind::Wreath(2)).unwrap();
        for i in 0..cat.len() {
            cat.verify_irrep(i).unwrap();
        }
        let a = cat.irrep(0).unwrap();
        let b = cat.irrep(0).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(cat.irrep(cat.len()).is_err());
    }

    #[test]
    fn corrupt_cache_entry_is_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = IrrepCache::new(dir.path());
        let kind = GroupKind::Symmetric(3);
        let label: IrrepLabel = "[2,1]".parse().unwrap();
        let g = FiniteGroup::new(kind).unwrap();
        let good = young_orthogonal_rep(&g, &"[2,1]".parse().unwrap()).unwrap();
        let bad = MatrixRep::from_matrices(
            kind,
            2,
            good.matrices()
                .iter()
                .map(|m| m * linalg::c(-1.0))
                .collect(),
        );
        cache.store(&label, &bad).unwrap();
        let cat = Catalog::with_cache(kind, Some(cache.clone())).unwrap();
        let i = cat.position(&label).unwrap();
        cat.verify_irrep(i).unwrap();
        // rebuilt table was written back
        let reloaded = cache.load(kind, &label).unwrap();
        assert!(linalg::max_abs_diff(reloaded.matrix(1), good.matrix(1)) < 1e-15);
    }
}
