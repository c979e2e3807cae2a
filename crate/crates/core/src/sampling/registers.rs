use std::sync::Arc;

use crate::linalg::{self, CVector};
use crate::rep::{Catalog, Irrep, IrrepLabel};
use crate::{Error, Result};

/// Default ceiling on the total register dimension `Π d_i`.
pub const DEFAULT_TENSOR_CAP: usize = 4096;

/// A tuple of irreps `ρ₁ ⊗ … ⊗ ρ_k`, one per register.
#[derive(Clone, Debug)]
pub struct RegisterTuple {
    indices: Vec<usize>,
    irreps: Vec<Arc<Irrep>>,
    dims: Vec<usize>,
}

impl RegisterTuple {
    pub fn new(catalog: &Catalog, indices: &[usize], cap: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::OutOfRange("a register tuple needs k ≥ 1".into()));
        }
        let dims: Vec<usize> = indices
            .iter()
            .map(|&i| {
                if i >= catalog.len() {
                    Err(Error::OutOfRange(format!(
                        "irrep index {i} of {}",
                        catalog.len()
                    )))
                } else {
                    Ok(catalog.dimension(i))
                }
            })
            .collect::<Result<_>>()?;
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .unwrap_or(usize::MAX);
        if total > cap {
            return Err(Error::TensorCapExceeded { dim: total, cap });
        }
        let irreps = indices
            .iter()
            .map(|&i| catalog.irrep(i))
            .collect::<Result<_>>()?;
        Ok(Self {
            indices: indices.to_vec(),
            irreps,
            dims,
        })
    }

    pub fn from_labels(catalog: &Catalog, labels: &[IrrepLabel], cap: usize) -> Result<Self> {
        let indices: Vec<usize> = labels
            .iter()
            .map(|l| catalog.position(l))
            .collect::<Result<_>>()?;
        Self::new(catalog, &indices, cap)
    }

    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn irreps(&self) -> &[Arc<Irrep>] {
        &self.irreps
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn labels(&self) -> Vec<String> {
        self.irreps.iter().map(|r| r.label.to_string()).collect()
    }

    /// `g^I b`: `ρ_i(g)` applied to every register `i` in the bitmask `mask`.
    pub fn act(&self, g: usize, mask: u32, b: &CVector) -> CVector {
        let mut v = b.clone();
        for (i, irrep) in self.irreps.iter().enumerate() {
            if mask & (1 << i) != 0 {
                v = linalg::apply_local(&v, &self.dims, i, irrep.matrix(g));
            }
        }
        v
    }
}

/// Every tuple of `k` irrep indices in lexicographic order.
pub fn all_index_tuples(irreps: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..irreps).map(move |i| {
                    let mut next = t.clone();
                    next.push(i);
                    next
                })
            })
            .collect();
    }
    out
}
