use serde::Serialize;

use crate::linalg::{self, CMatrix, CVector, C64};
use crate::rng::CounterRng;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Standard,
    Product { factors: Vec<Provenance> },
    Haar { seed: u64, path: Vec<u64> },
    Explicit,
}

/// An orthonormal basis, stored as the columns of a unitary matrix.
#[derive(Clone, Debug)]
pub struct MeasurementBasis {
    vectors: CMatrix,
    provenance: Provenance,
}

impl MeasurementBasis {
    pub fn standard(d: usize) -> Self {
        Self {
            vectors: linalg::identity(d),
            provenance: Provenance::Standard,
        }
    }

    /// Haar-distributed basis: a complex Gaussian matrix, filled column by
    /// column from the stream `(seed, path)`, orthonormalized by modified
    /// Gram–Schmidt (two passes). Each column is normalized to positive
    /// length, which is the positive-diagonal QR convention.
    pub fn haar(d: usize, seed: u64, path: &[u64]) -> Self {
        let mut rng = CounterRng::stream(seed, path);
        let mut cols: Vec<CVector> = (0..d)
            .map(|_| CVector::from_fn(d, |_, _| rng.complex_gaussian()))
            .collect();
        for _ in 0..2 {
            for j in 0..d {
                for i in 0..j {
                    let proj = linalg::inner(&cols[i], &cols[j]);
                    let qi = cols[i].clone();
                    cols[j] -= qi * proj;
                }
                let norm = linalg::norm_sqr(&cols[j]).sqrt();
                cols[j] /= C64::new(norm, 0.0);
            }
        }
        Self {
            vectors: CMatrix::from_columns(&cols),
            provenance: Provenance::Haar {
                seed,
                path: path.to_vec(),
            },
        }
    }

    /// Tensor product basis; the first factor indexes most significantly.
    pub fn product(factors: &[MeasurementBasis]) -> Self {
        Self {
            vectors: linalg::kron_all(factors.iter().map(|f| &f.vectors)),
            provenance: Provenance::Product {
                factors: factors.iter().map(|f| f.provenance.clone()).collect(),
            },
        }
    }

    pub fn explicit(vectors: Vec<CVector>) -> Result<Self> {
        let d = vectors.first().map_or(0, |v| v.len());
        if vectors.iter().any(|v| v.len() != d) || vectors.len() != d {
            return Err(Error::NotOrthonormal(format!(
                "{} vectors of mixed length for dimension {d}",
                vectors.len()
            )));
        }
        let defect = linalg::orthonormality_defect(&vectors);
        if defect > linalg::EPS {
            return Err(Error::NotOrthonormal(format!("defect {defect:e}")));
        }
        Ok(Self {
            vectors: CMatrix::from_columns(&vectors),
            provenance: Provenance::Explicit,
        })
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn len(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.ncols() == 0
    }

    pub fn vector(&self, j: usize) -> CVector {
        self.vectors.column(j).into_owned()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Conjugates every vector by `u`: `b ↦ u b`.
    pub fn transformed(&self, u: &CMatrix) -> Self {
        Self {
            vectors: u * &self.vectors,
            provenance: Provenance::Explicit,
        }
    }

    pub fn orthonormality_defect(&self) -> f64 {
        linalg::max_abs_diff(
            &(self.vectors.adjoint() * &self.vectors),
            &linalg::identity(self.len()),
        )
    }
}

/// A seeded Haar-random unit vector.
pub fn haar_vector(d: usize, seed: u64, path: &[u64]) -> CVector {
    let mut rng = CounterRng::stream(seed, path);
    let v = CVector::from_fn(d, |_, _| rng.complex_gaussian());
    let norm = linalg::norm_sqr(&v).sqrt();
    v / C64::new(norm, 0.0)
}
