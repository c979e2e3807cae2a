use crate::group::{FiniteGroup, GroupKind};
use crate::linalg::{self, CMatrix, C64};
use crate::{Error, Result};

/// A matrix representation: one `d × d` complex matrix per group element,
/// stored by element index.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    kind: GroupKind,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl MatrixRep {
    /// Wraps precomputed matrices without checking the homomorphism property.
    pub fn from_matrices(kind: GroupKind, dim: usize, matrices: Vec<CMatrix>) -> Self {
        debug_assert!(matrices
            .iter()
            .all(|m| m.nrows() == dim && m.ncols() == dim));
        Self {
            kind,
            dim,
            matrices,
        }
    }

    /// Wraps matrices after verifying shape, unitarity and the homomorphism
    /// property against `group`.
    pub fn validated(group: &FiniteGroup, dim: usize, matrices: Vec<CMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::NotARepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        if matrices
            .iter()
            .any(|m| m.nrows() != dim || m.ncols() != dim)
        {
            return Err(Error::NotARepresentation(format!(
                "matrices are not all {dim}×{dim}"
            )));
        }
        let rep = Self::from_matrices(group.kind(), dim, matrices);
        rep.check_homomorphism(group, linalg::EPS)?;
        Ok(rep)
    }

    /// Trivial representation of dimension `dim`.
    pub fn trivial(group: &FiniteGroup, dim: usize) -> Self {
        Self::from_matrices(
            group.kind(),
            dim,
            vec![linalg::identity(dim); group.order()],
        )
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    fn same_group(&self, other: &MatrixRep) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::GroupMismatch(format!(
                "representations of {} and {}",
                self.kind, other.kind
            )));
        }
        Ok(())
    }

    pub fn tensor(&self, other: &MatrixRep) -> Result<MatrixRep> {
        self.same_group(other)?;
        Ok(Self::from_matrices(
            self.kind,
            self.dim * other.dim,
            self.matrices
                .iter()
                .zip(&other.matrices)
                .map(|(a, b)| a.kronecker(b))
                .collect(),
        ))
    }

    /// Contragredient `ρ*`, realized by complex conjugation of unitary
    /// matrices.
    pub fn dual(&self) -> MatrixRep {
        Self::from_matrices(
            self.kind,
            self.dim,
            self.matrices.iter().map(|m| m.map(|z| z.conj())).collect(),
        )
    }

    pub fn direct_sum(&self, other: &MatrixRep) -> Result<MatrixRep> {
        self.same_group(other)?;
        let d = self.dim + other.dim;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut m = CMatrix::zeros(d, d);
                m.view_mut((0, 0), (self.dim, self.dim)).copy_from(a);
                m.view_mut((self.dim, self.dim), (other.dim, other.dim))
                    .copy_from(b);
                m
            })
            .collect();
        Ok(Self::from_matrices(self.kind, d, matrices))
    }

    /// `U ρ(g) U†` for a unitary `U`.
    pub fn change_basis(&self, u: &CMatrix) -> MatrixRep {
        let ud = u.adjoint();
        Self::from_matrices(
            self.kind,
            self.dim,
            self.matrices.iter().map(|m| u * m * &ud).collect(),
        )
    }

    /// Checks `ρ(g·s) = ρ(g) ρ(s)` for every element `g` and generator `s`,
    /// that `ρ(e) = 1`, and unitarity of every matrix. Since every element is
    /// a word in the generators this implies the full homomorphism property.
    pub fn check_homomorphism(&self, group: &FiniteGroup, tol: f64) -> Result<()> {
        if group.kind() != self.kind {
            return Err(Error::GroupMismatch(format!(
                "representation of {} checked against {}",
                self.kind,
                group.kind()
            )));
        }
        if linalg::max_abs_diff(self.matrix(group.identity()), &linalg::identity(self.dim)) > tol {
            return Err(Error::NotARepresentation("identity not mapped to 1".into()));
        }
        for g in 0..group.order() {
            if !linalg::is_unitary(self.matrix(g), tol) {
                return Err(Error::NotARepresentation(format!(
                    "matrix of {} is not unitary",
                    group.element(g)
                )));
            }
            for &s in group.generators() {
                let lhs = self.matrix(group.mul(g, s));
                let rhs = self.matrix(g) * self.matrix(s);
                if linalg::max_abs_diff(lhs, &rhs) > tol {
                    return Err(Error::NotARepresentation(format!(
                        "ρ({}·{}) ≠ ρ({})ρ({})",
                        group.element(g),
                        group.element(s),
                        group.element(g),
                        group.element(s)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Largest homomorphism defect over all pairs `(g, h)`.
    pub fn homomorphism_defect_exhaustive(&self, group: &FiniteGroup) -> f64 {
        let mut worst: f64 = 0.0;
        for g in 0..group.order() {
            for h in 0..group.order() {
                let lhs = self.matrix(group.mul(g, h));
                let rhs = self.matrix(g) * self.matrix(h);
                worst = worst.max(linalg::max_abs_diff(lhs, &rhs));
            }
        }
        worst
    }

    /// Traces of all element matrices.
    pub fn traces(&self) -> Vec<C64> {
        self.matrices.iter().map(linalg::trace).collect()
    }
}
