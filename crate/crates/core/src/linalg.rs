//! Dense complex linear algebra helpers shared by every module.
//!
//! Tensor-product vectors use register 0 as the most significant index, so
//! `kron(a, b)` and [`apply_local`] agree on layout.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Default numerical tolerance for matrix and probability comparisons.
pub const EPS: f64 = 1e-9;

/// Maximum distance of a projector trace from an integer before its rank is
/// rejected.
pub const RANK_GUARD: f64 = 1e-6;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Neumaier-compensated sum of reals.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Kahan {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut k = Kahan::new();
        for x in iter {
            k.add(x);
        }
        k
    }
}

/// Compensated sum of complex numbers, real and imaginary parts separately.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanC {
    re: Kahan,
    im: Kahan,
}

impl KahanC {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: C64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<C64> for KahanC {
    fn from_iter<I: IntoIterator<Item = C64>>(iter: I) -> Self {
        let mut k = KahanC::new();
        for z in iter {
            k.add(z);
        }
        k
    }
}

/// Ordered compensated sum.
pub fn ksum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<Kahan>().value()
}

pub fn ksum_c<I: IntoIterator<Item = C64>>(iter: I) -> C64 {
    iter.into_iter().collect::<KahanC>().value()
}

/// `⟨a, b⟩`, conjugate-linear in the first argument.
pub fn inner(a: &CVector, b: &CVector) -> C64 {
    ksum_c(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y))
}

pub fn norm_sqr(v: &CVector) -> f64 {
    ksum(v.iter().map(|z| z.norm_sqr()))
}

pub fn real_matrix(m: &DMatrix<f64>) -> CMatrix {
    m.map(c)
}

pub fn identity(d: usize) -> CMatrix {
    CMatrix::identity(d, d)
}

/// Kronecker product of a list of matrices, first factor most significant.
pub fn kron_all<'a, I: IntoIterator<Item = &'a CMatrix>>(factors: I) -> CMatrix {
    factors
        .into_iter()
        .fold(identity(1), |acc, m| acc.kronecker(m))
}

pub fn kron_vec_all<'a, I: IntoIterator<Item = &'a CVector>>(factors: I) -> CVector {
    factors
        .into_iter()
        .fold(CVector::from_element(1, ONE), |acc, v| acc.kronecker(v))
}

/// Applies `op` to register `reg` of a tensor-product vector with register
/// dimensions `dims`, leaving the other registers untouched.
pub fn apply_local(v: &CVector, dims: &[usize], reg: usize, op: &CMatrix) -> CVector {
    let d = dims[reg];
    debug_assert_eq!(op.nrows(), d);
    let inner_len: usize = dims[reg + 1..].iter().product();
    let outer_len: usize = dims[..reg].iter().product();
    let mut out = CVector::zeros(v.len());
    for outer in 0..outer_len {
        let base = outer * d * inner_len;
        for inner_idx in 0..inner_len {
            for row in 0..d {
                let mut acc = ZERO;
                for col in 0..d {
                    let a = op[(row, col)];
                    if a != ZERO {
                        acc += a * v[base + col * inner_len + inner_idx];
                    }
                }
                out[base + row * inner_len + inner_idx] = acc;
            }
        }
    }
    out
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn is_unitary(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(&(m.adjoint() * m), &identity(m.nrows())) <= tol
}

pub fn is_projector(m: &CMatrix, tol: f64) -> bool {
    max_abs_diff(&(m * m), m) <= tol && max_abs_diff(&m.adjoint(), m) <= tol
}

pub fn trace(m: &CMatrix) -> C64 {
    ksum_c((0..m.nrows()).map(|i| m[(i, i)]))
}

/// Rounded real trace of a projector, guarded by [`RANK_GUARD`].
pub fn projector_rank(m: &CMatrix) -> crate::Result<usize> {
    let t = trace(m);
    let r = t.re.round();
    if (t.re - r).abs() > RANK_GUARD || t.im.abs() > RANK_GUARD || r < 0.0 {
        return Err(crate::Error::NonIntegerRank { trace: t.re });
    }
    Ok(r as usize)
}

/// Swap operator on `V ⊗ V` with `dim V = d`: `u ⊗ v ↦ v ⊗ u`.
pub fn swap_operator(d: usize) -> CMatrix {
    let mut s = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            s[(j * d + i, i * d + j)] = ONE;
        }
    }
    s
}

/// Largest deviation from orthonormality among a set of vectors.
pub fn orthonormality_defect(vectors: &[CVector]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((inner(a, b) - target).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_local_matches_dense_kron() {
        let a = CMatrix::from_fn(2, 2, |i, j| C64::new((i + 2 * j) as f64, 1.0));
        let b = CMatrix::from_fn(3, 3, |i, j| C64::new(i as f64 - j as f64, 0.5));
        let v = CVector::from_fn(6, |i, _| C64::new(i as f64, -(i as f64) / 3.0));
        let dims = [2, 3];
        let via_local = apply_local(&apply_local(&v, &dims, 0, &a), &dims, 1, &b);
        let dense = a.kronecker(&b) * &v;
        assert!((via_local - dense).norm() < 1e-12);
    }

    #[test]
    fn swap_exchanges_factors() {
        let u = CVector::from_vec(vec![c(1.0), c(2.0)]);
        let v = CVector::from_vec(vec![c(3.0), C64::new(0.0, 1.0)]);
        let s = swap_operator(2);
        let lhs = &s * u.kronecker(&v);
        assert!((lhs - v.kronecker(&u)).norm() < 1e-15);
    }

    #[test]
    fn kahan_recovers_small_terms() {
        let mut k = Kahan::new();
        k.add(1.0);
        for _ in 0..10 {
            k.add(1e-16);
        }
        assert!((k.value() - (1.0 + 1e-15)).abs() < 1e-18);
    }
}
