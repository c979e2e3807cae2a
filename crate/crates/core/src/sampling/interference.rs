//! Interference terms of the multiregister measurement.
//!
//! For a register tuple `ρ⃗` and a vector `b`, the overlap profile of a
//! register subset `I` (a bitmask) is `f_I(g) = ⟨b, g^I b⟩`, where `g^I` acts
//! by `ρ_i(g)` on every register `i ∈ I`. Isotypic weights follow from the
//! averaging formula
//!
//! ```text
//! ‖Π_σ^I b‖²                = (d_σ/|G|) Σ_g χ_σ(g)* f_I(g)
//! ‖Π_σ^{I₁,I₂}(b ⊗ b*)‖²    = (d_σ/|G|) Σ_g χ_σ(g)* f_{I₁}(g) f_{I₂}(g)*
//! ```
//!
//! so the doubled space `ρ⃗ ⊗ ρ⃗*` is never materialized.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::{all_index_tuples, RegisterTuple};
use crate::group::ConjugacyClass;
use crate::linalg::{self, CVector, KahanC, C64};
use crate::rep::{Catalog, IrrepLabel, MatrixRep};
use crate::{Error, Result};

/// `(d_σ/|G|) Σ_g χ_σ(g) F(g)` for every irrep `σ`, with `F` given per
/// element. Characters are real, so conjugation is omitted.
fn isotypic_weights(catalog: &Catalog, f: &[C64], quantity: &str) -> Result<Vec<f64>> {
    let table = catalog.table();
    let mut class_sums = vec![KahanC::new(); table.classes.len()];
    for (g, v) in f.iter().enumerate() {
        class_sums[table.class_index(g)].add(*v);
    }
    let class_sums: Vec<C64> = class_sums.iter().map(|k| k.value()).collect();
    let order = catalog.group().order() as f64;
    (0..catalog.len())
        .map(|s| {
            let total = linalg::ksum_c(
                table.values[s]
                    .iter()
                    .zip(&class_sums)
                    .map(|(&chi, &sum)| sum * chi as f64),
            ) * (catalog.dimension(s) as f64 / order);
            if total.im.abs() > linalg::EPS {
                return Err(Error::ComplexValue {
                    quantity: format!("{quantity} for {}", table.labels[s]),
                    imag: total.im,
                });
            }
            Ok(total.re)
        })
        .collect()
}

/// `χ_σ(M)/d_σ` for every irrep.
pub fn normalized_characters(catalog: &Catalog, class: &ConjugacyClass) -> Vec<f64> {
    (0..catalog.len())
        .map(|s| {
            catalog.table().value(s, class.representative) as f64 / catalog.dimension(s) as f64
        })
        .collect()
}

fn check_involution_class(catalog: &Catalog, class: &ConjugacyClass) -> Result<()> {
    if class.kind != catalog.kind() {
        return Err(Error::GroupMismatch(format!(
            "class of {} used with {}",
            class.kind,
            catalog.kind()
        )));
    }
    if !catalog.group().is_involution(class.representative) {
        return Err(Error::InvalidElement(format!(
            "class {} does not consist of involutions",
            class.label
        )));
    }
    Ok(())
}

/// All overlap profiles of one vector, ready for the interference formulas.
pub struct Interference<'a> {
    catalog: &'a Catalog,
    k: usize,
    profiles: Vec<Vec<C64>>,
    normalized: Vec<f64>,
}

impl<'a> Interference<'a> {
    pub fn new(
        catalog: &'a Catalog,
        tuple: &RegisterTuple,
        b: &CVector,
        class: &ConjugacyClass,
    ) -> Result<Self> {
        check_involution_class(catalog, class)?;
        if b.len() != tuple.total_dim() {
            return Err(Error::GroupMismatch(format!(
                "vector of length {} for registers of dimension {}",
                b.len(),
                tuple.total_dim()
            )));
        }
        let k = tuple.k();
        let order = catalog.group().order();
        let profiles = (0..1u32 << k)
            .map(|mask| {
                (0..order)
                    .into_par_iter()
                    .map(|g| linalg::inner(b, &tuple.act(g, mask, b)))
                    .collect()
            })
            .collect();
        Ok(Self {
            catalog,
            k,
            profiles,
            normalized: normalized_characters(catalog, class),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn masks(&self) -> std::ops::Range<u32> {
        0..1u32 << self.k
    }

    pub fn profile(&self, mask: u32) -> &[C64] {
        &self.profiles[mask as usize]
    }

    /// `‖Π_σ^I b‖²` for every `σ`.
    pub fn isotypic_norms(&self, mask: u32) -> Result<Vec<f64>> {
        isotypic_weights(self.catalog, self.profile(mask), "‖Π_σ^I b‖²")
    }

    /// `‖Π_σ^{I₁,I₂}(b ⊗ b*)‖²` for every `σ`.
    pub fn doubled_isotypic_norms(&self, m1: u32, m2: u32) -> Result<Vec<f64>> {
        let f: Vec<C64> = self
            .profile(m1)
            .iter()
            .zip(self.profile(m2))
            .map(|(a, b)| a * b.conj())
            .collect();
        isotypic_weights(self.catalog, &f, "‖Π_σ^{I₁,I₂}(b⊗b*)‖²")
    }

    fn weigh(&self, norms: &[f64]) -> f64 {
        linalg::ksum(self.normalized.iter().zip(norms).map(|(c, n)| c * n))
    }

    /// `E^I(b) = Σ_σ χ_σ(M)/d_σ ‖Π_σ^I b‖²`.
    pub fn e_i(&self, mask: u32) -> Result<f64> {
        Ok(self.weigh(&self.isotypic_norms(mask)?))
    }

    /// `E^{I₁,I₂}(b) = Σ_σ χ_σ(M)/d_σ ‖Π_σ^{I₁,I₂}(b ⊗ b*)‖²`.
    pub fn e_ii(&self, m1: u32, m2: u32) -> Result<f64> {
        Ok(self.weigh(&self.doubled_isotypic_norms(m1, m2)?))
    }

    /// `Exp_m ‖Π_m^{⊗k} b‖² = 2^{-k} Σ_I E^I(b)`, with `E^∅ = ‖b‖²`.
    pub fn expectation(&self) -> Result<f64> {
        let terms = self
            .masks()
            .map(|m| self.e_i(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(linalg::ksum(terms) / (1u64 << self.k) as f64)
    }

    /// `4^{-k} Σ_{I₁,I₂ ≠ ∅} E^{I₁,I₂}(b)`.
    pub fn variance_bound(&self) -> Result<f64> {
        let mut terms = Vec::new();
        for m1 in self.masks().skip(1) {
            for m2 in self.masks().skip(1) {
                terms.push(self.e_ii(m1, m2)?);
            }
        }
        Ok(linalg::ksum(terms) / (1u64 << (2 * self.k)) as f64)
    }

    /// `4^{-k} Σ_{I₁,I₂} E^{I₁,I₂}(b) − (2^{-k} Σ_I E^I(b))²`.
    pub fn exact_variance(&self) -> Result<f64> {
        let mut terms = Vec::new();
        for m1 in self.masks() {
            for m2 in self.masks() {
                terms.push(self.e_ii(m1, m2)?);
            }
        }
        let second = linalg::ksum(terms) / (1u64 << (2 * self.k)) as f64;
        let mean = self.expectation()?;
        Ok(second - mean * mean)
    }

    /// Both sides of the projector-sum inequality for irrep `sigma`.
    pub fn projector_sum(&self, sigma: usize) -> Result<ProjectorSumBound> {
        let mut all = Vec::new();
        let mut nonempty = Vec::new();
        for m1 in self.masks() {
            for m2 in self.masks() {
                let v = self.doubled_isotypic_norms(m1, m2)?[sigma];
                all.push(v);
                if m1 != 0 && m2 != 0 {
                    nonempty.push(v);
                }
            }
        }
        let dims: Vec<f64> = (0..self.catalog.len())
            .map(|t| self.catalog.dimension(t) as f64)
            .collect();
        let weighted = |mask: u32| -> Result<f64> {
            let norms = self.isotypic_norms(mask)?;
            Ok(linalg::ksum(norms.iter().zip(&dims).map(|(n, d)| n / d)))
        };
        let empty_term = weighted(0)?;
        let nonempty_terms = self
            .masks()
            .skip(1)
            .map(weighted)
            .collect::<Result<Vec<_>>>()?;
        let scale = (1u64 << self.k) as f64 * dims[sigma] * dims[sigma];
        let stated = scale * linalg::ksum(nonempty_terms.iter().copied());
        Ok(ProjectorSumBound {
            sigma: self.catalog.labels()[sigma].to_string(),
            lhs_all: linalg::ksum(all),
            lhs_nonempty: linalg::ksum(nonempty),
            rhs_stated: stated,
            rhs_with_empty: stated + scale * empty_term,
        })
    }
}

/// Both sides of the projector-sum inequality.
///
/// `lhs_all` sums all `4^k` subset pairs and is bounded by `rhs_with_empty`,
/// whose inner sum includes `I = ∅`. Restricting both sides to nonempty
/// subsets gives `lhs_nonempty ≤ rhs_stated`. Pairing `lhs_all` with
/// `rhs_stated` does not hold in general.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectorSumBound {
    pub sigma: String,
    pub lhs_all: f64,
    pub lhs_nonempty: f64,
    pub rhs_stated: f64,
    pub rhs_with_empty: f64,
}

impl ProjectorSumBound {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs_all <= self.rhs_with_empty + tol && self.lhs_nonempty <= self.rhs_stated + tol
    }

    /// Whether the full-sum left side stays below the nonempty right side.
    pub fn stated_pairing_holds(&self, tol: f64) -> bool {
        self.lhs_all <= self.rhs_stated + tol
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClaimAverage {
    pub lhs: f64,
    pub rhs: f64,
}

/// `Exp_g |⟨b, g b⟩|²` against `Σ_σ ‖𝔍_σ b‖⁴ / d_σ`.
pub fn claim_projector_average(
    catalog: &Catalog,
    rep: &MatrixRep,
    b: &CVector,
) -> Result<ClaimAverage> {
    if rep.kind() != catalog.kind() || rep.dim() != b.len() {
        return Err(Error::GroupMismatch(format!(
            "vector of length {} for a {}-dimensional representation of {}",
            b.len(),
            rep.dim(),
            rep.kind()
        )));
    }
    let order = catalog.group().order();
    let profile: Vec<C64> = (0..order)
        .into_par_iter()
        .map(|g| linalg::inner(b, &(rep.matrix(g) * b)))
        .collect();
    let lhs = linalg::ksum(profile.iter().map(|z| z.norm_sqr())) / order as f64;
    let norms = isotypic_weights(catalog, &profile, "‖𝔍_σ b‖²")?;
    let rhs = linalg::ksum(
        norms
            .iter()
            .enumerate()
            .map(|(s, n)| n * n / catalog.dimension(s) as f64),
    );
    Ok(ClaimAverage { lhs, rhs })
}

/// `Exp_ρ⃗ a_σ^{ρ_I ⊗ 𝟙} d_σ / d_ρ⃗` under the Plancherel product measure,
/// by exact enumeration of all `k`-tuples. `mask` encodes `I ≠ ∅`.
pub fn expected_isotypic_dimension(
    catalog: &Catalog,
    sigma: &IrrepLabel,
    mask: u32,
    k: usize,
) -> Result<Ratio<i128>> {
    if mask == 0 {
        return Err(Error::OutOfRange(
            "the register subset I must be nonempty".into(),
        ));
    }
    if k >= 32 || mask >> k != 0 {
        return Err(Error::OutOfRange(format!(
            "subset mask {mask:#b} for k = {k}"
        )));
    }
    let table = catalog.table();
    let s = catalog.position(sigma)?;
    let order = catalog.group().order() as i128;
    let d_sigma = catalog.dimension(s) as i128;
    let mut total = Ratio::from_integer(0i128);
    for tuple in all_index_tuples(catalog.len(), k) {
        let dims: Vec<i128> = tuple
            .iter()
            .map(|&i| catalog.dimension(i) as i128)
            .collect();
        let weight = dims.iter().fold(Ratio::from_integer(1i128), |acc, d| {
            acc * Ratio::new(d * d, order)
        });
        // character of ρ_I as a class function
        let mut chi = vec![1i64; table.classes.len()];
        let mut outside = 1i128;
        for (pos, &i) in tuple.iter().enumerate() {
            if mask & (1 << pos) != 0 {
                for (c, v) in chi.iter_mut().zip(&table.values[i]) {
                    *c *= v;
                }
            } else {
                outside *= dims[pos];
            }
        }
        let a = table.inner_product(&chi, &table.values[s])? as i128 * outside;
        let d_total: i128 = dims.iter().product();
        total += weight * Ratio::new(a * d_sigma, d_total);
    }
    Ok(total)
}
