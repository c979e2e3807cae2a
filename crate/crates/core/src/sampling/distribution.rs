use num_rational::Ratio;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::{subgroup_projector, HiddenSubgroup, MeasurementBasis, RegisterTuple};
use crate::format::sig12;
use crate::linalg::{self, CMatrix};
use crate::rep::{plancherel, Catalog, Irrep};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Context {
    Weak,
    Strong,
    Multiregister,
    MultiregisterWeak,
    Plancherel,
    Uniform,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub label: String,
    pub probability: f64,
    /// Exact value when the probability is a known rational.
    pub exact: Option<Ratio<u64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplingDistribution {
    pub context: Context,
    pub group: String,
    pub subgroup: String,
    pub registers: Vec<String>,
    pub outcomes: Vec<Outcome>,
}

impl SamplingDistribution {
    pub fn total(&self) -> f64 {
        linalg::ksum(self.outcomes.iter().map(|o| o.probability))
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.probability).collect()
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Sum within 1e-9 of one and no entry below −1e-9.
    pub fn check(&self) -> Result<()> {
        let total = self.total();
        if (total - 1.0).abs() > linalg::EPS {
            return Err(Error::Verification(format!("distribution sums to {total}")));
        }
        if let Some(o) = self.outcomes.iter().find(|o| o.probability < -linalg::EPS) {
            return Err(Error::Verification(format!(
                "outcome {} has probability {}",
                o.label, o.probability
            )));
        }
        Ok(())
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Outcome", 3)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("probability", &sig12(self.probability))?;
        if let Some(r) = &self.exact {
            st.serialize_field("exact", &r.to_string())?;
        } else {
            st.skip_field("exact")?;
        }
        st.end()
    }
}

impl Serialize for SamplingDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SamplingDistribution", 5)?;
        st.serialize_field("context", &self.context)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("subgroup", &self.subgroup)?;
        st.serialize_field("registers", &self.registers)?;
        st.serialize_field("outcomes", &self.outcomes)?;
        st.end()
    }
}

fn exact_outcome(label: String, r: Ratio<u64>) -> Outcome {
    Outcome {
        label,
        probability: *r.numer() as f64 / *r.denom() as f64,
        exact: Some(r),
    }
}

/// Plancherel measure as a distribution over irreps.
pub fn plancherel_dist(catalog: &Catalog) -> SamplingDistribution {
    SamplingDistribution {
        context: Context::Plancherel,
        group: catalog.kind().to_string(),
        subgroup: "{e}".into(),
        registers: Vec::new(),
        outcomes: plancherel(catalog)
            .into_iter()
            .map(|(l, p)| exact_outcome(l.to_string(), p))
            .collect(),
    }
}

/// Exact weak-sampling probabilities `d·|H|·rk Π_H / |G|` per irrep.
pub fn weak_ratios(catalog: &Catalog, h: &HiddenSubgroup) -> Result<Vec<Ratio<u64>>> {
    let order = catalog.group().order() as u64;
    (0..catalog.len())
        .map(|i| {
            let rank = h.exact_rank(catalog, i)? as u64;
            let d = catalog.dimension(i) as u64;
            Ok(Ratio::new(d * h.order() as u64 * rank, order))
        })
        .collect()
}

pub fn weak_dist(catalog: &Catalog, h: &HiddenSubgroup) -> Result<SamplingDistribution> {
    let ratios = weak_ratios(catalog, h)?;
    Ok(SamplingDistribution {
        context: Context::Weak,
        group: catalog.kind().to_string(),
        subgroup: h.describe(catalog.group()),
        registers: Vec::new(),
        outcomes: catalog
            .labels()
            .iter()
            .zip(ratios)
            .map(|(l, r)| exact_outcome(l.to_string(), r))
            .collect(),
    })
}

/// Product of per-register weak distributions over all `k`-tuples, in
/// lexicographic tuple order.
pub fn multiregister_weak_dist(
    catalog: &Catalog,
    h: &HiddenSubgroup,
    k: usize,
    max_outcomes: usize,
) -> Result<SamplingDistribution> {
    let count = catalog.len().checked_pow(k as u32).unwrap_or(usize::MAX);
    if count > max_outcomes {
        return Err(Error::CapExceeded {
            size: count,
            cap: max_outcomes,
        });
    }
    let single = weak_ratios(catalog, h)?;
    let outcomes = super::all_index_tuples(catalog.len(), k)
        .into_iter()
        .map(|t| {
            let label = t
                .iter()
                .map(|&i| catalog.labels()[i].to_string())
                .collect::<Vec<_>>()
                .join(" ⊗ ");
            let p = t
                .iter()
                .fold(Ratio::from_integer(1u64), |acc, &i| acc * single[i]);
            exact_outcome(label, p)
        })
        .collect();
    Ok(SamplingDistribution {
        context: Context::MultiregisterWeak,
        group: catalog.kind().to_string(),
        subgroup: h.describe(catalog.group()),
        registers: vec![format!("k={k}")],
        outcomes,
    })
}

fn basis_labels(n: usize) -> impl Iterator<Item = String> {
    (0..n).map(|j| format!("b{j}"))
}

/// Strong sampling `‖Π_H b‖² / rk Π_H` over the vectors of `basis`.
pub fn strong_dist(
    catalog: &Catalog,
    irrep: &Irrep,
    h: &HiddenSubgroup,
    basis: &MeasurementBasis,
) -> Result<SamplingDistribution> {
    if basis.dim() != irrep.dim() {
        return Err(Error::GroupMismatch(format!(
            "basis of dimension {} for {} of dimension {}",
            basis.dim(),
            irrep.label,
            irrep.dim()
        )));
    }
    let p = subgroup_projector(irrep, h)?;
    let rank = linalg::projector_rank(&p)?;
    if rank == 0 {
        return Err(Error::ZeroRank {
            label: irrep.label.to_string(),
        });
    }
    let projected = &p * basis.matrix();
    let outcomes = basis_labels(basis.len())
        .enumerate()
        .map(|(j, label)| Outcome {
            label,
            probability: linalg::ksum(projected.column(j).iter().map(|z| z.norm_sqr()))
                / rank as f64,
            exact: None,
        })
        .collect();
    Ok(SamplingDistribution {
        context: Context::Strong,
        group: catalog.kind().to_string(),
        subgroup: h.describe(catalog.group()),
        registers: vec![irrep.label.to_string()],
        outcomes,
    })
}

/// `‖Π_H^{⊗k} b‖²` for every column of `vectors`.
pub fn projected_weights(
    tuple: &RegisterTuple,
    projectors: &[CMatrix],
    vectors: &CMatrix,
) -> Vec<f64> {
    (0..vectors.ncols())
        .into_par_iter()
        .map(|j| {
            let mut v = vectors.column(j).into_owned();
            for (i, p) in projectors.iter().enumerate() {
                v = linalg::apply_local(&v, tuple.dims(), i, p);
            }
            linalg::norm_sqr(&v)
        })
        .collect()
}

/// Register projectors `Π_H` and the total rank `Π rk`; fails on a zero-rank
/// register.
pub fn register_projectors(
    tuple: &RegisterTuple,
    h: &HiddenSubgroup,
) -> Result<(Vec<CMatrix>, usize)> {
    let mut rank = 1usize;
    let mut out = Vec::with_capacity(tuple.k());
    for irrep in tuple.irreps() {
        let p = subgroup_projector(irrep, h)?;
        let r = linalg::projector_rank(&p)?;
        if r == 0 {
            return Err(Error::ZeroRank {
                label: irrep.label.to_string(),
            });
        }
        rank *= r;
        out.push(p);
    }
    Ok((out, rank))
}

/// `‖Π_H^{⊗k} b‖² / rk Π_H^{⊗k}` over the (possibly entangled) `basis`.
pub fn multiregister_dist(
    catalog: &Catalog,
    tuple: &RegisterTuple,
    h: &HiddenSubgroup,
    basis: &MeasurementBasis,
) -> Result<SamplingDistribution> {
    if basis.dim() != tuple.total_dim() {
        return Err(Error::GroupMismatch(format!(
            "basis of dimension {} for registers of total dimension {}",
            basis.dim(),
            tuple.total_dim()
        )));
    }
    let (projectors, rank) = register_projectors(tuple, h)?;
    let weights = projected_weights(tuple, &projectors, basis.matrix());
    Ok(SamplingDistribution {
        context: Context::Multiregister,
        group: catalog.kind().to_string(),
        subgroup: h.describe(catalog.group()),
        registers: tuple.labels(),
        outcomes: basis_labels(basis.len())
            .zip(weights)
            .map(|(label, w)| Outcome {
                label,
                probability: w / rank as f64,
                exact: None,
            })
            .collect(),
    })
}

/// Uniform distribution over `d` basis vectors.
pub fn uniform(d: usize) -> SamplingDistribution {
    SamplingDistribution {
        context: Context::Uniform,
        group: String::new(),
        subgroup: String::new(),
        registers: Vec::new(),
        outcomes: basis_labels(d)
            .map(|label| exact_outcome(label, Ratio::new(1, d as u64)))
            .collect(),
    }
}

/// `Σ |p_i − q_i|` over aligned probability vectors.
pub fn l1_distance(p: &[f64], q: &[f64]) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    linalg::ksum(p.iter().zip(q).map(|(a, b)| (a - b).abs()))
}

/// `Σ |p_i − 1/d|`.
pub fn l1_to_uniform(p: &[f64]) -> f64 {
    let u = 1.0 / p.len() as f64;
    linalg::ksum(p.iter().map(|a| (a - u).abs()))
}
