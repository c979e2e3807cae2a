use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::{build_bad_set, BadSet, BadSetRule, BadSetSummary};
use crate::format::{ser_opt_sig12, ser_sig12};
use crate::group::{ConjugacyClass, GroupKind};
use crate::linalg::{self, CMatrix};
use crate::rep::{Catalog, Irrep};
use crate::rng::CounterRng;
use crate::sampling::{
    all_index_tuples, l1_to_uniform, projected_weights, weak_ratios, HiddenSubgroup,
    MeasurementBasis, RegisterTuple,
};
use crate::{Error, Result};

/// Largest number of register tuples enumerated exactly.
pub const EXACT_TUPLE_LIMIT: usize = 10_000;
/// Largest degree handled in exact mode.
pub const EXACT_MAX_DEGREE: usize = 3;

const STREAM_EXACT: u64 = 0xB0;
const STREAM_SAMPLED: u64 = 0xB1;

/// `Σ_τ d_τ` over all irreps.
pub fn sum_dimensions(catalog: &Catalog) -> u64 {
    (0..catalog.len())
        .map(|i| catalog.dimension(i) as u64)
        .sum()
}

fn ratio_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `Δ = λ + P(Λ) Σ_τ d_τ`.
pub fn delta(bad: &BadSet, catalog: &Catalog) -> f64 {
    bad.lambda_f64() + bad.mass_f64() * sum_dimensions(catalog) as f64
}

/// `λ + P(Λ) Σ_τ d_τ / |G|`, the variant carrying an extra `1/|G|`.
pub fn delta_appendix(bad: &BadSet, catalog: &Catalog) -> f64 {
    bad.lambda_f64()
        + bad.mass_f64() * sum_dimensions(catalog) as f64 / catalog.group().order() as f64
}

/// `2k(λ + P(Λ))`.
pub fn weak_tv_bound(bad: &BadSet, k: usize) -> f64 {
    2.0 * k as f64 * (bad.lambda_f64() + bad.mass_f64())
}

/// `2·2^k(λ + P(Λ))`.
pub fn expectation_tv_bound(bad: &BadSet, k: usize) -> f64 {
    2.0 * 2f64.powi(k as i32) * (bad.lambda_f64() + bad.mass_f64())
}

/// `2^k[(1−λ)^{−k}√Δ + 3(λ + P(Λ))]`; undefined for `λ ≥ 1`.
pub fn full_tvd_bound(bad: &BadSet, catalog: &Catalog, k: usize) -> Result<f64> {
    if bad.lambda >= Ratio::from_integer(1) {
        return Err(Error::UndefinedBound(format!(
            "λ = {} makes (1−λ)^(−k) undefined",
            bad.lambda
        )));
    }
    let lambda = bad.lambda_f64();
    let two_k = 2f64.powi(k as i32);
    Ok(two_k
        * ((1.0 - lambda).powi(-(k as i32)) * delta(bad, catalog).sqrt()
            + 3.0 * (lambda + bad.mass_f64())))
}

/// `‖ℋ^{⊗k} − 𝒫^{⊗k}‖₁` by exact enumeration of irrep tuples.
pub fn exact_weak_tv(catalog: &Catalog, h: &HiddenSubgroup, k: usize) -> Result<Ratio<i128>> {
    let count = catalog.len().checked_pow(k as u32).unwrap_or(usize::MAX);
    if count > EXACT_TUPLE_LIMIT {
        return Err(Error::CapExceeded {
            size: count,
            cap: EXACT_TUPLE_LIMIT,
        });
    }
    let order = catalog.group().order() as i128;
    let weak: Vec<Ratio<i128>> = weak_ratios(catalog, h)?
        .into_iter()
        .map(|r| Ratio::new(*r.numer() as i128, *r.denom() as i128))
        .collect();
    let planch: Vec<Ratio<i128>> = (0..catalog.len())
        .map(|i| Ratio::new((catalog.dimension(i) as i128).pow(2), order))
        .collect();
    let one = Ratio::from_integer(1i128);
    let mut total = Ratio::from_integer(0i128);
    for t in all_index_tuples(catalog.len(), k) {
        let hw = t.iter().fold(one, |acc, &i| acc * weak[i]);
        let pw = t.iter().fold(one, |acc, &i| acc * planch[i]);
        let diff = hw - pw;
        total += if diff < Ratio::from_integer(0) {
            -diff
        } else {
            diff
        };
    }
    Ok(total)
}

/// Smallest value whose cumulative weight reaches `q` of the total.
pub fn weighted_quantile(values: &[(f64, f64)], q: f64) -> f64 {
    let mut sorted: Vec<(f64, f64)> = values.iter().copied().filter(|v| v.1 > 0.0).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total = linalg::ksum(sorted.iter().map(|v| v.1));
    let mut acc = linalg::Kahan::new();
    for (v, w) in &sorted {
        acc.add(*w);
        if acc.value() >= q * total - 1e-12 {
            return *v;
        }
    }
    sorted.last().map_or(0.0, |v| v.0)
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub trials: usize,
    pub rule: BadSetRule,
    pub tensor_cap: usize,
}

impl PipelineConfig {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            seed: 0,
            trials: 20,
            rule: BadSetRule::Cutoff,
            tensor_cap: crate::sampling::DEFAULT_TENSOR_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Sampling,
}

#[derive(Clone, Debug, Serialize)]
pub struct TvSummary {
    #[serde(serialize_with = "ser_sig12")]
    pub mean: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub q50: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub q90: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub q99: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub max: f64,
}

impl TvSummary {
    fn from_weighted(values: &[(f64, f64)]) -> Self {
        let total = linalg::ksum(values.iter().map(|v| v.1));
        Self {
            mean: linalg::ksum(values.iter().map(|(v, w)| v * w)) / total,
            q50: weighted_quantile(values, 0.5),
            q90: weighted_quantile(values, 0.9),
            q99: weighted_quantile(values, 0.99),
            max: values
                .iter()
                .filter(|v| v.1 > 0.0)
                .map(|v| v.0)
                .fold(0.0, f64::max),
        }
    }
}

/// Exactly enumerated counterparts of the bounds.
#[derive(Clone, Debug, Serialize)]
pub struct ExactCounterparts {
    pub tuples: usize,
    pub bases_per_tuple: usize,
    /// `Exp_ρ⃗ ‖𝒰 − Exp_m ℋ_m(ρ⃗,·)‖₁`, Plancherel weights.
    #[serde(serialize_with = "ser_sig12")]
    pub expected_tv_of_average: f64,
    /// `Exp_ρ⃗ Exp_m ‖ℋ_m(ρ⃗,·) − 𝒰‖₁`, Plancherel weights.
    #[serde(serialize_with = "ser_sig12")]
    pub expected_tv: f64,
    /// `Exp_ρ⃗ Exp_b Var_m ‖Π_m^{⊗k} b‖²`.
    #[serde(serialize_with = "ser_sig12")]
    pub expected_variance: f64,
    /// Plancherel mass of tuples whose projector has rank 0; each counts
    /// with distance 2.
    #[serde(serialize_with = "ser_sig12")]
    pub zero_rank_mass: f64,
    /// `‖ℋ_m(ρ⃗,·) − 𝒰‖₁` with `ρ⃗` weighted by `ℋ^{⊗k}`.
    pub weak_weighted_tv: TvSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampledEstimates {
    pub samples: usize,
    /// `‖ℋ_m(ρ⃗,·) − 𝒰‖₁` with `ρ⃗ ~ ℋ^{⊗k}`, `m` uniform on `M`, Haar bases.
    pub tv: TvSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: String,
    #[serde(serialize_with = "ser_sig12")]
    pub bound: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub value: f64,
    pub pass: bool,
}

impl BoundCheck {
    fn new(name: &str, bound: f64, value: f64) -> Self {
        Self {
            name: name.into(),
            bound,
            value,
            pass: value <= bound + linalg::EPS,
        }
    }
}

/// End-to-end bound report for `K = S_n ≀ Z₂`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub group: String,
    pub n: usize,
    pub k: usize,
    pub m: String,
    pub class_size: usize,
    pub bad_set: BadSetSummary,
    pub sum_dimensions: u64,
    #[serde(serialize_with = "ser_sig12")]
    pub delta: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub delta_appendix: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub weak_tv_bound: f64,
    #[serde(serialize_with = "ser_sig12")]
    pub expectation_tv_bound: f64,
    #[serde(serialize_with = "ser_opt_sig12")]
    pub full_tvd_bound: Option<f64>,
    pub full_tvd_defined: bool,
    pub mode: Mode,
    pub seed: u64,
    pub trials: usize,
    #[serde(serialize_with = "ser_opt_sig12")]
    pub exact_weak_tv: Option<f64>,
    pub exact_weak_tv_rational: Option<String>,
    pub exact: Option<ExactCounterparts>,
    pub sampled: Option<SampledEstimates>,
    pub omitted: Vec<String>,
    pub checks: Vec<BoundCheck>,
    pub pass: bool,
}

struct TupleOutcome {
    planch: f64,
    weak: f64,
    zero_rank: bool,
    tv_average: f64,
    tv_full: f64,
    variance: f64,
    tv_values: Vec<f64>,
}

/// `(1 + ρ(m))/2` for every irrep and every `m ∈ M`.
fn projector_table(irreps: &[std::sync::Arc<Irrep>], class: &ConjugacyClass) -> Vec<Vec<CMatrix>> {
    class
        .members
        .iter()
        .map(|&m| {
            irreps
                .iter()
                .map(|r| (linalg::identity(r.dim()) + r.matrix(m)) * linalg::c(0.5))
                .collect()
        })
        .collect()
}

fn tuple_outcome(
    catalog: &Catalog,
    tuple: &RegisterTuple,
    tuple_id: u64,
    projectors: &[Vec<CMatrix>],
    ranks: &[usize],
    weak: &[f64],
    cfg: &PipelineConfig,
) -> TupleOutcome {
    let order = catalog.group().order() as f64;
    let idx = tuple.indices();
    let planch = idx
        .iter()
        .map(|&i| (catalog.dimension(i) as f64).powi(2) / order)
        .product();
    let weak_w = idx.iter().map(|&i| weak[i]).product();
    let rank: usize = idx.iter().map(|&i| ranks[i]).product();
    let dim = tuple.total_dim();
    let mut tv_average = Vec::with_capacity(cfg.trials);
    let mut tv_full = Vec::with_capacity(cfg.trials);
    let mut variance = Vec::with_capacity(cfg.trials);
    let mut tv_values = Vec::new();
    for trial in 0..cfg.trials {
        let basis = MeasurementBasis::haar(dim, cfg.seed, &[STREAM_EXACT, tuple_id, trial as u64]);
        let per_m: Vec<Vec<f64>> = projectors
            .iter()
            .map(|pm| {
                let factors: Vec<CMatrix> = idx.iter().map(|&i| pm[i].clone()).collect();
                projected_weights(tuple, &factors, basis.matrix())
            })
            .collect();
        let count = per_m.len() as f64;
        let col_var: Vec<f64> = (0..dim)
            .map(|j| {
                let mean = linalg::ksum(per_m.iter().map(|w| w[j])) / count;
                linalg::ksum(per_m.iter().map(|w| (w[j] - mean).powi(2))) / count
            })
            .collect();
        variance.push(linalg::ksum(col_var) / dim as f64);
        if rank == 0 {
            tv_average.push(2.0);
            tv_full.push(2.0);
            continue;
        }
        let dists: Vec<Vec<f64>> = per_m
            .iter()
            .map(|w| w.iter().map(|x| x / rank as f64).collect())
            .collect();
        let tvs: Vec<f64> = dists.iter().map(|p| l1_to_uniform(p)).collect();
        let average: Vec<f64> = (0..dim)
            .map(|j| linalg::ksum(dists.iter().map(|p| p[j])) / count)
            .collect();
        tv_average.push(l1_to_uniform(&average));
        tv_full.push(linalg::ksum(tvs.iter().copied()) / count);
        tv_values.extend(tvs);
    }
    let t = cfg.trials as f64;
    TupleOutcome {
        planch,
        weak: weak_w,
        zero_rank: rank == 0,
        tv_average: linalg::ksum(tv_average) / t,
        tv_full: linalg::ksum(tv_full) / t,
        variance: linalg::ksum(variance) / t,
        tv_values,
    }
}

fn exact_counterparts(
    catalog: &Catalog,
    class: &ConjugacyClass,
    h: &HiddenSubgroup,
    cfg: &PipelineConfig,
) -> Result<ExactCounterparts> {
    let irreps = catalog.all_irreps()?;
    let projectors = projector_table(&irreps, class);
    let ranks: Vec<usize> = (0..catalog.len())
        .map(|i| h.exact_rank(catalog, i))
        .collect::<Result<_>>()?;
    let weak: Vec<f64> = weak_ratios(catalog, h)?.iter().map(ratio_f64).collect();
    let tuples = all_index_tuples(catalog.len(), cfg.k);
    let outcomes: Vec<TupleOutcome> = tuples
        .par_iter()
        .enumerate()
        .map(|(id, t)| {
            let tuple = RegisterTuple::new(catalog, t, cfg.tensor_cap)?;
            Ok(tuple_outcome(
                catalog,
                &tuple,
                id as u64,
                &projectors,
                &ranks,
                &weak,
                cfg,
            ))
        })
        .collect::<Result<_>>()?;
    let weighted =
        |f: &dyn Fn(&TupleOutcome) -> f64| linalg::ksum(outcomes.iter().map(|o| o.planch * f(o)));
    let per_value = 1.0 / (cfg.trials * class.size()) as f64;
    let weak_values: Vec<(f64, f64)> = outcomes
        .iter()
        .flat_map(|o| o.tv_values.iter().map(move |&v| (v, o.weak * per_value)))
        .collect();
    Ok(ExactCounterparts {
        tuples: tuples.len(),
        bases_per_tuple: cfg.trials,
        expected_tv_of_average: weighted(&|o| o.tv_average),
        expected_tv: weighted(&|o| o.tv_full),
        expected_variance: weighted(&|o| o.variance),
        zero_rank_mass: weighted(&|o| if o.zero_rank { 1.0 } else { 0.0 }),
        weak_weighted_tv: TvSummary::from_weighted(&weak_values),
    })
}

fn sampled_estimates(
    catalog: &Catalog,
    class: &ConjugacyClass,
    h: &HiddenSubgroup,
    cfg: &PipelineConfig,
) -> Result<SampledEstimates> {
    let weak: Vec<f64> = weak_ratios(catalog, h)?.iter().map(ratio_f64).collect();
    let values: Vec<(f64, f64)> = (0..cfg.trials)
        .into_par_iter()
        .map(|s| {
            let mut rng = CounterRng::stream(cfg.seed, &[STREAM_SAMPLED, s as u64]);
            let indices: Vec<usize> = (0..cfg.k).map(|_| rng.weighted_index(&weak)).collect();
            let m = class.members[rng.below(class.size() as u64) as usize];
            let tuple = RegisterTuple::new(catalog, &indices, cfg.tensor_cap)?;
            let hm = HiddenSubgroup::involution(catalog.group(), m)?;
            let (projectors, rank) = crate::sampling::register_projectors(&tuple, &hm)?;
            let basis = MeasurementBasis::haar(tuple.total_dim(), rng.next_u64(), &[]);
            let w = projected_weights(&tuple, &projectors, basis.matrix());
            let p: Vec<f64> = w.iter().map(|x| x / rank as f64).collect();
            Ok((l1_to_uniform(&p), 1.0))
        })
        .collect::<Result<_>>()?;
    Ok(SampledEstimates {
        samples: values.len(),
        tv: TvSummary::from_weighted(&values),
    })
}

/// Builds `K`, `M`, `Λ`, every bound, and the exact or sampled counterparts.
pub fn theorem_pipeline(catalog: &Catalog, cfg: &PipelineConfig) -> Result<BoundReport> {
    let GroupKind::Wreath(n) = catalog.kind() else {
        return Err(Error::Unsupported(
            "the bound pipeline runs on wreath groups".into(),
        ));
    };
    if n != cfg.n {
        return Err(Error::GroupMismatch(format!(
            "catalog of degree {n} for n = {}",
            cfg.n
        )));
    }
    if cfg.k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    if cfg.trials == 0 {
        return Err(Error::OutOfRange("trials must be at least 1".into()));
    }
    let class = catalog.group().involution_class()?;
    let m = class.members[0];
    let h = HiddenSubgroup::involution(catalog.group(), m)?;
    let bad = build_bad_set(catalog, &class, cfg.rule.clone())?;
    let mut omitted = Vec::new();

    let full = match full_tvd_bound(&bad, catalog, cfg.k) {
        Ok(v) => Some(v),
        Err(e) => {
            omitted.push(format!("full_tvd_bound: {e}"));
            None
        }
    };
    let weak_exact = match exact_weak_tv(catalog, &h, cfg.k) {
        Ok(r) => Some(r),
        Err(e) => {
            omitted.push(format!("exact_weak_tv: {e}"));
            None
        }
    };
    let count = catalog
        .len()
        .checked_pow(cfg.k as u32)
        .unwrap_or(usize::MAX);
    let max_dim = (0..catalog.len())
        .map(|i| catalog.dimension(i))
        .max()
        .unwrap_or(1);
    let max_total = max_dim.checked_pow(cfg.k as u32).unwrap_or(usize::MAX);
    let mode = if n <= EXACT_MAX_DEGREE && count <= EXACT_TUPLE_LIMIT && max_total <= cfg.tensor_cap
    {
        Mode::Exact
    } else {
        omitted.push(format!(
            "exact counterparts: n = {n}, {count} tuples, largest register dimension {max_total}"
        ));
        Mode::Sampling
    };
    let (exact, sampled) = match mode {
        Mode::Exact => (Some(exact_counterparts(catalog, &class, &h, cfg)?), None),
        Mode::Sampling => (None, Some(sampled_estimates(catalog, &class, &h, cfg)?)),
    };

    let report_delta = delta(&bad, catalog);
    let weak_bound = weak_tv_bound(&bad, cfg.k);
    let exp_bound = expectation_tv_bound(&bad, cfg.k);
    let mut checks = Vec::new();
    if let Some(w) = &weak_exact {
        checks.push(BoundCheck::new(
            "total-variation",
            weak_bound,
            ratio_i128(w),
        ));
    }
    if let Some(e) = &exact {
        checks.push(BoundCheck::new(
            "exp-general",
            exp_bound,
            e.expected_tv_of_average,
        ));
        if let Some(f) = full {
            checks.push(BoundCheck::new("tvd", f, e.expected_tv));
        }
        checks.push(BoundCheck::new("delta", report_delta, e.expected_variance));
    }
    if cfg.rule == BadSetRule::Cutoff {
        let mut c = BoundCheck::new("cutoff", bad.summary(n).cutoff_value, bad.lambda_f64());
        c.pass = bad.cutoff_holds(n);
        checks.push(c);
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(BoundReport {
        group: catalog.kind().to_string(),
        n,
        k: cfg.k,
        m: catalog.group().element(m).to_string(),
        class_size: class.size(),
        bad_set: bad.summary(n),
        sum_dimensions: sum_dimensions(catalog),
        delta: report_delta,
        delta_appendix: delta_appendix(&bad, catalog),
        weak_tv_bound: weak_bound,
        expectation_tv_bound: exp_bound,
        full_tvd_bound: full,
        full_tvd_defined: full.is_some(),
        mode,
        seed: cfg.seed,
        trials: cfg.trials,
        exact_weak_tv: weak_exact.as_ref().map(ratio_i128),
        exact_weak_tv_rational: weak_exact.map(|r| r.to_string()),
        exact,
        sampled,
        omitted,
        checks,
        pass,
    })
}

fn ratio_i128(r: &Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
