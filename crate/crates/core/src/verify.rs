//! Formula-versus-oracle comparisons, one runner per identity.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::group::{ConjugacyClass, FiniteGroup, GroupKind};
use crate::linalg::{self, C64};
use crate::oracle::{self, exact_tv, OracleResult};
use crate::rep::{
    isotypic_projector, partitions, wreath_character, Catalog, IrrepLabel, MatrixRep, SwapSign,
    WreathIrrepLabel, DEFAULT_PROJECTOR_CAP,
};
use crate::sampling::{
    all_index_tuples, claim_projector_average, expected_isotypic_dimension, haar_vector,
    multiregister_dist, strong_dist, uniform, weak_ratios, HiddenSubgroup, Interference,
    MeasurementBasis, RegisterTuple,
};
use crate::{Error, Result};

pub const TOL: f64 = 1e-9;
/// Tolerance for distributions that must be exactly uniform.
pub const CONTROL_TOL: f64 = 1e-12;
/// Exhaustive `ρ(gh) = ρ(g)ρ(h)` checks run up to this group order.
const EXHAUSTIVE_ORDER: usize = 200;
/// Largest reducible representation built from tensor products.
const REDUCIBLE_DIM: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    Integrity,
    Appendix,
    Rank,
    Overlap,
    SecondMoment,
    Expectation,
    Variance,
    ClaimAverage,
    ProjectorSum,
    ExpectedDecomp,
    Control,
    All,
}

impl Lemma {
    pub const EACH: [Lemma; 11] = [
        Lemma::Integrity,
        Lemma::Appendix,
        Lemma::Rank,
        Lemma::Overlap,
        Lemma::SecondMoment,
        Lemma::Expectation,
        Lemma::Variance,
        Lemma::ClaimAverage,
        Lemma::ProjectorSum,
        Lemma::ExpectedDecomp,
        Lemma::Control,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Integrity => "integrity",
            Lemma::Appendix => "appendix",
            Lemma::Rank => "rank",
            Lemma::Overlap => "overlap",
            Lemma::SecondMoment => "second-moment",
            Lemma::Expectation => "expectation",
            Lemma::Variance => "variance",
            Lemma::ClaimAverage => "claim-average",
            Lemma::ProjectorSum => "projector-sum",
            Lemma::ExpectedDecomp => "expected-decomp",
            Lemma::Control => "control",
            Lemma::All => "all",
        }
    }

    fn stream(self) -> u64 {
        0xC0 + self as u64
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::EACH
            .iter()
            .chain(&[Lemma::All])
            .copied()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown lemma {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub k: usize,
    pub seed: u64,
    pub trials: usize,
    pub tensor_cap: usize,
    /// Element whose class plays the role of `M`; `None` picks the default.
    pub class_element: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            k: 1,
            seed: 0,
            trials: 100,
            tensor_cap: crate::sampling::DEFAULT_TENSOR_CAP,
            class_element: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub lemma: String,
    pub group: String,
    pub k: usize,
    pub seed: u64,
    pub trials: usize,
    pub class: Option<String>,
    pub results: Vec<OracleResult>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &OracleResult> {
        self.results.iter().filter(|r| !r.pass)
    }
}

/// The block-swap class for `S_n ≀ Z₂`, transpositions for `S_n`.
pub fn default_class(group: &FiniteGroup) -> Result<ConjugacyClass> {
    match group.kind() {
        GroupKind::Wreath(_) => group.involution_class(),
        GroupKind::Symmetric(n) => match group.generators().first() {
            Some(&t) => Ok(group.class_of(t)),
            None => Err(Error::Unsupported(format!("sym:{n} has no involutions"))),
        },
    }
}

fn chosen_class(catalog: &Catalog, cfg: &VerifyConfig) -> Result<ConjugacyClass> {
    let group = catalog.group();
    match cfg.class_element {
        Some(m) => {
            let h = HiddenSubgroup::involution(group, m)?;
            Ok(group.class_of(h.m().expect("nontrivial")))
        }
        None => default_class(group),
    }
}

fn applicable(lemma: Lemma, kind: GroupKind) -> bool {
    match lemma {
        Lemma::Appendix => matches!(kind, GroupKind::Wreath(n) if n <= 3),
        Lemma::Integrity | Lemma::ExpectedDecomp | Lemma::Control => true,
        _ => kind.degree() >= 2,
    }
}

pub fn run(catalog: &Catalog, lemma: Lemma, cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.trials == 0 {
        return Err(Error::OutOfRange("trials must be at least 1".into()));
    }
    if cfg.k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let lemmas: Vec<Lemma> = match lemma {
        Lemma::All => Lemma::EACH
            .iter()
            .copied()
            .filter(|l| applicable(*l, catalog.kind()))
            .collect(),
        one => vec![one],
    };
    let class = if lemmas.iter().any(|l| needs_class(*l)) {
        Some(chosen_class(catalog, cfg)?)
    } else {
        None
    };
    let mut results = Vec::new();
    let mut notes = Vec::new();
    for l in lemmas {
        let c = class.as_ref();
        let out = match l {
            Lemma::Integrity => integrity(catalog)?,
            Lemma::Appendix => appendix(catalog)?,
            Lemma::Rank => rank(catalog, c.expect("class"))?,
            Lemma::Overlap => overlap(catalog, c.expect("class"), cfg)?,
            Lemma::SecondMoment => second_moment(catalog, c.expect("class"), cfg)?,
            Lemma::Expectation => multiregister(catalog, c.expect("class"), cfg, false)?,
            Lemma::Variance => multiregister(catalog, c.expect("class"), cfg, true)?,
            Lemma::ClaimAverage => claim_average(catalog, cfg)?,
            Lemma::ProjectorSum => projector_sum(catalog, c.expect("class"), cfg, &mut notes)?,
            Lemma::ExpectedDecomp => expected_decomp(catalog, cfg)?,
            Lemma::Control => control(catalog, cfg)?,
            Lemma::All => unreachable!(),
        };
        results.extend(out);
    }
    let pass = results.iter().all(|r| r.pass);
    Ok(VerifyReport {
        lemma: lemma.name().into(),
        group: catalog.kind().to_string(),
        k: cfg.k,
        seed: cfg.seed,
        trials: cfg.trials,
        class: class.map(|c| c.label.to_string()),
        results,
        notes,
        pass,
    })
}

fn needs_class(l: Lemma) -> bool {
    matches!(
        l,
        Lemma::Rank
            | Lemma::Overlap
            | Lemma::SecondMoment
            | Lemma::Expectation
            | Lemma::Variance
            | Lemma::ProjectorSum
    )
}

fn integrity(catalog: &Catalog) -> Result<Vec<OracleResult>> {
    let group = catalog.group();
    let kind = catalog.kind();
    let order = group.order();
    let sum_sq: usize = (0..catalog.len())
        .map(|i| catalog.dimension(i).pow(2))
        .sum();
    let mut out = vec![
        OracleResult::exact(
            "sum of squared dimensions",
            kind.to_string(),
            order as f64,
            sum_sq as f64,
            sum_sq == order,
        ),
        OracleResult::exact(
            "character orthogonality",
            kind.to_string(),
            1.0,
            1.0,
            catalog.table().check_orthogonality().is_ok(),
        ),
    ];
    let per_irrep: Vec<OracleResult> = (0..catalog.len())
        .into_par_iter()
        .map(|i| {
            let label = &catalog.labels()[i];
            let config = format!("{kind} {label}");
            let checked = catalog.verify_irrep(i);
            let irrep = catalog.irrep(i)?;
            let defect = if order <= EXHAUSTIVE_ORDER {
                irrep.rep.homomorphism_defect_exhaustive(group)
            } else {
                0.0
            };
            let unitary = irrep
                .rep
                .matrices()
                .iter()
                .all(|m| linalg::is_unitary(m, TOL));
            Ok([
                OracleResult::exact(
                    "irrep invariants",
                    config.clone(),
                    1.0,
                    1.0,
                    checked.is_ok(),
                ),
                OracleResult::equal("homomorphism defect", config.clone(), 0.0, defect, TOL),
                OracleResult::exact("unitarity", config, 1.0, 1.0, unitary),
            ])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    out.extend(per_irrep);
    Ok(out)
}

/// Integer class function from traces, with the rank guard on rounding.
fn integer_traces(catalog: &Catalog, rep: &MatrixRep) -> Result<Vec<i64>> {
    crate::rep::class_function(catalog, rep)
}

fn appendix(catalog: &Catalog) -> Result<Vec<OracleResult>> {
    let GroupKind::Wreath(n) = catalog.kind() else {
        return Err(Error::Unsupported(
            "the induction check runs on wreath groups".into(),
        ));
    };
    let group = catalog.group();
    let table = catalog.table();
    let parts = partitions(n)?;
    let mut out = Vec::new();
    for (ia, a) in parts.iter().enumerate() {
        for b in &parts[ia..] {
            let config = format!("Ind({a} ⊠ {b})");
            let rep = oracle::brute_induced_rep(n, a, b)?;
            out.push(OracleResult::exact(
                "induced homomorphism",
                config.clone(),
                1.0,
                1.0,
                rep.check_homomorphism(group, TOL).is_ok(),
            ));
            let chi = integer_traces(catalog, &rep)?;
            let expected: Vec<i64> = if a != b {
                let label = WreathIrrepLabel::pair(a.clone(), b.clone())?;
                table
                    .classes
                    .iter()
                    .map(|c| {
                        wreath_character(
                            &label,
                            group.element(c.representative).as_wreath().expect("wreath"),
                        )
                    })
                    .collect::<Result<_>>()?
            } else {
                let plus = WreathIrrepLabel::Diagonal(a.clone(), SwapSign::Plus);
                let minus = WreathIrrepLabel::Diagonal(a.clone(), SwapSign::Minus);
                table
                    .classes
                    .iter()
                    .map(|c| {
                        let w = group.element(c.representative).as_wreath().expect("wreath");
                        Ok(wreath_character(&plus, w)? + wreath_character(&minus, w)?)
                    })
                    .collect::<Result<_>>()?
            };
            let mismatches = chi.iter().zip(&expected).filter(|(x, y)| x != y).count();
            out.push(OracleResult::exact(
                "induced trace = character on every class",
                config.clone(),
                0.0,
                mismatches as f64,
                mismatches == 0,
            ));
            let norm = table.inner_product(&chi, &chi)?;
            let want = if a == b { 2 } else { 1 };
            out.push(OracleResult::exact(
                "⟨χ,χ⟩ = 1 + δ",
                config,
                want as f64,
                norm as f64,
                norm == want,
            ));
        }
    }
    let class = group.involution_class()?;
    for (i, label) in catalog.labels().iter().enumerate() {
        let d = catalog.dimension(i) as i64;
        let got = Ratio::new(table.value(i, class.representative), d);
        let want = match label {
            IrrepLabel::Wreath(WreathIrrepLabel::Pair(..)) => Ratio::from_integer(0),
            IrrepLabel::Wreath(WreathIrrepLabel::Diagonal(p, s)) => {
                Ratio::new(s.value(), p.dimension() as i64)
            }
            IrrepLabel::Sym(_) => unreachable!("wreath catalog"),
        };
        out.push(OracleResult::exact(
            "χ(M)/d",
            format!("{} {label}", catalog.kind()),
            ratio_f64(&want),
            ratio_f64(&got),
            got == want,
        ));
    }
    Ok(out)
}

fn ratio_f64(r: &Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn rank(catalog: &Catalog, class: &ConjugacyClass) -> Result<Vec<OracleResult>> {
    (0..catalog.len())
        .into_par_iter()
        .map(|i| {
            let irrep = catalog.irrep(i)?;
            let d = irrep.dim() as i64;
            let chi = catalog.table().value(i, class.representative);
            let want = Ratio::new(d + chi, 2 * d);
            let mut worst = want;
            let mut ok = true;
            for &m in &class.members {
                let h = HiddenSubgroup::involution(catalog.group(), m)?;
                let r = crate::sampling::subgroup_rank(&irrep, &h)? as i64;
                let got = Ratio::new(r, d);
                if got != want {
                    ok = false;
                    worst = got;
                }
            }
            Ok(OracleResult::exact(
                "rk Π_m / d = (1 + χ(M)/d)/2",
                format!(
                    "{} {} over |M| = {}",
                    catalog.kind(),
                    irrep.label,
                    class.size()
                ),
                ratio_f64(&want),
                ratio_f64(&worst),
                ok,
            ))
        })
        .collect()
}

/// Named test representations: every irrep, then reducible ones.
fn test_representations(
    catalog: &Catalog,
    max_dim: usize,
) -> Result<Vec<(String, MatrixRep, bool)>> {
    let irreps = catalog.all_irreps()?;
    let mut reps: Vec<(String, MatrixRep, bool)> = irreps
        .iter()
        .map(|r| (r.label.to_string(), r.rep.clone(), true))
        .collect();
    let last = irreps.len() - 1;
    if irreps.len() > 1 {
        let sum = irreps[0].rep.direct_sum(&irreps[last].rep)?;
        reps.push((
            format!("{} ⊕ {}", irreps[0].label, irreps[last].label),
            sum,
            false,
        ));
    }
    let big = (0..irreps.len())
        .max_by_key(|&i| (irreps[i].dim(), std::cmp::Reverse(i)))
        .unwrap_or(0);
    let doubled = irreps[big].rep.direct_sum(&irreps[big].rep)?;
    reps.push((format!("{0} ⊕ {0}", irreps[big].label), doubled, false));
    for i in 0..irreps.len() {
        for j in i..irreps.len() {
            let d = irreps[i].dim() * irreps[j].dim();
            if d > 1 && d <= max_dim {
                let t = irreps[i].rep.tensor(&irreps[j].rep)?;
                reps.push((
                    format!("{} ⊗ {}", irreps[i].label, irreps[j].label),
                    t,
                    false,
                ));
            }
        }
    }
    Ok(reps)
}

fn isotypic_projectors(
    catalog: &Catalog,
    rep: &MatrixRep,
) -> Result<Vec<crate::rep::IsotypicProjector>> {
    catalog
        .labels()
        .iter()
        .map(|l| isotypic_projector(catalog, rep, l, DEFAULT_PROJECTOR_CAP))
        .collect()
}

fn normalized(catalog: &Catalog, class: &ConjugacyClass) -> Vec<f64> {
    crate::sampling::normalized_characters(catalog, class)
}

/// Worst-case summary over trials of a complex comparison.
fn worst_equal(
    quantity: &str,
    config: String,
    pairs: impl IntoIterator<Item = (C64, C64)>,
) -> OracleResult {
    let mut worst = (linalg::ZERO, linalg::ZERO, -1.0);
    for (f, o) in pairs {
        let d = (f - o).norm();
        if d > worst.2 {
            worst = (f, o, d);
        }
    }
    let mut r = OracleResult::equal(quantity, config, worst.0.re, worst.1.re, TOL);
    r.diff = worst.2;
    r.pass = worst.2 <= TOL;
    r
}

fn overlap(
    catalog: &Catalog,
    class: &ConjugacyClass,
    cfg: &VerifyConfig,
) -> Result<Vec<OracleResult>> {
    let group = catalog.group();
    let chars = normalized(catalog, class);
    let reps = test_representations(catalog, REDUCIBLE_DIM)?;
    reps.par_iter()
        .enumerate()
        .map(|(ri, (name, rep, irreducible))| {
            let own = if *irreducible {
                Some(catalog.position(&name.parse()?)?)
            } else {
                None
            };
            let projectors = if own.is_none() {
                isotypic_projectors(catalog, rep)?
            } else {
                Vec::new()
            };
            let pairs = (0..cfg.trials)
                .map(|t| {
                    let b = haar_vector(
                        rep.dim(),
                        cfg.seed,
                        &[Lemma::Overlap.stream(), ri as u64, t as u64],
                    );
                    let formula = match own {
                        Some(i) => chars[i] * linalg::norm_sqr(&b),
                        None => linalg::ksum(
                            projectors
                                .iter()
                                .zip(&chars)
                                .map(|(p, c)| c * linalg::norm_sqr(&(&p.matrix * &b))),
                        ),
                    };
                    let brute = oracle::brute_expectation_overlap(group, rep, &b, class);
                    Ok((linalg::c(formula), brute))
                })
                .collect::<Result<Vec<_>>>()?;
            let what = if *irreducible {
                "irreducible"
            } else {
                "reducible"
            };
            Ok(worst_equal(
                "Exp_m ⟨b, m b⟩",
                format!("{} {name} ({what}, {} vectors)", catalog.kind(), cfg.trials),
                pairs,
            ))
        })
        .collect()
}

fn second_moment(
    catalog: &Catalog,
    class: &ConjugacyClass,
    cfg: &VerifyConfig,
) -> Result<Vec<OracleResult>> {
    let group = catalog.group();
    let chars = normalized(catalog, class);
    let mut reps = test_representations(catalog, 0)?;
    reps.retain(|(_, r, _)| r.dim() * r.dim() <= DEFAULT_PROJECTOR_CAP);
    reps.par_iter()
        .enumerate()
        .map(|(ri, (name, rep, _))| {
            let doubled = rep.tensor(&rep.dual())?;
            let projectors = isotypic_projectors(catalog, &doubled)?;
            let pairs = (0..cfg.trials).map(|t| {
                let b = haar_vector(
                    rep.dim(),
                    cfg.seed,
                    &[Lemma::SecondMoment.stream(), ri as u64, t as u64],
                );
                let bb = linalg::kron_vec_all([&b, &b.conjugate()]);
                let formula = linalg::ksum(
                    projectors
                        .iter()
                        .zip(&chars)
                        .map(|(p, c)| c * linalg::norm_sqr(&(&p.matrix * &bb))),
                );
                let brute = oracle::brute_second_moment(group, rep, &b, class);
                (linalg::c(formula), linalg::c(brute))
            });
            Ok(worst_equal(
                "Exp_m |⟨b, m b⟩|²",
                format!("{} {name} ({} vectors)", catalog.kind(), cfg.trials),
                pairs.collect::<Vec<_>>(),
            ))
        })
        .collect()
}

/// The `j`-th test tuple: all tuples in order, cycled, when enumerable;
/// otherwise drawn from the seeded stream.
fn test_tuples(catalog: &Catalog, cfg: &VerifyConfig, stream: u64) -> Result<Vec<RegisterTuple>> {
    let count = catalog
        .len()
        .checked_pow(cfg.k as u32)
        .unwrap_or(usize::MAX);
    let indices: Vec<Vec<usize>> = if count <= crate::bounds::EXACT_TUPLE_LIMIT {
        let all = all_index_tuples(catalog.len(), cfg.k);
        (0..cfg.trials)
            .map(|j| all[j % all.len()].clone())
            .collect()
    } else {
        (0..cfg.trials)
            .map(|j| {
                let mut rng = crate::rng::CounterRng::stream(cfg.seed, &[stream, 0, j as u64]);
                (0..cfg.k)
                    .map(|_| rng.below(catalog.len() as u64) as usize)
                    .collect()
            })
            .collect()
    };
    indices
        .iter()
        .map(|t| RegisterTuple::new(catalog, t, cfg.tensor_cap))
        .collect()
}

fn tuple_name(catalog: &Catalog, t: &RegisterTuple) -> String {
    format!("{} k={} {}", catalog.kind(), t.k(), t.labels().join(" ⊗ "))
}

fn multiregister(
    catalog: &Catalog,
    class: &ConjugacyClass,
    cfg: &VerifyConfig,
    variance: bool,
) -> Result<Vec<OracleResult>> {
    let lemma = if variance {
        Lemma::Variance
    } else {
        Lemma::Expectation
    };
    let tuples = test_tuples(catalog, cfg, lemma.stream())?;
    let per_trial: Vec<Vec<OracleResult>> = tuples
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let b = haar_vector(t.total_dim(), cfg.seed, &[lemma.stream(), 1, j as u64]);
            let config = format!("{} trial {j}", tuple_name(catalog, t));
            let inter = Interference::new(catalog, t, &b, class)?;
            let brute = oracle::brute_multiregister_moments(catalog.group(), t, &b, class);
            Ok(if variance {
                vec![
                    OracleResult::equal(
                        "exact variance identity",
                        config.clone(),
                        inter.exact_variance()?,
                        brute.variance,
                        TOL,
                    ),
                    OracleResult::bound(
                        "variance bound",
                        config,
                        inter.variance_bound()?,
                        brute.variance,
                        TOL,
                    ),
                ]
            } else {
                vec![OracleResult::equal(
                    "Exp_m ‖Π_m^{⊗k} b‖²",
                    config,
                    inter.expectation()?,
                    brute.mean,
                    TOL,
                )]
            })
        })
        .collect::<Result<_>>()?;
    Ok(per_trial.into_iter().flatten().collect())
}

fn claim_average(catalog: &Catalog, cfg: &VerifyConfig) -> Result<Vec<OracleResult>> {
    let reps = test_representations(catalog, REDUCIBLE_DIM)?;
    let per_rep: Vec<Vec<OracleResult>> = reps
        .par_iter()
        .enumerate()
        .map(|(ri, (name, rep, irreducible))| {
            let config = format!("{} {name} ({} vectors)", catalog.kind(), cfg.trials);
            let values = (0..cfg.trials)
                .map(|t| {
                    let b = haar_vector(
                        rep.dim(),
                        cfg.seed,
                        &[Lemma::ClaimAverage.stream(), ri as u64, t as u64],
                    );
                    claim_projector_average(catalog, rep, &b)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(if *irreducible {
                let inv = 1.0 / rep.dim() as f64;
                vec![
                    worst_equal(
                        "Exp_g |⟨b,gb⟩|² = 1/d",
                        config.clone(),
                        values.iter().map(|v| (linalg::c(inv), linalg::c(v.lhs))),
                    ),
                    worst_equal(
                        "Σ_σ ‖𝔍_σ b‖⁴/d_σ = 1/d",
                        config,
                        values.iter().map(|v| (linalg::c(inv), linalg::c(v.rhs))),
                    ),
                ]
            } else {
                let worst = values
                    .iter()
                    .min_by(|a, b| (a.rhs - a.lhs).total_cmp(&(b.rhs - b.lhs)))
                    .expect("trials ≥ 1");
                vec![OracleResult::bound(
                    "Exp_g |⟨b,gb⟩|² ≤ Σ_σ ‖𝔍_σ b‖⁴/d_σ",
                    config,
                    worst.rhs,
                    worst.lhs,
                    TOL,
                )]
            })
        })
        .collect::<Result<_>>()?;
    Ok(per_rep.into_iter().flatten().collect())
}

fn projector_sum(
    catalog: &Catalog,
    class: &ConjugacyClass,
    cfg: &VerifyConfig,
    notes: &mut Vec<String>,
) -> Result<Vec<OracleResult>> {
    let tuples = test_tuples(catalog, cfg, Lemma::ProjectorSum.stream())?;
    let per_trial: Vec<(Vec<OracleResult>, usize)> = tuples
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let b = haar_vector(
                t.total_dim(),
                cfg.seed,
                &[Lemma::ProjectorSum.stream(), 1, j as u64],
            );
            let inter = Interference::new(catalog, t, &b, class)?;
            let bounds = (0..catalog.len())
                .map(|s| inter.projector_sum(s))
                .collect::<Result<Vec<_>>>()?;
            let worst_all = bounds
                .iter()
                .min_by(|a, b| {
                    (a.rhs_with_empty - a.lhs_all).total_cmp(&(b.rhs_with_empty - b.lhs_all))
                })
                .expect("irreps");
            let worst_nonempty = bounds
                .iter()
                .min_by(|a, b| {
                    (a.rhs_stated - a.lhs_nonempty).total_cmp(&(b.rhs_stated - b.lhs_nonempty))
                })
                .expect("irreps");
            let literal_failures = bounds
                .iter()
                .filter(|p| !p.stated_pairing_holds(TOL))
                .count();
            let config = format!("{} trial {j}", tuple_name(catalog, t));
            Ok((
                vec![
                    OracleResult::bound(
                        "Σ_{all I₁,I₂} ≤ 2^k d_σ² Σ_{all I}",
                        format!("{config} σ={}", worst_all.sigma),
                        worst_all.rhs_with_empty,
                        worst_all.lhs_all,
                        TOL,
                    ),
                    OracleResult::bound(
                        "Σ_{I₁,I₂≠∅} ≤ 2^k d_σ² Σ_{I≠∅}",
                        format!("{config} σ={}", worst_nonempty.sigma),
                        worst_nonempty.rhs_stated,
                        worst_nonempty.lhs_nonempty,
                        TOL,
                    ),
                ],
                literal_failures,
            ))
        })
        .collect::<Result<_>>()?;
    let mismatched: usize = per_trial.iter().map(|p| p.1).sum();
    notes.push(format!(
        "projector-sum: the pairing of the all-subsets left side with the nonempty-subsets right side fails on {mismatched} of {} (trial, σ) instances",
        per_trial.len() * catalog.len()
    ));
    Ok(per_trial.into_iter().flat_map(|p| p.0).collect())
}

fn expected_decomp(catalog: &Catalog, cfg: &VerifyConfig) -> Result<Vec<OracleResult>> {
    let order = catalog.group().order() as i128;
    let mut out = Vec::new();
    for (s, label) in catalog.labels().iter().enumerate() {
        let d = catalog.dimension(s) as i128;
        let want = Ratio::new(d * d, order);
        for mask in 1u32..(1 << cfg.k) {
            let got = expected_isotypic_dimension(catalog, label, mask, cfg.k)?;
            out.push(OracleResult::exact(
                "Exp_ρ⃗ a_σ d_σ / d_ρ⃗ = d_σ²/|G|",
                format!("{} k={} σ={label} I={mask:#b}", catalog.kind(), cfg.k),
                *want.numer() as f64 / *want.denom() as f64,
                *got.numer() as f64 / *got.denom() as f64,
                got == want,
            ));
        }
    }
    Ok(out)
}

fn control(catalog: &Catalog, cfg: &VerifyConfig) -> Result<Vec<OracleResult>> {
    let kind = catalog.kind();
    let h = HiddenSubgroup::trivial(kind);
    let weak = weak_ratios(catalog, &h)?;
    let planch: Vec<Ratio<u64>> = crate::rep::plancherel(catalog)
        .into_iter()
        .map(|p| p.1)
        .collect();
    let mut out = vec![OracleResult::exact(
        "trivial H: weak distribution = Plancherel",
        kind.to_string(),
        1.0,
        1.0,
        weak == planch,
    )];
    let stream = Lemma::Control.stream();
    for (i, irrep) in catalog.all_irreps()?.iter().enumerate() {
        let d = irrep.dim();
        let bases = [
            ("standard", MeasurementBasis::standard(d)),
            (
                "haar",
                MeasurementBasis::haar(d, cfg.seed, &[stream, 0, i as u64]),
            ),
        ];
        for (name, basis) in &bases {
            let tv = exact_tv(&strong_dist(catalog, irrep, &h, basis)?, &uniform(d))?;
            out.push(OracleResult::equal(
                "trivial H: strong TV to uniform",
                format!("{kind} {} {name} basis", irrep.label),
                0.0,
                tv,
                CONTROL_TOL,
            ));
        }
    }
    let count = catalog
        .len()
        .checked_pow(cfg.k as u32)
        .unwrap_or(usize::MAX);
    let take = count.min(cfg.trials);
    let tuples = test_tuples(
        catalog,
        &VerifyConfig {
            trials: take,
            ..cfg.clone()
        },
        stream,
    )?;
    let per_tuple: Vec<Vec<OracleResult>> = tuples
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let factors: Vec<MeasurementBasis> = t
                .dims()
                .iter()
                .enumerate()
                .map(|(r, &d)| {
                    MeasurementBasis::haar(d, cfg.seed, &[stream, 2, j as u64, r as u64])
                })
                .collect();
            let bases = [
                ("standard", MeasurementBasis::standard(t.total_dim())),
                (
                    "haar",
                    MeasurementBasis::haar(t.total_dim(), cfg.seed, &[stream, 1, j as u64]),
                ),
                ("product", MeasurementBasis::product(&factors)),
            ];
            bases
                .iter()
                .map(|(name, basis)| {
                    let tv = exact_tv(
                        &multiregister_dist(catalog, t, &h, basis)?,
                        &uniform(t.total_dim()),
                    )?;
                    Ok(OracleResult::equal(
                        "trivial H: multiregister TV to uniform",
                        format!("{} {name} basis", tuple_name(catalog, t)),
                        0.0,
                        tv,
                        CONTROL_TOL,
                    ))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    out.extend(per_tuple.into_iter().flatten());
    Ok(out)
}
