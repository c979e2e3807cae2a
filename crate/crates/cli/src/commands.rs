use serde::Serialize;

use hsplab::bounds::{theorem_pipeline, BadSetRule, BoundReport, PipelineConfig};
use hsplab::format::sig12;
use hsplab::group::{Element, FiniteGroup, GroupKind};
use hsplab::rep::{Catalog, IrrepCache, IrrepLabel};
use hsplab::sampling::{
    all_index_tuples, multiregister_dist, multiregister_weak_dist, strong_dist, weak_dist,
    HiddenSubgroup, MeasurementBasis, RegisterTuple, SamplingDistribution,
};
use hsplab::verify::{self, Lemma, VerifyConfig, VerifyReport};
use hsplab::{Error, Result};

use crate::output;
use crate::{BasisKind, BoundsArgs, Common, Format, IrrepsArgs, SampleArgs, VerifyArgs};

/// Largest number of tuples listed by `sample` for k > 1.
const SAMPLE_TUPLE_LIMIT: usize = 10_000;

pub fn exit_code(e: &Error) -> u8 {
    if e.is_usage() {
        2
    } else if e.is_precondition() {
        3
    } else {
        1
    }
}

fn catalog(kind: GroupKind, common: &Common) -> Result<Catalog> {
    let cache = if common.no_cache {
        None
    } else {
        Some(match &common.cache_dir {
            Some(dir) => IrrepCache::new(dir.clone()),
            None => IrrepCache::from_env(),
        })
    };
    Catalog::with_cache(kind, cache)
}

fn with_pool<T: Send>(common: &Common, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    if common.threads == 0 {
        return Err(Error::OutOfRange("--threads must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    pool.install(f)
}

fn write(
    common: &Common,
    command: &str,
    body: &impl Serialize,
    csv: impl FnOnce() -> Result<String>,
) -> Result<()> {
    let text = match common.format {
        Format::Json => output::json(command, body)?,
        Format::Csv => csv()?,
    };
    output::emit(&text, common.out.as_deref())
}

#[derive(Serialize)]
struct IrrepEntry {
    label: String,
    dimension: usize,
    characters: Vec<i64>,
    verified: Option<bool>,
}

#[derive(Serialize)]
struct ClassEntry {
    label: String,
    size: usize,
    representative: String,
}

#[derive(Serialize)]
struct IrrepsReport {
    group: String,
    order: usize,
    classes: Vec<ClassEntry>,
    irreps: Vec<IrrepEntry>,
    sum_of_squares: usize,
    sum_of_squares_ok: bool,
    orthogonality_ok: bool,
    errors: Vec<String>,
    pass: bool,
}

pub fn irreps(a: IrrepsArgs) -> Result<u8> {
    let kind: GroupKind = a.group.parse()?;
    let common = a.common.clone();
    let report = with_pool(&common, || {
        let cat = catalog(kind, &common)?;
        let group = cat.group();
        let table = cat.table();
        let mut errors = Vec::new();
        let irreps: Vec<IrrepEntry> = (0..cat.len())
            .map(|i| {
                let verified = (!a.no_matrices).then(|| match cat.verify_irrep(i) {
                    Ok(()) => true,
                    Err(e) => {
                        errors.push(format!("{}: {e}", cat.labels()[i]));
                        false
                    }
                });
                IrrepEntry {
                    label: cat.labels()[i].to_string(),
                    dimension: cat.dimension(i),
                    characters: table.values[i].clone(),
                    verified,
                }
            })
            .collect();
        let sum_of_squares = irreps.iter().map(|r| r.dimension * r.dimension).sum();
        let orthogonality = table.check_orthogonality();
        if let Err(e) = &orthogonality {
            errors.push(e.to_string());
        }
        let sum_ok = sum_of_squares == group.order();
        let pass =
            sum_ok && orthogonality.is_ok() && irreps.iter().all(|r| r.verified != Some(false));
        Ok(IrrepsReport {
            group: kind.to_string(),
            order: group.order(),
            classes: table
                .classes
                .iter()
                .map(|c| ClassEntry {
                    label: c.label.to_string(),
                    size: c.size(),
                    representative: group.element(c.representative).to_string(),
                })
                .collect(),
            irreps,
            sum_of_squares,
            sum_of_squares_ok: sum_ok,
            orthogonality_ok: orthogonality.is_ok(),
            errors,
            pass,
        })
    })?;
    write(&a.common, "irreps", &report, || {
        let mut header = vec!["label".to_string(), "dimension".to_string()];
        header.extend(report.classes.iter().map(|c| format!("chi[{}]", c.label)));
        let rows: Vec<Vec<String>> = report
            .irreps
            .iter()
            .map(|r| {
                let mut row = vec![r.label.clone(), r.dimension.to_string()];
                row.extend(r.characters.iter().map(|v| v.to_string()));
                row
            })
            .collect();
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        output::csv(&header, &rows)
    })?;
    Ok(if report.pass { 0 } else { 1 })
}

fn parse_element(group: &FiniteGroup, text: &str) -> Result<usize> {
    group.index_of(&Element::parse_in(group.kind(), text)?)
}

fn hidden_subgroup(group: &FiniteGroup, trivial: bool, m: Option<&str>) -> Result<HiddenSubgroup> {
    if trivial {
        return Ok(HiddenSubgroup::trivial(group.kind()));
    }
    let idx = match m {
        Some(text) => parse_element(group, text)?,
        None => verify::default_class(group)?.members[0],
    };
    HiddenSubgroup::involution(group, idx)
}

fn build_basis(kind: BasisKind, dims: &[usize], seed: u64, path: &[u64]) -> MeasurementBasis {
    let total = dims.iter().product();
    match kind {
        BasisKind::Standard => MeasurementBasis::standard(total),
        BasisKind::Haar => MeasurementBasis::haar(total, seed, path),
        BasisKind::Product => {
            let factors: Vec<MeasurementBasis> = dims
                .iter()
                .enumerate()
                .map(|(r, &d)| {
                    let mut p = path.to_vec();
                    p.push(r as u64);
                    MeasurementBasis::haar(d, seed, &p)
                })
                .collect();
            MeasurementBasis::product(&factors)
        }
    }
}

#[derive(Serialize)]
struct SampleReport {
    group: String,
    k: usize,
    seed: u64,
    subgroup: String,
    basis: Option<String>,
    /// Tuples skipped because the subgroup projector has rank 0.
    unobservable: Vec<String>,
    distributions: Vec<SamplingDistribution>,
}

pub fn sample(a: SampleArgs) -> Result<u8> {
    let kind: GroupKind = a.group.parse()?;
    if a.k == 0 {
        return Err(Error::OutOfRange("--k must be at least 1".into()));
    }
    let common = a.common.clone();
    let seed = common.seed;
    let report = with_pool(&common, || {
        let cat = catalog(kind, &common)?;
        let h = hidden_subgroup(cat.group(), a.trivial, a.m.as_deref())?;
        let mut distributions = Vec::new();
        let mut unobservable = Vec::new();
        let mut basis_used = None;
        if a.strong {
            if a.irrep.len() != a.k {
                return Err(Error::OutOfRange(format!(
                    "--strong needs one --irrep per register ({} given, k = {})",
                    a.irrep.len(),
                    a.k
                )));
            }
            let labels: Vec<IrrepLabel> =
                a.irrep.iter().map(|s| s.parse()).collect::<Result<_>>()?;
            let tuple = RegisterTuple::from_labels(&cat, &labels, common.tensor_cap)?;
            let kind = a.basis.unwrap_or(BasisKind::Standard);
            basis_used = Some(kind);
            let basis = build_basis(kind, tuple.dims(), seed, &[0]);
            distributions.push(if a.k == 1 {
                strong_dist(&cat, &tuple.irreps()[0], &h, &basis)?
            } else {
                multiregister_dist(&cat, &tuple, &h, &basis)?
            });
        } else if a.k == 1 || a.weak {
            if !a.irrep.is_empty() {
                return Err(Error::OutOfRange(
                    "--irrep applies to strong sampling".into(),
                ));
            }
            distributions.push(if a.k == 1 {
                weak_dist(&cat, &h)?
            } else {
                multiregister_weak_dist(&cat, &h, a.k, SAMPLE_TUPLE_LIMIT)?
            });
        } else {
            distributions.push(multiregister_weak_dist(&cat, &h, a.k, SAMPLE_TUPLE_LIMIT)?);
            let kind = a.basis.unwrap_or(BasisKind::Haar);
            basis_used = Some(kind);
            for (id, t) in all_index_tuples(cat.len(), a.k).iter().enumerate() {
                let tuple = RegisterTuple::new(&cat, t, common.tensor_cap)?;
                let basis = build_basis(kind, tuple.dims(), seed, &[id as u64]);
                match multiregister_dist(&cat, &tuple, &h, &basis) {
                    Ok(d) => distributions.push(d),
                    Err(Error::ZeroRank { .. }) => unobservable.push(tuple.labels().join(" ⊗ ")),
                    Err(e) => return Err(e),
                }
            }
        }
        for d in &distributions {
            d.check()?;
        }
        Ok(SampleReport {
            group: kind.to_string(),
            k: a.k,
            seed,
            subgroup: h.describe(cat.group()),
            basis: basis_used.map(|b| format!("{b:?}").to_lowercase()),
            unobservable,
            distributions,
        })
    })?;
    write(&a.common, "sample", &report, || {
        let rows: Vec<Vec<String>> = report
            .distributions
            .iter()
            .flat_map(|d| {
                d.outcomes.iter().map(move |o| {
                    vec![
                        serde_json::to_value(d.context)
                            .ok()
                            .and_then(|v| v.as_str().map(String::from))
                            .unwrap_or_default(),
                        d.registers.join(" ⊗ "),
                        o.label.clone(),
                        sig12(o.probability),
                        o.exact.map(|r| r.to_string()).unwrap_or_default(),
                    ]
                })
            })
            .collect();
        output::csv(
            &["context", "registers", "outcome", "probability", "exact"],
            &rows,
        )
    })?;
    Ok(0)
}

pub fn verify(a: VerifyArgs) -> Result<u8> {
    let kind: GroupKind = a.group.parse()?;
    let lemma: Lemma = a.lemma.parse()?;
    let common = a.common.clone();
    let report: VerifyReport = with_pool(&common, || {
        let cat = catalog(kind, &common)?;
        let class_element =
            a.m.as_deref()
                .map(|m| parse_element(cat.group(), m))
                .transpose()?;
        let cfg = VerifyConfig {
            k: a.k,
            seed: common.seed,
            trials: a.trials,
            tensor_cap: common.tensor_cap,
            class_element,
        };
        verify::run(&cat, lemma, &cfg)
    })?;
    write(&a.common, "verify", &report, || {
        let rows: Vec<Vec<String>> = report
            .results
            .iter()
            .map(|r| {
                vec![
                    r.quantity.clone(),
                    r.configuration.clone(),
                    serde_json::to_value(r.comparison)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default(),
                    sig12(r.formula),
                    sig12(r.oracle),
                    sig12(r.diff),
                    r.pass.to_string(),
                ]
            })
            .collect();
        output::csv(
            &[
                "quantity",
                "configuration",
                "comparison",
                "formula",
                "oracle",
                "diff",
                "pass",
            ],
            &rows,
        )
    })?;
    for f in report.failures() {
        eprintln!(
            "FAIL {} [{}]: formula {} oracle {} diff {}",
            f.quantity,
            f.configuration,
            sig12(f.formula),
            sig12(f.oracle),
            sig12(f.diff)
        );
    }
    Ok(if report.pass { 0 } else { 1 })
}

pub fn bounds(a: BoundsArgs) -> Result<u8> {
    let rule = if a.lambda_all {
        BadSetRule::Empty
    } else if a.bad_all {
        BadSetRule::All
    } else if !a.bad.is_empty() {
        BadSetRule::Explicit(a.bad.iter().map(|s| s.parse()).collect::<Result<_>>()?)
    } else {
        BadSetRule::Cutoff
    };
    let common = a.common.clone();
    let report: BoundReport = with_pool(&common, || {
        let cat = catalog(GroupKind::Wreath(a.n), &common)?;
        let cfg = PipelineConfig {
            n: a.n,
            k: a.k,
            seed: common.seed,
            trials: a.trials,
            rule,
            tensor_cap: common.tensor_cap,
        };
        theorem_pipeline(&cat, &cfg)
    })?;
    write(&a.common, "bounds", &report, || {
        let opt = |x: Option<f64>| x.map(sig12).unwrap_or_default();
        let e = report.exact.as_ref();
        let row = vec![
            report.group.clone(),
            report.k.to_string(),
            report.bad_set.rule.clone(),
            sig12(report.bad_set.lambda),
            sig12(report.bad_set.plancherel_mass),
            sig12(report.delta),
            sig12(report.delta_appendix),
            sig12(report.weak_tv_bound),
            opt(report.exact_weak_tv),
            sig12(report.expectation_tv_bound),
            opt(e.map(|e| e.expected_tv_of_average)),
            opt(report.full_tvd_bound),
            opt(e.map(|e| e.expected_tv)),
            opt(e.map(|e| e.expected_variance)),
            format!("{:?}", report.mode).to_lowercase(),
            report.pass.to_string(),
        ];
        output::csv(
            &[
                "group",
                "k",
                "rule",
                "lambda",
                "plancherel_mass",
                "delta",
                "delta_appendix",
                "weak_tv_bound",
                "exact_weak_tv",
                "expectation_tv_bound",
                "exact_expected_tv_of_average",
                "full_tvd_bound",
                "exact_expected_tv",
                "exact_expected_variance",
                "mode",
                "pass",
            ],
            &[row],
        )
    })?;
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!(
            "FAIL {}: bound {} value {}",
            c.name,
            sig12(c.bound),
            sig12(c.value)
        );
    }
    Ok(if !report.pass {
        1
    } else if !report.full_tvd_defined {
        eprintln!(
            "full_tvd_bound undefined: λ = {}",
            report.bad_set.lambda_exact
        );
        3
    } else {
        0
    })
}
