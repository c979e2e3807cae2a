//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hsplab::bounds::{build_bad_set, theorem_pipeline, BadSetRule, PipelineConfig};
use hsplab::group::GroupKind;
use hsplab::rep::Catalog;
use hsplab::verify::{self, Lemma, VerifyConfig};

struct Outcome {
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Catalogs(HashMap<GroupKind, Catalog>);

impl Catalogs {
    fn get(&mut self, kind: GroupKind) -> &Catalog {
        self.0
            .entry(kind)
            .or_insert_with(|| Catalog::new(kind).expect("catalog"))
    }
}

/// Runs `lemma` on every (group, k) pair; trials fixed at 100.
fn lemma_sweep(
    cats: &mut Catalogs,
    lemma: Lemma,
    runs: &[(GroupKind, usize)],
    seed: u64,
) -> Outcome {
    let mut total = 0;
    let mut failed = Vec::new();
    for &(kind, k) in runs {
        let cfg = VerifyConfig {
            k,
            seed,
            trials: 100,
            ..VerifyConfig::default()
        };
        match verify::run(cats.get(kind), lemma, &cfg) {
            Ok(report) => {
                total += report.results.len();
                failed.extend(
                    report
                        .failures()
                        .map(|r| format!("{kind} k={k}: {} [{}]", r.quantity, r.configuration)),
                );
            }
            Err(e) => failed.push(format!("{kind} k={k}: {e}")),
        }
    }
    summarize(total, failed)
}

fn summarize(total: usize, failed: Vec<String>) -> Outcome {
    if failed.is_empty() {
        Outcome {
            pass: true,
            detail: format!("{total} comparisons"),
        }
    } else {
        Outcome {
            pass: false,
            detail: format!(
                "{}/{} failed; first: {}",
                failed.len(),
                total.max(failed.len()),
                failed[0]
            ),
        }
    }
}

fn within(mut o: Outcome, elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed > limit {
        o.pass = false;
        o.detail = format!("{}; over time limit {:?}", o.detail, limit);
    }
    o
}

fn sym(n: usize) -> GroupKind {
    GroupKind::Symmetric(n)
}

fn wreath(n: usize) -> GroupKind {
    GroupKind::Wreath(n)
}

fn integrity(cats: &mut Catalogs) -> Outcome {
    let runs: Vec<_> = (0..=5)
        .map(|n| (sym(n), 1))
        .chain((1..=3).map(|n| (wreath(n), 1)))
        .collect();
    lemma_sweep(cats, Lemma::Integrity, &runs, 0)
}

fn appendix(cats: &mut Catalogs) -> Outcome {
    lemma_sweep(cats, Lemma::Appendix, &[(wreath(2), 1), (wreath(3), 1)], 0)
}

fn rank(cats: &mut Catalogs) -> Outcome {
    lemma_sweep(cats, Lemma::Rank, &[(wreath(2), 1), (wreath(3), 1)], 0)
}

fn single_register(cats: &mut Catalogs) -> Outcome {
    let runs = [(sym(3), 1), (sym(4), 1), (wreath(2), 1), (wreath(3), 1)];
    let a = lemma_sweep(cats, Lemma::Overlap, &runs, 4);
    let b = lemma_sweep(cats, Lemma::SecondMoment, &runs, 4);
    merge(a, b)
}

fn multiregister(cats: &mut Catalogs) -> Outcome {
    let runs = [
        (sym(3), 1),
        (sym(3), 2),
        (sym(3), 3),
        (wreath(2), 1),
        (wreath(2), 2),
        (wreath(2), 3),
        (wreath(3), 1),
        (wreath(3), 2),
    ];
    let a = lemma_sweep(cats, Lemma::Expectation, &runs, 5);
    let b = lemma_sweep(cats, Lemma::Variance, &runs, 5);
    merge(a, b)
}

fn claims(cats: &mut Catalogs) -> Outcome {
    let runs = [
        (sym(3), 1),
        (sym(4), 1),
        (wreath(2), 1),
        (wreath(3), 1),
        (wreath(2), 2),
    ];
    let a = lemma_sweep(cats, Lemma::ClaimAverage, &runs, 6);
    let b = lemma_sweep(cats, Lemma::ProjectorSum, &runs, 6);
    merge(a, b)
}

fn expected_decomp(cats: &mut Catalogs) -> Outcome {
    let runs = [
        (sym(3), 1),
        (sym(3), 2),
        (sym(3), 3),
        (wreath(2), 1),
        (wreath(2), 2),
    ];
    lemma_sweep(cats, Lemma::ExpectedDecomp, &runs, 7)
}

fn bound_chain(cats: &mut Catalogs) -> Outcome {
    let mut total = 0;
    let mut failed = Vec::new();
    for n in [2, 3] {
        for k in [1, 2] {
            let mut cfg = PipelineConfig::new(n, k);
            cfg.seed = 8;
            match theorem_pipeline(cats.get(wreath(n)), &cfg) {
                Ok(report) => {
                    for name in ["total-variation", "exp-general", "tvd"] {
                        total += 1;
                        match report.checks.iter().find(|c| c.name == name) {
                            Some(c) if c.pass => {}
                            Some(c) => failed
                                .push(format!("n={n} k={k} {name}: {} > {}", c.value, c.bound)),
                            None => failed.push(format!("n={n} k={k}: no {name} check")),
                        }
                    }
                }
                Err(e) => failed.push(format!("n={n} k={k}: {e}")),
            }
        }
    }
    for n in [2, 3, 4] {
        total += 1;
        let cat = cats.get(wreath(n));
        let bad = cat
            .group()
            .involution_class()
            .and_then(|m| build_bad_set(cat, &m, BadSetRule::Cutoff));
        match bad {
            Ok(b) if b.cutoff_holds(n) => {}
            Ok(b) => failed.push(format!("n={n}: λ = {} above n^(-n/5)", b.lambda)),
            Err(e) => failed.push(format!("n={n}: {e}")),
        }
    }
    summarize(total, failed)
}

fn control(cats: &mut Catalogs) -> Outcome {
    let runs = [
        (sym(3), 1),
        (sym(3), 2),
        (wreath(2), 1),
        (wreath(2), 2),
        (wreath(3), 1),
    ];
    lemma_sweep(cats, Lemma::Control, &runs, 9)
}

fn cli_bytes(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hsplab"))
        .args(args)
        .args(["--no-cache", "--threads", threads])
        .output()
        .map_err(|e| e.to_string())?;
    match out.status.code() {
        Some(0) => Ok(out.stdout),
        code => Err(format!("{args:?} exited with {code:?}")),
    }
}

fn reproducibility() -> Outcome {
    let commands: [&[&str]; 4] = [
        &[
            "verify", "--lemma", "all", "--group", "wreath:2", "--k", "2", "--trials", "20",
            "--seed", "10",
        ],
        &[
            "verify", "--lemma", "variance", "--group", "wreath:3", "--k", "2", "--trials", "10",
            "--seed", "10",
        ],
        &[
            "bounds", "--n", "3", "--k", "2", "--trials", "20", "--seed", "10",
        ],
        &[
            "bounds", "--n", "4", "--k", "2", "--trials", "20", "--seed", "10",
        ],
    ];
    let mut failed = Vec::new();
    for args in commands {
        let runs: Result<Vec<_>, _> = ["1", "1", "4"].iter().map(|t| cli_bytes(args, t)).collect();
        match runs {
            Ok(r) if r[0] == r[1] && r[1] == r[2] => {}
            Ok(_) => failed.push(format!("{args:?} output differs")),
            Err(e) => failed.push(e),
        }
    }
    summarize(commands.len() * 3, failed)
}

fn merge(a: Outcome, b: Outcome) -> Outcome {
    Outcome {
        pass: a.pass && b.pass,
        detail: format!("{}; {}", a.detail, b.detail),
    }
}

fn main() -> ExitCode {
    let mut cats = Catalogs::default();
    type Criterion = (&'static str, Option<u64>, fn(&mut Catalogs) -> Outcome);
    let criteria: [Criterion; 10] = [
        ("representation integrity", Some(60), integrity),
        ("induced-representation equivalence", Some(120), appendix),
        ("rank identity", None, rank),
        (
            "single-register overlap and second moment",
            None,
            single_register,
        ),
        (
            "multiregister expectation and variance",
            Some(600),
            multiregister,
        ),
        ("claim average and projector sum", None, claims),
        ("expected isotypic decomposition", None, expected_decomp),
        ("bound chain and cutoff", None, bound_chain),
        ("trivial-subgroup control", None, control),
        ("byte-identical reruns", None, |_| reproducibility()),
    ];
    let mut all = true;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check(&mut cats);
        let elapsed = start.elapsed();
        if let Some(secs) = limit {
            outcome = within(outcome, elapsed, Duration::from_secs(*secs));
        }
        all &= outcome.pass;
        println!(
            "criterion {:>2} {} {name} ({:.1}s): {}",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
