//! Bad sets, the scalar bounds of the distinguishability argument, and their
//! exactly enumerated counterparts.

mod badset;
mod pipeline;

pub use badset::{below_cutoff, build_bad_set, BadSet, BadSetRule, BadSetSummary};
pub use pipeline::{
    delta, delta_appendix, exact_weak_tv, expectation_tv_bound, full_tvd_bound, sum_dimensions,
    theorem_pipeline, weak_tv_bound, weighted_quantile, BoundCheck, BoundReport, ExactCounterparts,
    Mode, PipelineConfig, SampledEstimates, TvSummary, EXACT_MAX_DEGREE, EXACT_TUPLE_LIMIT,
};
