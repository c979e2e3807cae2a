//! Coset-state sampling distributions and the multiregister interference
//! quantities.

mod basis;
mod distribution;
mod interference;
mod registers;
mod subgroup;

pub use basis::{haar_vector, MeasurementBasis, Provenance};
pub use distribution::{
    l1_distance, l1_to_uniform, multiregister_dist, multiregister_weak_dist, plancherel_dist,
    projected_weights, register_projectors, strong_dist, uniform, weak_dist, weak_ratios, Context,
    Outcome, SamplingDistribution,
};
pub use interference::{
    claim_projector_average, expected_isotypic_dimension, normalized_characters, ClaimAverage,
    Interference, ProjectorSumBound,
};
pub use registers::{all_index_tuples, RegisterTuple, DEFAULT_TENSOR_CAP};
pub use subgroup::{subgroup_projector, subgroup_rank, HiddenSubgroup};
