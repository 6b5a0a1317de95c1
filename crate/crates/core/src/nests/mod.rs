//! Set partitions, nests of `[n]` and unlabeled weighted forests.

mod forest;
mod nest;
mod partition;

pub use forest::{forest_of_nest, labelings_count, ForestType, Node, Tree, WeightedForest};
pub use nest::{
    enumerate_nests, enumerate_nests_capped, enumerate_weight_vectors, nest_stats,
    nest_weight_poly, Nest, NestStats, Nests, WeightVector, WeightVectors, DEFAULT_NEST_CAP,
};
pub use partition::{
    block_elements, block_of, enumerate_partitions, enumerate_partitions_capped, full_mask,
    Partitions, DEFAULT_PARTITION_CAP,
};
