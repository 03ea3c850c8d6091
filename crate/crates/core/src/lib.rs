//! Normalized alpha-centrality, path-based modularity and community
//! detection on weighted graphs.
//!
//! Every numeric routine is generic over [`Scalar`] (`f32` or `f64`); the
//! `*F64` / `*F32` aliases name the common instantiations.

// `!(x > 0)` rejects NaN as well; index loops mirror the matrix notation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod centrality;
pub mod community;
pub mod datasets;
pub mod error;
pub mod evaluation;
pub mod formats;
pub mod graph;
pub mod matrix;
pub mod scalar;

pub use centrality::{
    alpha_centrality_closed_form, alpha_centrality_iterative, alpha_centrality_scores,
    alpha_centrality_unnormalized, centrality_radius, degree_centrality, dominant_eigenpair,
    eigenvector_centrality, katz_scores, random_walk_proximity, CentralityField, ProximityConfig,
    ScoreAxis, ScoreVector, SpectralInfo,
};
pub use community::{
    connectivity_matrix, detect_communities, leading_eigenvector_bisect, modularity_of,
    modularity_value, null_model, CommunityConfig, Connectivity, ModularityMatrix, NullModel,
    Partition, Scaling,
};
pub use error::{Error, Result};
pub use evaluation::{
    ordering_equal, purity, rank_nodes, role_coordinates, sweep, GroundTruth, Role,
    RoleCoordinates, SweepRecord,
};
pub use formats::{load_edge_list, load_gml, to_edge_list, to_gml};
pub use graph::{DegreeSummary, Edge, Graph};
pub use matrix::DenseMatrix;
pub use scalar::Scalar;

pub type GraphF64 = Graph<f64>;
pub type GraphF32 = Graph<f32>;
pub type DenseMatrixF64 = DenseMatrix<f64>;
pub type DenseMatrixF32 = DenseMatrix<f32>;
pub type CentralityFieldF64 = CentralityField<f64>;
pub type CentralityFieldF32 = CentralityField<f32>;
pub type SpectralInfoF64 = SpectralInfo<f64>;
pub type SpectralInfoF32 = SpectralInfo<f32>;
pub type PartitionF64 = Partition<f64>;
pub type PartitionF32 = Partition<f32>;
