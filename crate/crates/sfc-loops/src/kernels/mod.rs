//! Data-mining kernels on top of the loop engine: ε-similarity join,
//! k-means and blocked matrix multiplication, each paired with a naive
//! reference oracle.

mod ego;
mod join;
mod kmeans;
mod matmul;
mod points;

pub use ego::{cell, cell_vector, ego_order, EgoOrder};
pub use join::{epsilon_join, epsilon_join_reported, naive_join, JoinParams, JoinResult};
pub use kmeans::{
    init_centroids, kmeans, kmeans_traced, reference_kmeans, KMeansModel, KMeansParams,
    KMeansTrace,
};
pub use matmul::{matmul, matmul_reported, max_relative_error, naive_matmul, Matrix, MatmulParams};
pub use points::{dist_sq, PointSet, MAX_POINT_DIM};
