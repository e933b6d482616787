//! Weighted distances between graph states and their error-corrupted images.
//!
//! States are held symbolically as real Pauli sums ([`pauli::PauliSum`]);
//! marginals are taken symbolically and handed to the dense numerics in
//! [`linalg`] only when a block distance is evaluated. The weighted distance
//! maximizes `sum_a d(rho_a, sigma_a) / |a|` over all set partitions of the
//! qubits ([`distance::weighted_distance`]).

pub mod channel;
pub mod distance;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod linalg;
pub mod partition;
pub mod pauli;

pub use channel::ErrorSpec;
pub use distance::{weighted_distance, DistanceReport, Metric};
pub use error::{Error, Result};
pub use graph::{cluster_state, Graph, Preset};
pub use linalg::DenseOperator;
pub use partition::Partition;
pub use pauli::{Letter, PauliString, PauliSum, Phase};
