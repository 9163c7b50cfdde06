//! Ground-truth generators: parametric laws with known cumulants and exact
//! densities, and a synthetic two-cluster triplet simulator. These feed the
//! validation pipeline — the expansion is judged against *exact* batch-mean
//! laws, not against itself.

mod families;
mod triplets;

pub use families::ReferenceDistribution;
pub use triplets::{simulate_triplets, simulate_triplets_seq, ClusterTripletConfig, DistanceKind};
