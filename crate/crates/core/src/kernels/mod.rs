//! Exact combinatorial kernels: shortest tours and walks through point sets
//! (Held–Karp) and minimal lattice Steiner forests (Dreyfus–Wagner on the
//! Hanan grid). No heuristics: oversize inputs fail with a capacity error.

pub mod steiner;
pub mod tour;

pub use steiner::{minimal_connecting_forest, ForestResult};
pub use tour::{shortest_closed_tour, shortest_walk, TourResult};

/// Size limits for the exponential kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct KernelCaps {
    /// Maximum number of distinct points in a Held–Karp instance.
    pub tour_points: usize,
    /// Maximum number of terminal groups in a Steiner instance.
    pub forest_groups: usize,
    /// Maximum number of Hanan-grid vertices.
    pub hanan_vertices: usize,
}

impl Default for KernelCaps {
    fn default() -> Self {
        KernelCaps {
            tour_points: 18,
            forest_groups: 10,
            hanan_vertices: 200_000,
        }
    }
}

/// Hard ceiling on `tour_points`; the DP table is `2^n · n` words.
pub const MAX_TOUR_POINTS: usize = 22;
