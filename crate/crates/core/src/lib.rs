//! Exact computation in free metabelian and free solvable groups through the
//! Magnus embedding into `Z^r ≀ B`.
//!
//! * [`word`], [`group`], [`solvable`]: free-group words, `Z^r`, and the
//!   recursive normal form for `S_{d,r}`.
//! * [`fox`]: group-ring arithmetic and projected Fox derivatives.
//! * [`flow`]: flow functions, support graphs, the word problem in `F/N'`.
//! * [`kernels`]: exact tours (Held–Karp) and lattice Steiner forests.
//! * [`wreath`]: the wreath product, the embedding and its length formulas.
//! * [`geodesic`]: geodesic length and a geodesic word in `F/F'`.
//! * [`oracle`], [`qi`]: BFS oracles and the quasi-isometry campaign.

pub mod error;
pub mod flow;
pub mod fox;
pub mod geodesic;
pub mod group;
pub mod kernels;
pub mod oracle;
pub mod par;
pub mod qi;
pub mod solvable;
pub mod word;
pub mod wreath;

pub use error::{Error, Result};
pub use flow::{divergence, equal_mod_nprime, flow_of_word, support_graph, translate_flow, EdgeKey, Flow, SupportGraph};
pub use fox::{fox_derivative, fox_jacobian, fundamental_identity_check, ring_translate, RingElement};
pub use geodesic::{build_delta_star, euler_geodesic_word, geodesic_length_fn, geodesic_report, DeltaStar};
pub use group::{BaseGroup, Config, Lattice, LatticePoint};
pub use kernels::KernelCaps;
pub use oracle::{bfs_geodesic_oracle_fn, bfs_geodesic_oracle_wreath, OracleLength};
pub use qi::{run_campaign, run_campaign_sequential, verify_qi, CampaignConfig, CampaignReport, QiRecord};
pub use solvable::{equal_in_solvable, solvable_from_word, SolvableElement, SolvableGroup};
pub use word::{Letter, Word};
pub use wreath::{magnus_embed, wreath_length_circuit, wreath_length_walk, WreathElement, WreathGroup};
