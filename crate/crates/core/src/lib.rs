//! Distributed reassignment of communicating processes over tree-shaped
//! and hierarchical networks.
//!
//! Every node runs an agent that looks only at the processes it hosts and
//! migrates a single process or a min-cut-selected group one hop toward
//! wherever it talks most. On trees the converged placement minimizes
//! total communication cost; [`oracle`] checks that by brute force.
//!
//! Everything numeric is generic over [`Weight`]; the aliases below fix
//! the common choices.

pub mod app_model;
pub mod cost;
pub mod engine;
pub mod error;
pub mod migration;
pub mod mincut;
pub mod oracle;
pub mod scalar;
pub mod scenario;
pub mod topology;

pub use app_model::{AppGraph, ProcessId, TrafficAverager, TrafficMatrix};
pub use cost::{comm_cost, exec_cost, total_cost, Assignment, CostBreakdown};
pub use engine::{run, EngineConfig, RunOutcome, SchedulePolicy, Simulation, Termination};
pub use error::{Error, Result};
pub use migration::{InertiaConfig, Mechanism, MigrationProposal, MinCutGraph};
pub use scalar::Weight;
pub use scenario::{GenParams, Scenario, ScenarioFile};
pub use topology::{HierarchicalTopology, NodeId, Topology, TreeTopology};

use num_rational::Ratio;

/// Exact integer byte counts.
pub type ExactApp = AppGraph<i64>;
pub type ExactTraffic = TrafficMatrix<i64>;
pub type ExactProposal = MigrationProposal<i64>;
pub type ExactOutcome = RunOutcome<i64>;

pub type RationalApp = AppGraph<Ratio<i64>>;
pub type RationalTraffic = TrafficMatrix<Ratio<i64>>;
pub type RationalProposal = MigrationProposal<Ratio<i64>>;

pub type FloatApp = AppGraph<f64>;
pub type FloatTraffic = TrafficMatrix<f64>;
pub type FloatProposal = MigrationProposal<f64>;

pub type SingleApp = AppGraph<f32>;
