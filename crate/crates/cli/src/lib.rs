//! Scenario runner, seeded property suite and ad-hoc queries for
//! Clifford-like parallelisms, shared by the `cliffpar` binary and its tests.

pub mod config;
pub mod query;
pub mod report;
pub mod scenario;
pub mod suite;

pub use config::{Config, ConfigError};
pub use query::{query, QueryError};
pub use report::{Report, Status};
pub use scenario::{run_example, Scenario, ScenarioId, UnknownScenario};
pub use suite::run_axiom_suite;
