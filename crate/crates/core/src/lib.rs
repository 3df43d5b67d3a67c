//! A deterministic lattice model of a virtual plasmodium: a population of
//! simple agents that sense, deposit and follow a diffusing concentration
//! field, coupled to attractant and repellent sources that the collective
//! in turn suppresses by engulfing them.
//!
//! The [`analysis`] module checks the emergent transport networks against
//! exact references (minimum spanning trees, classical and multiplicatively
//! weighted Voronoi diagrams).
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run --release --example spanning_tree
//! ```

pub mod analysis;
pub mod cli;
pub mod field;
pub mod render;
pub mod run;
pub mod scenario;
pub mod stimuli;
pub mod swarm;

pub use field::{DiffusionParams, TrailField};
pub use run::{Report, RunError, Simulation};
pub use scenario::{builtin_scenario, parse_scenario, Scenario, ScenarioError};
pub use stimuli::{Footprint, SourceKind, StimulusSource};
pub use swarm::{Agent, AgentParams, OccupancyGrid, World};
