//! Turning simulation snapshots into checkable claims: masks, skeletons,
//! topology, exact MST and Voronoi references, and agreement metrics.

mod mask;
mod metrics;
mod oracle;
mod skeleton;
mod topology;

pub use mask::{occupancy_mask, BinaryMask};
pub use metrics::{
    boundary_agreement, choice_order, first_suppression, morphology_metrics, MetricsRecord, Morphology, SourceState,
};
pub use oracle::{mst_oracle, voronoi_oracle, weighted_voronoi_oracle, LabelGrid, OracleError, SpanningTree};
pub use skeleton::{skeleton_length, skeletonize};
pub use topology::{count_holes, label_components, topology, NetworkGraph, NetworkNode};

/// Closing radius applied to the occupancy mask before network analysis.
/// Agents pack at well under full density, so the raw mask is speckled;
/// closing fuses neighbouring agents into the filaments they form.
pub const NETWORK_CLOSING_RADIUS: usize = 2;

/// Occupancy mask closed with [`NETWORK_CLOSING_RADIUS`].
pub fn network_mask(occupancy: &crate::swarm::OccupancyGrid) -> BinaryMask {
    occupancy_mask(occupancy).close(NETWORK_CLOSING_RADIUS)
}

/// Cells whose field value reaches `level`. With `level` set to one agent
/// deposit this traces the trail laid along a filament, which stays
/// continuous where the agents themselves are several cells apart.
/// Unreached attractants show up as islands of their own.
pub fn trail_mask(field: &crate::field::TrailField, level: f64) -> BinaryMask {
    BinaryMask::from_fn(field.width(), field.height(), |x, y| field.get(x, y) >= level)
}
