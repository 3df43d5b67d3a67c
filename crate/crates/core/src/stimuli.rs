//! Attractant and repellent sources, the depletable substrate, and timed
//! add/remove events.

use serde::{Deserialize, Serialize};

use crate::field::TrailField;
use crate::swarm::OccupancyGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKind {
    Attractant,
    Repellent,
}

impl SourceKind {
    pub fn sign(self) -> f64 {
        match self {
            SourceKind::Attractant => 1.0,
            SourceKind::Repellent => -1.0,
        }
    }
}

/// Cells a source projects into, relative to the cell containing its center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Footprint {
    Point,
    /// Cells whose integer offset from the center cell lies within `radius`.
    Disk { radius: f64 },
    /// A `width` x `height` block of cells around the center cell.
    Rect { width: usize, height: usize },
    /// Only the perimeter cells of the equivalent `Rect`.
    RectOutline { width: usize, height: usize },
}

impl Footprint {
    /// Footprint cells clipped to a `width` x `height` lattice.
    pub fn cells(&self, center: [f64; 2], width: usize, height: usize) -> Vec<(usize, usize)> {
        let cx = center[0].floor() as i64;
        let cy = center[1].floor() as i64;
        let mut out = Vec::new();
        let mut push = |x: i64, y: i64| {
            if x >= 0 && y >= 0 && (x as usize) < width && (y as usize) < height {
                out.push((x as usize, y as usize));
            }
        };
        match *self {
            Footprint::Point => push(cx, cy),
            Footprint::Disk { radius } => {
                let r = radius.floor() as i64;
                let r2 = radius * radius;
                for dy in -r..=r {
                    for dx in -r..=r {
                        if (dx * dx + dy * dy) as f64 <= r2 {
                            push(cx + dx, cy + dy);
                        }
                    }
                }
            }
            Footprint::Rect { width: w, height: h } | Footprint::RectOutline { width: w, height: h } => {
                let outline = matches!(self, Footprint::RectOutline { .. });
                let (w, h) = (w as i64, h as i64);
                let (x0, y0) = (cx - w / 2, cy - h / 2);
                for y in y0..y0 + h {
                    for x in x0..x0 + w {
                        let edge = x == x0 || y == y0 || x == x0 + w - 1 || y == y0 + h - 1;
                        if !outline || edge {
                            push(x, y);
                        }
                    }
                }
            }
        }
        out
    }

    /// Cells used to measure engulfment: point sources use the 3x3 block
    /// around their center, all other shapes use their own footprint.
    pub fn coverage_cells(&self, center: [f64; 2], width: usize, height: usize) -> Vec<(usize, usize)> {
        match self {
            Footprint::Point => Footprint::Rect { width: 3, height: 3 }.cells(center, width, height),
            _ => self.cells(center, width, height),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Suppression {
    /// Fraction of coverage cells that must be occupied to suppress.
    pub coverage_threshold: f64,
    /// Residual projection multiplier while suppressed.
    pub factor: f64,
}

impl Default for Suppression {
    fn default() -> Self {
        Self {
            coverage_threshold: 0.5,
            factor: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StimulusSource {
    pub id: String,
    pub kind: SourceKind,
    pub center: [f64; 2],
    pub footprint: Footprint,
    /// Concentration projected per footprint cell per step; the sign comes from `kind`.
    pub weight: f64,
    pub suppression: Suppression,
    #[serde(skip)]
    pub suppressed: bool,
    #[serde(skip)]
    pub coverage: f64,
}

impl StimulusSource {
    pub fn new(id: impl Into<String>, kind: SourceKind, center: [f64; 2], weight: f64) -> Self {
        Self {
            id: id.into(),
            kind,
            center,
            footprint: Footprint::Point,
            weight,
            suppression: Suppression::default(),
            suppressed: false,
            coverage: 0.0,
        }
    }

    pub fn with_footprint(mut self, footprint: Footprint) -> Self {
        self.footprint = footprint;
        self
    }

    pub fn with_suppression(mut self, coverage_threshold: f64, factor: f64) -> Self {
        self.suppression = Suppression {
            coverage_threshold,
            factor,
        };
        self
    }

    /// Signed amount added to each footprint cell this step.
    pub fn contribution(&self) -> f64 {
        let damping = if self.suppressed { self.suppression.factor } else { 1.0 };
        self.kind.sign() * self.weight * damping
    }
}

/// Where the substrate reservoir starts out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum SubstrateRegion {
    Full,
    Disk { center: [f64; 2], radius: f64 },
    Rect { center: [f64; 2], width: usize, height: usize },
}

/// Declarative substrate settings as they appear in a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubstrateSpec {
    pub enabled: bool,
    /// Initial reservoir per cell inside `region`.
    pub amount: f64,
    pub region: SubstrateRegion,
    pub projection_rate: f64,
    pub consumption: f64,
}

impl Default for SubstrateSpec {
    fn default() -> Self {
        Self {
            enabled: false,
            amount: 0.0,
            region: SubstrateRegion::Full,
            projection_rate: 0.001,
            consumption: 0.1,
        }
    }
}

/// Depletable background nutrient. Each step every cell projects a fixed
/// fraction of its remaining reservoir; occupied cells are consumed.
#[derive(Debug, Clone, PartialEq)]
pub struct Substrate {
    pub enabled: bool,
    pub amount: Vec<f64>,
    pub projection_rate: f64,
    pub consumption: f64,
}

impl Substrate {
    pub fn disabled(width: usize, height: usize) -> Self {
        Self {
            enabled: false,
            amount: vec![0.0; width * height],
            projection_rate: 0.0,
            consumption: 0.0,
        }
    }

    pub fn from_spec(spec: &SubstrateSpec, width: usize, height: usize) -> Self {
        if !spec.enabled {
            return Self::disabled(width, height);
        }
        let mut amount = vec![0.0; width * height];
        let cells = match spec.region {
            SubstrateRegion::Full => (0..height).flat_map(|y| (0..width).map(move |x| (x, y))).collect(),
            SubstrateRegion::Disk { center, radius } => Footprint::Disk { radius }.cells(center, width, height),
            SubstrateRegion::Rect {
                center,
                width: w,
                height: h,
            } => Footprint::Rect { width: w, height: h }.cells(center, width, height),
        };
        for (x, y) in cells {
            amount[y * width + x] = spec.amount;
        }
        Self {
            enabled: true,
            amount,
            projection_rate: spec.projection_rate,
            consumption: spec.consumption,
        }
    }

    pub fn total(&self) -> f64 {
        self.amount.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum EventAction {
    AddSource { source: StimulusSource },
    RemoveSource { id: String },
    SetWeight { id: String, weight: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduledEvent {
    pub step: u64,
    #[serde(flatten)]
    pub action: EventAction,
}

/// Events ordered by non-decreasing step.
pub type EventSchedule = Vec<ScheduledEvent>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EventError {
    #[error("event at step {step} references unknown source id \"{id}\"")]
    UnknownId { step: u64, id: String },
    #[error("event at step {step} adds source \"{id}\" which already exists")]
    DuplicateId { step: u64, id: String },
}

/// Applies every event scheduled for step `t`, in listed order.
pub fn apply_events(
    schedule: &[ScheduledEvent],
    t: u64,
    sources: &mut Vec<StimulusSource>,
) -> Result<(), EventError> {
    let start = schedule.partition_point(|e| e.step < t);
    for event in schedule[start..].iter().take_while(|e| e.step == t) {
        match &event.action {
            EventAction::AddSource { source } => {
                if sources.iter().any(|s| s.id == source.id) {
                    return Err(EventError::DuplicateId {
                        step: t,
                        id: source.id.clone(),
                    });
                }
                sources.push(source.clone());
            }
            EventAction::RemoveSource { id } => {
                let pos = find(sources, id, t)?;
                sources.remove(pos);
            }
            EventAction::SetWeight { id, weight } => {
                let pos = find(sources, id, t)?;
                sources[pos].weight = *weight;
            }
        }
    }
    Ok(())
}

fn find(sources: &[StimulusSource], id: &str, step: u64) -> Result<usize, EventError> {
    sources.iter().position(|s| s.id == id).ok_or_else(|| EventError::UnknownId {
        step,
        id: id.to_string(),
    })
}

/// Recomputes each source's coverage and suppression flag from the current
/// occupancy. A source with no occupied coverage cell is never suppressed.
pub fn update_suppression(sources: &mut [StimulusSource], occupancy: &OccupancyGrid) {
    let (w, h) = (occupancy.width(), occupancy.height());
    for s in sources.iter_mut() {
        let cells = s.footprint.coverage_cells(s.center, w, h);
        let occupied = cells.iter().filter(|&&(x, y)| occupancy.is_occupied(x, y)).count();
        s.coverage = if cells.is_empty() {
            0.0
        } else {
            occupied as f64 / cells.len() as f64
        };
        s.suppressed = occupied > 0 && s.coverage >= s.suppression.coverage_threshold;
    }
}

/// Adds every source's (possibly damped) contribution and the substrate
/// projection to `field`, then consumes substrate under occupied cells.
pub fn project(
    field: &mut TrailField,
    sources: &[StimulusSource],
    substrate: &mut Substrate,
    occupancy: &OccupancyGrid,
) {
    let (w, h) = (field.width(), field.height());
    for s in sources {
        let c = s.contribution();
        if c == 0.0 {
            continue;
        }
        for (x, y) in s.footprint.cells(s.center, w, h) {
            field.add(x, y, c);
        }
    }
    if substrate.enabled {
        for y in 0..h {
            for x in 0..w {
                let i = y * w + x;
                let a = substrate.amount[i];
                if a > 0.0 {
                    field.add(x, y, a * substrate.projection_rate);
                    if occupancy.is_occupied(x, y) {
                        substrate.amount[i] = a - a.min(substrate.consumption);
                    }
                }
            }
        }
    }
}
