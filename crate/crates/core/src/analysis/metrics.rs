use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::mask::BinaryMask;
use super::oracle::LabelGrid;
use crate::swarm::World;

/// Coverage and suppression of one source at one recorded step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceState {
    pub id: String,
    pub coverage: f64,
    pub suppressed: bool,
    /// Distance from the population centroid to the source center.
    pub centroid_distance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub step: u64,
    pub population: usize,
    /// Occupied fraction of the lattice.
    pub coverage: f64,
    pub centroid: Option<[f64; 2]>,
    pub field_min: f64,
    pub field_max: f64,
    pub field_total: f64,
    pub sources: Vec<SourceState>,
}

impl MetricsRecord {
    pub fn capture(world: &World, step: u64) -> Self {
        let n = world.agents.len();
        let centroid = (n > 0).then(|| {
            let (sx, sy) = world.agents.iter().fold((0.0, 0.0), |(sx, sy), a| (sx + a.x, sy + a.y));
            [sx / n as f64, sy / n as f64]
        });
        let sources = world
            .sources
            .iter()
            .map(|s| SourceState {
                id: s.id.clone(),
                coverage: s.coverage,
                suppressed: s.suppressed,
                centroid_distance: centroid.map(|c| (c[0] - s.center[0]).hypot(c[1] - s.center[1])),
            })
            .collect();
        Self {
            step,
            population: n,
            coverage: n as f64 / (world.width() * world.height()) as f64,
            centroid,
            field_min: world.field.min(),
            field_max: world.field.max(),
            field_total: world.field.total(),
            sources,
        }
    }

    pub fn source(&self, id: &str) -> Option<&SourceState> {
        self.sources.iter().find(|s| s.id == id)
    }
}

/// Fraction of set mask cells, outside a `border_margin` frame, lying within
/// Chebyshev distance `tol` of a label boundary. An empty selection scores 1.
pub fn boundary_agreement(mask: &BinaryMask, labels: &LabelGrid, tol: usize, border_margin: usize) -> f64 {
    let (w, h) = (mask.width(), mask.height());
    assert_eq!((w, h), (labels.width, labels.height), "mask and labels must share dimensions");
    let boundary = labels.boundary();
    let boundary_mask = BinaryMask::from_fn(w, h, |x, y| boundary[y * w + x]);
    let near = boundary_mask.dilate(tol);
    let (mut total, mut hits) = (0usize, 0usize);
    for y in border_margin..h.saturating_sub(border_margin) {
        for x in border_margin..w.saturating_sub(border_margin) {
            if mask.get(x, y) {
                total += 1;
                if near.get(x, y) {
                    hits += 1;
                }
            }
        }
    }
    if total == 0 {
        1.0
    } else {
        hits as f64 / total as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Morphology {
    pub coverage: f64,
    /// `4π·area / perimeter²`; near 1 for a disk, small for thin dendrites.
    pub compactness: f64,
}

/// Perimeter counts set-cell edges facing a clear cell or the lattice edge.
pub fn morphology_metrics(mask: &BinaryMask) -> Morphology {
    let (w, h) = (mask.width() as i64, mask.height() as i64);
    let area = mask.count();
    let mut perimeter = 0usize;
    for y in 0..h {
        for x in 0..w {
            if mask.get_signed(x, y) {
                perimeter += [(1, 0), (-1, 0), (0, 1), (0, -1)]
                    .iter()
                    .filter(|(dx, dy)| !mask.get_signed(x + dx, y + dy))
                    .count();
            }
        }
    }
    let compactness = if perimeter == 0 {
        0.0
    } else {
        4.0 * std::f64::consts::PI * area as f64 / (perimeter * perimeter) as f64
    };
    Morphology {
        coverage: area as f64 / (w * h) as f64,
        compactness,
    }
}

/// Step at which each source first appeared suppressed, or `None`.
pub fn first_suppression(history: &[MetricsRecord], ids: &[String]) -> Vec<(String, Option<u64>)> {
    let mut first: HashMap<&str, u64> = HashMap::new();
    for rec in history {
        for s in &rec.sources {
            if s.suppressed {
                first.entry(s.id.as_str()).or_insert(rec.step);
            }
        }
    }
    ids.iter().map(|id| (id.clone(), first.get(id.as_str()).copied())).collect()
}

/// Source ids ordered by first suppression step; never-suppressed sources
/// come last, ties broken by id.
pub fn choice_order(history: &[MetricsRecord], ids: &[String]) -> Vec<String> {
    let mut firsts = first_suppression(history, ids);
    firsts.sort_by(|a, b| {
        let ka = a.1.unwrap_or(u64::MAX);
        let kb = b.1.unwrap_or(u64::MAX);
        ka.cmp(&kb).then_with(|| a.0.cmp(&b.0))
    });
    firsts.into_iter().map(|(id, _)| id).collect()
}
