//! Driving a scenario to completion, persisting its outputs, and building
//! the final analysis report.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{
    self, boundary_agreement, first_suppression, morphology_metrics, mst_oracle, occupancy_mask, topology,
    voronoi_oracle, weighted_voronoi_oracle, BinaryMask, MetricsRecord, Morphology, NetworkGraph,
};
use crate::field::TrailField;
use crate::render::{self, FrameMapping};
use crate::scenario::{Scenario, ScenarioError};
use crate::stimuli::{SourceKind, StimulusSource};
use crate::swarm::{Agent, CapacityError, OccupancyGrid, StepError, World};

/// Chebyshev tolerance, in cells, for Voronoi boundary agreement.
pub const VORONOI_TOLERANCE: usize = 6;
/// Border frame excluded from Voronoi agreement, in cells.
pub const VORONOI_MARGIN: usize = 10;

pub const RESOLVED_SCENARIO_FILE: &str = "scenario.resolved";
pub const METRICS_FILE: &str = "metrics.csv";
pub const STATE_FILE: &str = "state.json";
pub const REPORT_FILE: &str = "report.json";

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Step(#[from] StepError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {message}")]
    Artifact { path: PathBuf, message: String },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> RunError + '_ {
    move |source| RunError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// A world plus the metrics history recorded on the scenario's schedule.
pub struct Simulation {
    scenario: Scenario,
    world: World,
    history: Vec<MetricsRecord>,
}

impl Simulation {
    /// Validates the scenario and builds its initial world.
    pub fn new(scenario: Scenario) -> Result<Self, RunError> {
        let problems = scenario.validate();
        if !problems.is_empty() {
            return Err(ScenarioError::Invalid(problems).into());
        }
        Self::new_unchecked(scenario)
    }

    /// Skips validation; runtime problems such as unknown event ids surface
    /// as [`StepError`]s instead.
    pub fn new_unchecked(scenario: Scenario) -> Result<Self, RunError> {
        let world = World::new(&scenario)?;
        Ok(Self {
            scenario,
            world,
            history: Vec::new(),
        })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn world(&self) -> &World {
        &self.world
    }

    pub fn world_mut(&mut self) -> &mut World {
        &mut self.world
    }

    pub fn history(&self) -> &[MetricsRecord] {
        &self.history
    }

    pub fn is_finished(&self) -> bool {
        self.world.steps_done() >= self.scenario.steps
    }

    /// Runs one step and records metrics when due. Returns the index of the
    /// step just executed.
    pub fn step(&mut self) -> Result<u64, RunError> {
        let t = self.world.steps_done();
        self.world.step()?;
        if t % self.scenario.outputs.metrics_every == 0 || t + 1 == self.scenario.steps {
            self.history.push(MetricsRecord::capture(&self.world, t));
        }
        Ok(t)
    }

    pub fn run(&mut self) -> Result<(), RunError> {
        self.run_with(|_, _| {})
    }

    /// Runs to completion, calling `observe` after every step.
    pub fn run_with(&mut self, mut observe: impl FnMut(&World, u64)) -> Result<(), RunError> {
        while !self.is_finished() {
            let t = self.step()?;
            observe(&self.world, t);
        }
        Ok(())
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot::of(&self.world)
    }

    pub fn report(&self) -> Report {
        Report::build(&self.scenario, &self.snapshot(), &self.history)
    }
}

/// Final world state in a portable form, enough to redo any analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub steps_done: u64,
    pub width: usize,
    pub height: usize,
    pub agents: Vec<Agent>,
    pub sources: Vec<StimulusSource>,
    pub field: TrailField,
    pub substrate: Vec<f64>,
}

impl Snapshot {
    pub fn of(world: &World) -> Self {
        Self {
            steps_done: world.steps_done(),
            width: world.width(),
            height: world.height(),
            agents: world.agents.clone(),
            sources: world.sources.clone(),
            field: world.field.clone(),
            substrate: world.substrate.amount.clone(),
        }
    }

    pub fn occupancy(&self) -> OccupancyGrid {
        let mut occ = OccupancyGrid::new(self.width, self.height);
        for a in &self.agents {
            occ.place(a.x.floor() as usize, a.y.floor() as usize, a.id);
        }
        occ
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisMode {
    Tree,
    Voronoi,
    Morphology,
    Choice,
}

impl std::str::FromStr for AnalysisMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tree" => Ok(Self::Tree),
            "voronoi" => Ok(Self::Voronoi),
            "morphology" => Ok(Self::Morphology),
            "choice" => Ok(Self::Choice),
            other => Err(format!("unknown mode \"{other}\" (expected tree, voronoi, morphology or choice)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeReport {
    pub network: NetworkGraph,
    pub mst_edges: Vec<(usize, usize)>,
    pub mst_length: f64,
    /// Skeleton length over MST length.
    pub length_ratio: f64,
    pub is_tree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoronoiReport {
    pub sites: Vec<String>,
    pub weights: Vec<f64>,
    pub tolerance: usize,
    pub margin: usize,
    pub classical_agreement: f64,
    pub weighted_agreement: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChoiceEntry {
    pub id: String,
    pub first_suppressed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub steps: u64,
    pub population: usize,
    pub network: NetworkGraph,
    pub morphology: Morphology,
    pub tree: Option<TreeReport>,
    pub voronoi: Option<VoronoiReport>,
    pub choice: Vec<ChoiceEntry>,
}

impl Report {
    pub fn build(scenario: &Scenario, snapshot: &Snapshot, history: &[MetricsRecord]) -> Self {
        let occ = snapshot.occupancy();
        let net_mask = analysis::network_mask(&occ);
        let trail = tree_mask(&snapshot.field, scenario);
        Self {
            scenario: scenario.name.clone(),
            seed: scenario.seed,
            steps: snapshot.steps_done,
            population: snapshot.agents.len(),
            network: topology(&net_mask, &snapshot.sources),
            morphology: morphology_metrics(&net_mask),
            tree: scenario.oracles.mst.then(|| tree_report(&trail, &snapshot.sources)).flatten(),
            voronoi: scenario
                .oracles
                .voronoi
                .then(|| voronoi_report(&occupancy_mask(&occ), &snapshot.sources))
                .flatten(),
            choice: choice_report(history, &scenario.all_source_ids()),
        }
    }
}

/// Mask used for spanning-tree checks: the trail at one agent deposit.
pub fn tree_mask(field: &TrailField, scenario: &Scenario) -> BinaryMask {
    analysis::trail_mask(field, scenario.agents.deposit.max(f64::EPSILON))
}

/// Topology of `mask` over the attractant sources plus the MST comparison.
pub fn tree_report(mask: &BinaryMask, sources: &[StimulusSource]) -> Option<TreeReport> {
    let nodes: Vec<StimulusSource> = sources
        .iter()
        .filter(|s| s.kind == SourceKind::Attractant)
        .cloned()
        .collect();
    let points: Vec<[f64; 2]> = nodes.iter().map(|s| s.center).collect();
    let mst = mst_oracle(&points).ok()?;
    let network = topology(mask, &nodes);
    let length_ratio = if mst.total_length > 0.0 {
        network.skeleton_length / mst.total_length
    } else {
        f64::NAN
    };
    Some(TreeReport {
        is_tree: network.is_tree(),
        network,
        mst_edges: mst.edges,
        mst_length: mst.total_length,
        length_ratio,
    })
}

/// Agreement of `mask` with Voronoi diagrams over the repellent sources.
pub fn voronoi_report(mask: &BinaryMask, sources: &[StimulusSource]) -> Option<VoronoiReport> {
    let sites: Vec<&StimulusSource> = sources.iter().filter(|s| s.kind == SourceKind::Repellent).collect();
    let points: Vec<[f64; 2]> = sites.iter().map(|s| s.center).collect();
    let weights: Vec<f64> = sites.iter().map(|s| s.weight).collect();
    let (w, h) = (mask.width(), mask.height());
    let classical = voronoi_oracle(&points, w, h).ok()?;
    let weighted = weighted_voronoi_oracle(&points, &weights, w, h).ok()?;
    Some(VoronoiReport {
        sites: sites.iter().map(|s| s.id.clone()).collect(),
        weights,
        tolerance: VORONOI_TOLERANCE,
        margin: VORONOI_MARGIN,
        classical_agreement: boundary_agreement(mask, &classical, VORONOI_TOLERANCE, VORONOI_MARGIN),
        weighted_agreement: boundary_agreement(mask, &weighted, VORONOI_TOLERANCE, VORONOI_MARGIN),
    })
}

pub fn choice_report(history: &[MetricsRecord], ids: &[String]) -> Vec<ChoiceEntry> {
    let order = analysis::choice_order(history, ids);
    let firsts = first_suppression(history, ids);
    order
        .into_iter()
        .map(|id| {
            let first_suppressed = firsts.iter().find(|(i, _)| *i == id).and_then(|(_, s)| *s);
            ChoiceEntry { id, first_suppressed }
        })
        .collect()
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> Result<(), RunError> {
    fs::write(path, bytes).map_err(io_err(path))
}

/// Runs `scenario` and writes the resolved scenario, frames, metrics CSV,
/// final snapshot and report into `out`.
pub fn run_to_dir(scenario: Scenario, out: &Path, mut progress: impl FnMut(u64, u64)) -> Result<Report, RunError> {
    let mut sim = Simulation::new(scenario)?;
    fs::create_dir_all(out).map_err(io_err(out))?;
    write(&out.join(RESOLVED_SCENARIO_FILE), sim.scenario().to_json())?;
    let frame_every = sim.scenario().outputs.frame_every;
    let total = sim.scenario().steps;
    let mapping = FrameMapping::default();
    while !sim.is_finished() {
        let t = sim.step()?;
        if frame_every > 0 && (t % frame_every == 0 || t + 1 == total) {
            let w = sim.world();
            write(
                &out.join(render::frame_name("field", t)),
                render::encode_field_frame(&w.field, &mapping),
            )?;
            write(
                &out.join(render::frame_name("agents", t)),
                render::encode_agent_frame(&w.occupancy),
            )?;
        }
        progress(t, total);
    }
    let ids = sim.scenario().all_source_ids();
    write(&out.join(METRICS_FILE), render::metrics_csv(sim.history(), &ids))?;
    let snapshot = sim.snapshot();
    write(
        &out.join(STATE_FILE),
        serde_json::to_string(&snapshot).expect("snapshot serializes"),
    )?;
    let report = Report::build(sim.scenario(), &snapshot, sim.history());
    write(
        &out.join(REPORT_FILE),
        serde_json::to_string_pretty(&report).expect("report serializes"),
    )?;
    Ok(report)
}

/// Everything `analyze` needs, read back from a run directory.
pub struct RunArtifacts {
    pub scenario: Scenario,
    pub snapshot: Snapshot,
    pub history: Vec<MetricsRecord>,
}

fn read_text(path: &Path) -> Result<String, RunError> {
    fs::read_to_string(path).map_err(io_err(path))
}

pub fn load_run(dir: &Path) -> Result<RunArtifacts, RunError> {
    let scenario_path = dir.join(RESOLVED_SCENARIO_FILE);
    let scenario = crate::scenario::parse_scenario(&read_text(&scenario_path)?)?;
    let state_path = dir.join(STATE_FILE);
    let snapshot: Snapshot = serde_json::from_str(&read_text(&state_path)?).map_err(|e| RunError::Artifact {
        path: state_path.clone(),
        message: e.to_string(),
    })?;
    let metrics_path = dir.join(METRICS_FILE);
    let history = parse_metrics_csv(&read_text(&metrics_path)?).map_err(|message| RunError::Artifact {
        path: metrics_path.clone(),
        message,
    })?;
    Ok(RunArtifacts {
        scenario,
        snapshot,
        history,
    })
}

/// Reads back the CSV written by [`render::metrics_csv`]. Per-source
/// centroid distances are not stored and come back as `None`.
pub fn parse_metrics_csv(text: &str) -> Result<Vec<MetricsRecord>, String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or("empty metrics file")?.split(',').collect();
    if header.len() < 8 || (header.len() - 8) % 2 != 0 {
        return Err("unexpected metrics header".into());
    }
    let ids: Vec<String> = header[8..]
        .chunks(2)
        .map(|c| c[0].trim_end_matches("_coverage").to_string())
        .collect();
    let num = |s: &str| s.parse::<f64>().map_err(|e| format!("bad number \"{s}\": {e}"));
    let mut out = Vec::new();
    for (n, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != header.len() {
            return Err(format!("row {} has {} columns, expected {}", n + 1, cols.len(), header.len()));
        }
        let centroid = if cols[3].is_empty() {
            None
        } else {
            Some([num(cols[3])?, num(cols[4])?])
        };
        let mut sources = Vec::new();
        for (k, id) in ids.iter().enumerate() {
            let (c, s) = (cols[8 + 2 * k], cols[9 + 2 * k]);
            if c.is_empty() {
                continue;
            }
            sources.push(analysis::SourceState {
                id: id.clone(),
                coverage: num(c)?,
                suppressed: s == "1",
                centroid_distance: None,
            });
        }
        out.push(MetricsRecord {
            step: cols[0].parse().map_err(|e| format!("bad step: {e}"))?,
            population: cols[1].parse().map_err(|e| format!("bad population: {e}"))?,
            coverage: num(cols[2])?,
            centroid,
            field_min: num(cols[5])?,
            field_max: num(cols[6])?,
            field_total: num(cols[7])?,
            sources,
        });
    }
    Ok(out)
}

/// Recomputes one report section from stored artifacts.
pub fn analyze(artifacts: &RunArtifacts, mode: AnalysisMode) -> serde_json::Value {
    let occ = artifacts.snapshot.occupancy();
    let net_mask = analysis::network_mask(&occ);
    let trail = tree_mask(&artifacts.snapshot.field, &artifacts.scenario);
    let sources = &artifacts.snapshot.sources;
    match mode {
        AnalysisMode::Tree => serde_json::to_value(tree_report(&trail, sources)),
        AnalysisMode::Voronoi => serde_json::to_value(voronoi_report(&occupancy_mask(&occ), sources)),
        AnalysisMode::Morphology => serde_json::to_value(morphology_metrics(&net_mask)),
        AnalysisMode::Choice => serde_json::to_value(choice_report(
            &artifacts.history,
            &artifacts.scenario.all_source_ids(),
        )),
    }
    .expect("report serializes")
}
