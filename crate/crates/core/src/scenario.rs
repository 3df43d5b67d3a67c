//! Declarative experiment descriptions.
//!
//! A scenario is a single JSON document. Parsing never stops at the first
//! problem: unknown keys, type mismatches and constraint violations are all
//! collected, each tagged with the path of the offending field.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::field::{Boundary, DiffusionParams};
use crate::stimuli::{
    EventAction, EventSchedule, Footprint, ScheduledEvent, SourceKind, StimulusSource, SubstrateRegion,
    SubstrateSpec, Suppression,
};
use crate::swarm::{AgentParams, GrowthParams, Inoculation, ShrinkParams};

mod builtin;

pub use builtin::{builtin_names, builtin_scenario, builtin_scenarios};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice {
    pub width: usize,
    pub height: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Population {
    pub inoculation: Inoculation,
    pub growth: GrowthParams,
    pub shrink: ShrinkParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outputs {
    /// Write field and agent frames every this many steps; 0 disables frames.
    pub frame_every: u64,
    pub metrics_every: u64,
}

impl Default for Outputs {
    fn default() -> Self {
        Self {
            frame_every: 0,
            metrics_every: 10,
        }
    }
}

/// Which exact geometric references the final report compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OracleTargets {
    /// Minimum spanning tree over attractant source centers.
    pub mst: bool,
    /// Classical and weighted Voronoi diagrams over repellent source centers.
    pub voronoi: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub lattice: Lattice,
    pub seed: u64,
    pub steps: u64,
    pub diffusion: DiffusionParams,
    pub agents: AgentParams,
    pub population: Population,
    pub substrate: SubstrateSpec,
    pub sources: Vec<StimulusSource>,
    pub events: EventSchedule,
    pub outputs: Outputs,
    pub oracles: OracleTargets,
}

impl Scenario {
    /// A scenario with every optional section at its default.
    pub fn new(width: usize, height: usize, seed: u64, steps: u64) -> Self {
        Self {
            name: String::new(),
            lattice: Lattice { width, height },
            seed,
            steps,
            diffusion: DiffusionParams::default(),
            agents: AgentParams::default(),
            population: Population {
                inoculation: default_inoculation(width, height),
                growth: GrowthParams::default(),
                shrink: ShrinkParams::default(),
            },
            substrate: SubstrateSpec::default(),
            sources: Vec::new(),
            events: Vec::new(),
            outputs: Outputs::default(),
            oracles: OracleTargets::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Ids of every source that can exist during the run: declared sources
    /// first, then ids added by events, in order of first appearance.
    pub fn all_source_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.sources.iter().map(|s| s.id.clone()).collect();
        for e in &self.events {
            if let EventAction::AddSource { source } = &e.action {
                if !ids.contains(&source.id) {
                    ids.push(source.id.clone());
                }
            }
        }
        ids
    }

    /// Checks every constraint; an empty list means the scenario is runnable.
    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Violations::default();
        let (w, h) = (self.lattice.width, self.lattice.height);
        if w == 0 {
            v.push("lattice.width", "must be > 0");
        }
        if h == 0 {
            v.push("lattice.height", "must be > 0");
        }
        if self.steps == 0 {
            v.push("steps", "must be > 0");
        }
        let d = &self.diffusion;
        if d.kernel < 3 || d.kernel % 2 == 0 {
            v.push("diffusion.kernel", "must be odd and >= 3");
        }
        if !(0.0..1.0).contains(&d.decay) {
            v.push("diffusion.decay", "must be in [0, 1)");
        }

        let a = &self.agents;
        for (key, val) in [("sensor_angle", a.sensor_angle), ("rotation_angle", a.rotation_angle)] {
            if !val.is_finite() {
                v.push(format!("agents.{key}"), "must be finite");
            }
        }
        if !(a.sensor_offset >= 0.0 && a.sensor_offset.is_finite()) {
            v.push("agents.sensor_offset", "must be >= 0");
        }
        if !(a.step_size > 0.0 && a.step_size.is_finite()) {
            v.push("agents.step_size", "must be > 0");
        }
        if !(a.deposit >= 0.0 && a.deposit.is_finite()) {
            v.push("agents.deposit", "must be >= 0");
        }

        let in_bounds = |c: [f64; 2]| c[0] >= 0.0 && c[1] >= 0.0 && c[0] < w as f64 && c[1] < h as f64;
        let inoc = &self.population.inoculation;
        match *inoc {
            Inoculation::Disk { center, radius, .. } => {
                if !in_bounds(center) {
                    v.push("population.inoculation.center", "out of bounds");
                }
                if !(radius >= 0.0) {
                    v.push("population.inoculation.radius", "must be >= 0");
                }
            }
            Inoculation::Rect {
                center,
                width: rw,
                height: rh,
                ..
            } => {
                if !in_bounds(center) {
                    v.push("population.inoculation.center", "out of bounds");
                }
                if rw == 0 || rh == 0 {
                    v.push("population.inoculation", "width and height must be > 0");
                }
            }
            Inoculation::Full { coverage } => {
                if !(0.0..=1.0).contains(&coverage) {
                    v.push("population.inoculation.coverage", "must be in [0, 1]");
                }
            }
        }
        if w > 0 && h > 0 {
            let capacity = inoc.region_cells(w, h).len();
            let count = inoc.count(w, h);
            if count > capacity {
                v.push(
                    "population.inoculation.count",
                    format!("{count} exceeds region capacity {capacity}"),
                );
            }
        }
        let g = &self.population.growth;
        check_window(&mut v, "population.growth.window", g.window);
        check_probability(&mut v, "population.growth.probability", g.probability);
        if g.frequency == 0 {
            v.push("population.growth.frequency", "must be >= 1");
        }
        if g.min_count > g.max_count {
            v.push("population.growth.min_count", "must not exceed max_count");
        }
        let s = &self.population.shrink;
        check_window(&mut v, "population.shrink.window", s.window);
        check_probability(&mut v, "population.shrink.probability", s.probability);
        if s.frequency == 0 {
            v.push("population.shrink.frequency", "must be >= 1");
        }

        let sub = &self.substrate;
        if !(sub.amount >= 0.0 && sub.amount.is_finite()) {
            v.push("substrate.amount", "must be >= 0");
        }
        check_probability(&mut v, "substrate.projection_rate", sub.projection_rate);
        if !(sub.consumption >= 0.0 && sub.consumption.is_finite()) {
            v.push("substrate.consumption", "must be >= 0");
        }
        match sub.region {
            SubstrateRegion::Full => {}
            SubstrateRegion::Disk { center, radius } => {
                if !in_bounds(center) {
                    v.push("substrate.region.center", "out of bounds");
                }
                if !(radius >= 0.0) {
                    v.push("substrate.region.radius", "must be >= 0");
                }
            }
            SubstrateRegion::Rect { center, .. } => {
                if !in_bounds(center) {
                    v.push("substrate.region.center", "out of bounds");
                }
            }
        }

        let mut live: HashSet<&str> = HashSet::new();
        for (i, src) in self.sources.iter().enumerate() {
            let path = format!("sources[{i}]");
            check_source(&mut v, &path, src, &in_bounds);
            if !live.insert(src.id.as_str()) {
                v.push(format!("{path}.id"), format!("duplicate id \"{}\"", src.id));
            }
        }
        let mut last_step = 0;
        for (i, e) in self.events.iter().enumerate() {
            let path = format!("events[{i}]");
            if e.step < last_step {
                v.push(format!("{path}.step"), "steps must be non-decreasing");
            }
            last_step = last_step.max(e.step);
            match &e.action {
                EventAction::AddSource { source } => {
                    check_source(&mut v, &format!("{path}.source"), source, &in_bounds);
                    if !live.insert(source.id.as_str()) {
                        v.push(format!("{path}.source.id"), format!("duplicate id \"{}\"", source.id));
                    }
                }
                EventAction::RemoveSource { id } => {
                    if !live.remove(id.as_str()) {
                        v.push(format!("{path}.id"), format!("references unknown source \"{id}\""));
                    }
                }
                EventAction::SetWeight { id, weight } => {
                    if !live.contains(id.as_str()) {
                        v.push(format!("{path}.id"), format!("references unknown source \"{id}\""));
                    }
                    if !(*weight >= 0.0 && weight.is_finite()) {
                        v.push(format!("{path}.weight"), "must be >= 0");
                    }
                }
            }
        }
        if self.outputs.metrics_every == 0 {
            v.push("outputs.metrics_every", "must be >= 1");
        }
        v.0
    }
}

fn default_inoculation(width: usize, height: usize) -> Inoculation {
    Inoculation::Disk {
        center: [width as f64 / 2.0, height as f64 / 2.0],
        radius: 5.0,
        count: 50,
    }
}

fn check_window(v: &mut Violations, path: &str, window: usize) {
    if window == 0 || window % 2 == 0 {
        v.push(path, "must be odd and >= 1");
    }
}

fn check_probability(v: &mut Violations, path: &str, p: f64) {
    if !(0.0..=1.0).contains(&p) {
        v.push(path, "must be in [0, 1]");
    }
}

fn check_source(v: &mut Violations, path: &str, s: &StimulusSource, in_bounds: &dyn Fn([f64; 2]) -> bool) {
    if s.id.is_empty() {
        v.push(format!("{path}.id"), "must not be empty");
    }
    if !in_bounds(s.center) {
        v.push(format!("{path}.center"), "out of bounds");
    }
    if !(s.weight >= 0.0 && s.weight.is_finite()) {
        v.push(format!("{path}.weight"), "must be >= 0");
    }
    check_probability(
        v,
        &format!("{path}.suppression.coverage_threshold"),
        s.suppression.coverage_threshold,
    );
    check_probability(v, &format!("{path}.suppression.factor"), s.suppression.factor);
    match s.footprint {
        Footprint::Point => {}
        Footprint::Disk { radius } => {
            if !(radius >= 0.0) {
                v.push(format!("{path}.footprint.radius"), "must be >= 0");
            }
        }
        Footprint::Rect { width, height } | Footprint::RectOutline { width, height } => {
            if width == 0 || height == 0 {
                v.push(format!("{path}.footprint"), "width and height must be > 0");
            }
        }
    }
}

/// One problem found while parsing or validating a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{} {}", self.path, self.message)
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("scenario is invalid:\n{}", list(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown builtin scenario \"{name}\"; valid names: {}", .valid.join(", "))]
    UnknownBuiltin { name: String, valid: Vec<String> },
}

fn list(violations: &[Violation]) -> String {
    violations.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n")
}

#[derive(Default)]
struct Violations(Vec<Violation>);

impl Violations {
    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(Violation {
            path: path.into(),
            message: message.into(),
        });
    }
}

/// Parses and validates a scenario document, reporting every problem found.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        ScenarioError::Invalid(vec![Violation {
            path: String::new(),
            message: format!("syntax error: {e}"),
        }])
    })?;
    let mut v = Violations::default();
    let scenario = read_scenario(&value, &mut v);
    match scenario {
        Some(s) if v.0.is_empty() => {
            let problems = s.validate();
            if problems.is_empty() {
                Ok(s)
            } else {
                Err(ScenarioError::Invalid(problems))
            }
        }
        Some(s) => {
            // Report constraint problems alongside the structural ones.
            let mut all = v.0;
            all.extend(s.validate());
            Err(ScenarioError::Invalid(all))
        }
        None => Err(ScenarioError::Invalid(v.0)),
    }
}

/// A JSON object being read, with the path used in error messages.
struct Obj<'a> {
    map: &'a Map<String, Value>,
    path: String,
}

impl<'a> Obj<'a> {
    fn new(value: &'a Value, path: &str, v: &mut Violations) -> Option<Self> {
        match value.as_object() {
            Some(map) => Some(Self {
                map,
                path: path.to_string(),
            }),
            None => {
                v.push(path, "must be an object");
                None
            }
        }
    }

    fn child(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn allow(&self, keys: &[&str], v: &mut Violations) {
        for k in self.map.keys() {
            if !keys.contains(&k.as_str()) {
                v.push(self.child(k), "is not a recognised key");
            }
        }
    }

    fn get(&self, key: &str) -> Option<&'a Value> {
        self.map.get(key)
    }

    fn required(&self, key: &str, v: &mut Violations) -> Option<&'a Value> {
        let got = self.get(key);
        if got.is_none() {
            v.push(self.child(key), "is required");
        }
        got
    }

    fn f64(&self, key: &str, default: f64, v: &mut Violations) -> f64 {
        match self.get(key) {
            None => default,
            Some(x) => x.as_f64().unwrap_or_else(|| {
                v.push(self.child(key), "must be a number");
                default
            }),
        }
    }

    fn u64(&self, key: &str, default: u64, v: &mut Violations) -> u64 {
        match self.get(key) {
            None => default,
            Some(x) => as_u64(x, &self.child(key), v).unwrap_or(default),
        }
    }

    fn usize(&self, key: &str, default: usize, v: &mut Violations) -> usize {
        self.u64(key, default as u64, v) as usize
    }

    fn bool(&self, key: &str, default: bool, v: &mut Violations) -> bool {
        match self.get(key) {
            None => default,
            Some(x) => x.as_bool().unwrap_or_else(|| {
                v.push(self.child(key), "must be a boolean");
                default
            }),
        }
    }

    fn string(&self, key: &str, v: &mut Violations) -> Option<String> {
        let x = self.get(key)?;
        match x.as_str() {
            Some(s) => Some(s.to_string()),
            None => {
                v.push(self.child(key), "must be a string");
                None
            }
        }
    }

    fn point(&self, key: &str, v: &mut Violations) -> Option<[f64; 2]> {
        let x = self.required(key, v)?;
        match x.as_array().map(|a| a.iter().map(Value::as_f64).collect::<Vec<_>>()) {
            Some(p) if p.len() == 2 && p.iter().all(Option::is_some) => Some([p[0].unwrap(), p[1].unwrap()]),
            _ => {
                v.push(self.child(key), "must be a [x, y] pair of numbers");
                None
            }
        }
    }
}

fn as_u64(x: &Value, path: &str, v: &mut Violations) -> Option<u64> {
    let got = x.as_u64();
    if got.is_none() {
        v.push(path, "must be a non-negative integer");
    }
    got
}

fn read_scenario(value: &Value, v: &mut Violations) -> Option<Scenario> {
    let root = Obj::new(value, "", v)?;
    root.allow(
        &[
            "name",
            "lattice",
            "seed",
            "steps",
            "diffusion",
            "agents",
            "population",
            "substrate",
            "sources",
            "events",
            "outputs",
            "oracles",
        ],
        v,
    );
    let lattice = root.required("lattice", v).and_then(|x| {
        let o = Obj::new(x, "lattice", v)?;
        o.allow(&["width", "height"], v);
        let width = as_u64(o.required("width", v)?, "lattice.width", v)? as usize;
        let height = as_u64(o.required("height", v)?, "lattice.height", v)? as usize;
        Some(Lattice { width, height })
    });
    let seed = root.required("seed", v).and_then(|x| as_u64(x, "seed", v));
    let steps = root.required("steps", v).and_then(|x| as_u64(x, "steps", v));
    let (Some(lattice), Some(seed), Some(steps)) = (lattice, seed, steps) else {
        return None;
    };
    let mut s = Scenario::new(lattice.width, lattice.height, seed, steps);
    s.name = root.string("name", v).unwrap_or_default();

    if let Some(o) = root.get("diffusion").and_then(|x| Obj::new(x, "diffusion", v)) {
        o.allow(&["kernel", "decay", "boundary"], v);
        let d = DiffusionParams::default();
        s.diffusion.kernel = o.usize("kernel", d.kernel, v);
        s.diffusion.decay = o.f64("decay", d.decay, v);
        if let Some(b) = o.string("boundary", v) {
            match b.as_str() {
                "absorbing" => s.diffusion.boundary = Boundary::Absorbing,
                other => v.push("diffusion.boundary", format!("unknown boundary \"{other}\"")),
            }
        }
    }
    if let Some(o) = root.get("agents").and_then(|x| Obj::new(x, "agents", v)) {
        o.allow(&["sensor_angle", "rotation_angle", "sensor_offset", "step_size", "deposit"], v);
        let d = AgentParams::default();
        s.agents = AgentParams {
            sensor_angle: o.f64("sensor_angle", d.sensor_angle, v),
            rotation_angle: o.f64("rotation_angle", d.rotation_angle, v),
            sensor_offset: o.f64("sensor_offset", d.sensor_offset, v),
            step_size: o.f64("step_size", d.step_size, v),
            deposit: o.f64("deposit", d.deposit, v),
        };
    }
    if let Some(o) = root.get("population").and_then(|x| Obj::new(x, "population", v)) {
        o.allow(&["inoculation", "growth", "shrink"], v);
        if let Some(i) = o.get("inoculation").and_then(|x| read_inoculation(x, v)) {
            s.population.inoculation = i;
        }
        if let Some(g) = o.get("growth").and_then(|x| Obj::new(x, "population.growth", v)) {
            g.allow(&["enabled", "window", "min_count", "max_count", "probability", "frequency"], v);
            let d = GrowthParams::default();
            s.population.growth = GrowthParams {
                enabled: g.bool("enabled", d.enabled, v),
                window: g.usize("window", d.window, v),
                min_count: g.usize("min_count", d.min_count, v),
                max_count: g.usize("max_count", d.max_count, v),
                probability: g.f64("probability", d.probability, v),
                frequency: g.u64("frequency", d.frequency, v),
            };
        }
        if let Some(g) = o.get("shrink").and_then(|x| Obj::new(x, "population.shrink", v)) {
            g.allow(&["enabled", "window", "overcrowd_count", "probability", "frequency"], v);
            let d = ShrinkParams::default();
            s.population.shrink = ShrinkParams {
                enabled: g.bool("enabled", d.enabled, v),
                window: g.usize("window", d.window, v),
                overcrowd_count: g.usize("overcrowd_count", d.overcrowd_count, v),
                probability: g.f64("probability", d.probability, v),
                frequency: g.u64("frequency", d.frequency, v),
            };
        }
    }
    if let Some(o) = root.get("substrate").and_then(|x| Obj::new(x, "substrate", v)) {
        o.allow(&["enabled", "amount", "region", "projection_rate", "consumption"], v);
        let d = SubstrateSpec::default();
        s.substrate = SubstrateSpec {
            enabled: o.bool("enabled", d.enabled, v),
            amount: o.f64("amount", d.amount, v),
            region: o
                .get("region")
                .and_then(|x| read_substrate_region(x, v))
                .unwrap_or(d.region),
            projection_rate: o.f64("projection_rate", d.projection_rate, v),
            consumption: o.f64("consumption", d.consumption, v),
        };
    }
    if let Some(x) = root.get("sources") {
        match x.as_array() {
            Some(items) => {
                s.sources = items
                    .iter()
                    .enumerate()
                    .filter_map(|(i, item)| read_source(item, &format!("sources[{i}]"), v))
                    .collect();
            }
            None => v.push("sources", "must be an array"),
        }
    }
    if let Some(x) = root.get("events") {
        match x.as_array() {
            Some(items) => {
                s.events = items
                    .iter()
                    .enumerate()
                    .filter_map(|(i, item)| read_event(item, &format!("events[{i}]"), v))
                    .collect();
            }
            None => v.push("events", "must be an array"),
        }
    }
    if let Some(o) = root.get("outputs").and_then(|x| Obj::new(x, "outputs", v)) {
        o.allow(&["frame_every", "metrics_every"], v);
        let d = Outputs::default();
        s.outputs = Outputs {
            frame_every: o.u64("frame_every", d.frame_every, v),
            metrics_every: o.u64("metrics_every", d.metrics_every, v),
        };
    }
    if let Some(o) = root.get("oracles").and_then(|x| Obj::new(x, "oracles", v)) {
        o.allow(&["mst", "voronoi"], v);
        s.oracles = OracleTargets {
            mst: o.bool("mst", false, v),
            voronoi: o.bool("voronoi", false, v),
        };
    }
    Some(s)
}

fn shape<'a>(o: &Obj<'a>, v: &mut Violations) -> Option<String> {
    let s = o.string("shape", v);
    if s.is_none() && o.get("shape").is_none() {
        v.push(o.child("shape"), "is required");
    }
    s
}

fn read_inoculation(x: &Value, v: &mut Violations) -> Option<Inoculation> {
    let o = Obj::new(x, "population.inoculation", v)?;
    match shape(&o, v)?.as_str() {
        "disk" => {
            o.allow(&["shape", "center", "radius", "count"], v);
            Some(Inoculation::Disk {
                center: o.point("center", v)?,
                radius: o.f64("radius", 0.0, v),
                count: as_u64(o.required("count", v)?, &o.child("count"), v)? as usize,
            })
        }
        "rect" => {
            o.allow(&["shape", "center", "width", "height", "count"], v);
            Some(Inoculation::Rect {
                center: o.point("center", v)?,
                width: o.usize("width", 1, v),
                height: o.usize("height", 1, v),
                count: as_u64(o.required("count", v)?, &o.child("count"), v)? as usize,
            })
        }
        "full" => {
            o.allow(&["shape", "coverage"], v);
            Some(Inoculation::Full {
                coverage: o.f64("coverage", 0.5, v),
            })
        }
        other => {
            v.push(o.child("shape"), format!("unknown inoculation shape \"{other}\""));
            None
        }
    }
}

fn read_substrate_region(x: &Value, v: &mut Violations) -> Option<SubstrateRegion> {
    let o = Obj::new(x, "substrate.region", v)?;
    match shape(&o, v)?.as_str() {
        "full" => {
            o.allow(&["shape"], v);
            Some(SubstrateRegion::Full)
        }
        "disk" => {
            o.allow(&["shape", "center", "radius"], v);
            Some(SubstrateRegion::Disk {
                center: o.point("center", v)?,
                radius: o.f64("radius", 0.0, v),
            })
        }
        "rect" => {
            o.allow(&["shape", "center", "width", "height"], v);
            Some(SubstrateRegion::Rect {
                center: o.point("center", v)?,
                width: o.usize("width", 1, v),
                height: o.usize("height", 1, v),
            })
        }
        other => {
            v.push(o.child("shape"), format!("unknown region shape \"{other}\""));
            None
        }
    }
}

fn read_footprint(x: &Value, path: &str, v: &mut Violations) -> Option<Footprint> {
    let o = Obj::new(x, path, v)?;
    let fp = match shape(&o, v)?.as_str() {
        "point" => {
            o.allow(&["shape"], v);
            Footprint::Point
        }
        "disk" => {
            o.allow(&["shape", "radius"], v);
            Footprint::Disk {
                radius: o.f64("radius", 0.0, v),
            }
        }
        kind @ ("rect" | "rect_outline") => {
            o.allow(&["shape", "width", "height"], v);
            let (width, height) = (o.usize("width", 1, v), o.usize("height", 1, v));
            if kind == "rect" {
                Footprint::Rect { width, height }
            } else {
                Footprint::RectOutline { width, height }
            }
        }
        other => {
            v.push(o.child("shape"), format!("unknown footprint shape \"{other}\""));
            return None;
        }
    };
    Some(fp)
}

fn read_source(x: &Value, path: &str, v: &mut Violations) -> Option<StimulusSource> {
    let o = Obj::new(x, path, v)?;
    o.allow(&["id", "kind", "center", "footprint", "weight", "suppression"], v);
    let id = o.string("id", v);
    if id.is_none() && o.get("id").is_none() {
        v.push(o.child("id"), "is required");
    }
    let kind = match o.string("kind", v).as_deref() {
        Some("attractant") => Some(SourceKind::Attractant),
        Some("repellent") => Some(SourceKind::Repellent),
        Some(other) => {
            v.push(o.child("kind"), format!("unknown kind \"{other}\""));
            None
        }
        None => {
            if o.get("kind").is_none() {
                v.push(o.child("kind"), "is required");
            }
            None
        }
    };
    let center = o.point("center", v);
    let footprint = match o.get("footprint") {
        Some(f) => read_footprint(f, &o.child("footprint"), v),
        None => Some(Footprint::Point),
    };
    let weight = o.f64("weight", 10.0, v);
    let mut suppression = Suppression::default();
    if let Some(so) = o.get("suppression").and_then(|x| Obj::new(x, &o.child("suppression"), v)) {
        so.allow(&["coverage_threshold", "factor"], v);
        suppression = Suppression {
            coverage_threshold: so.f64("coverage_threshold", suppression.coverage_threshold, v),
            factor: so.f64("factor", suppression.factor, v),
        };
    }
    Some(StimulusSource {
        id: id?,
        kind: kind?,
        center: center?,
        footprint: footprint?,
        weight,
        suppression,
        suppressed: false,
        coverage: 0.0,
    })
}

fn read_event(x: &Value, path: &str, v: &mut Violations) -> Option<ScheduledEvent> {
    let o = Obj::new(x, path, v)?;
    let step = as_u64(o.required("step", v)?, &o.child("step"), v);
    let action = o.string("action", v);
    if action.is_none() && o.get("action").is_none() {
        v.push(o.child("action"), "is required");
    }
    let id = |v: &mut Violations| {
        let got = o.string("id", v);
        if got.is_none() && o.get("id").is_none() {
            v.push(o.child("id"), "is required");
        }
        got
    };
    let action = match action?.as_str() {
        "add_source" => {
            o.allow(&["step", "action", "source"], v);
            let src = read_source(o.required("source", v)?, &o.child("source"), v)?;
            EventAction::AddSource { source: src }
        }
        "remove_source" => {
            o.allow(&["step", "action", "id"], v);
            EventAction::RemoveSource { id: id(v)? }
        }
        "set_weight" => {
            o.allow(&["step", "action", "id", "weight"], v);
            let weight = match o.required("weight", v) {
                Some(_) => o.f64("weight", 0.0, v),
                None => return None,
            };
            EventAction::SetWeight { id: id(v)?, weight }
        }
        other => {
            v.push(o.child("action"), format!("unknown action \"{other}\""));
            return None;
        }
    };
    Some(ScheduledEvent { step: step?, action })
}
