//! The agent population and the per-step pipeline.
//!
//! Agents sit on continuous coordinates but each one owns exactly one lattice
//! cell in the [`OccupancyGrid`]. Each step they sense the field with three
//! forward sensors, turn, try to move one step forward and deposit trail when
//! the move succeeds. Growth and shrinkage are local crowding tests run every
//! few steps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::field::{cell_of, DiffusionParams, TrailField};
use crate::scenario::Scenario;
use crate::stimuli::{self, EventError, EventSchedule, Footprint, StimulusSource, Substrate};

pub type AgentId = u64;

const EMPTY: AgentId = AgentId::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Agent {
    pub id: AgentId,
    pub x: f64,
    pub y: f64,
    /// Degrees in `[0, 360)`.
    pub heading: f64,
}

/// Exclusive cell ownership: at most one agent per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    width: usize,
    height: usize,
    cells: Vec<AgentId>,
    count: usize,
}

impl OccupancyGrid {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            cells: vec![EMPTY; width * height],
            count: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Number of occupied cells.
    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Option<AgentId> {
        match self.cells[y * self.width + x] {
            EMPTY => None,
            id => Some(id),
        }
    }

    #[inline]
    pub fn is_occupied(&self, x: usize, y: usize) -> bool {
        self.cells[y * self.width + x] != EMPTY
    }

    /// Panics if the cell is already taken.
    pub fn place(&mut self, x: usize, y: usize, id: AgentId) {
        let c = &mut self.cells[y * self.width + x];
        assert_eq!(*c, EMPTY, "cell ({x}, {y}) is already occupied");
        *c = id;
        self.count += 1;
    }

    pub fn clear(&mut self, x: usize, y: usize) {
        let c = &mut self.cells[y * self.width + x];
        if *c != EMPTY {
            *c = EMPTY;
            self.count -= 1;
        }
    }

    /// Occupied cells in the `window` x `window` square centred on `(x, y)`,
    /// clipped to the lattice.
    pub fn count_window(&self, x: usize, y: usize, window: usize) -> usize {
        let r = window / 2;
        let (x0, x1) = (x.saturating_sub(r), (x + r).min(self.width - 1));
        let (y0, y1) = (y.saturating_sub(r), (y + r).min(self.height - 1));
        (y0..=y1)
            .map(|yy| {
                self.cells[yy * self.width + x0..=yy * self.width + x1]
                    .iter()
                    .filter(|&&c| c != EMPTY)
                    .count()
            })
            .sum()
    }

    /// Checks the agent list and the grid describe the same placement.
    pub fn audit(&self, agents: &[Agent]) -> Result<(), String> {
        if agents.len() != self.count {
            return Err(format!("{} agents but {} occupied cells", agents.len(), self.count));
        }
        let occupied = self.cells.iter().filter(|&&c| c != EMPTY).count();
        if occupied != self.count {
            return Err(format!("count says {} but {occupied} cells are occupied", self.count));
        }
        for a in agents {
            let Some((cx, cy)) = cell_of(self.width, self.height, a.x, a.y) else {
                return Err(format!("agent {} at ({}, {}) is off the lattice", a.id, a.x, a.y));
            };
            if self.get(cx, cy) != Some(a.id) {
                return Err(format!("agent {} not registered at its cell ({cx}, {cy})", a.id));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentParams {
    pub sensor_angle: f64,
    pub rotation_angle: f64,
    pub sensor_offset: f64,
    pub step_size: f64,
    pub deposit: f64,
}

impl Default for AgentParams {
    fn default() -> Self {
        Self {
            sensor_angle: 45.0,
            rotation_angle: 45.0,
            sensor_offset: 9.0,
            step_size: 1.0,
            deposit: 5.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthParams {
    pub enabled: bool,
    pub window: usize,
    pub min_count: usize,
    pub max_count: usize,
    pub probability: f64,
    pub frequency: u64,
}

impl Default for GrowthParams {
    fn default() -> Self {
        Self {
            enabled: true,
            window: 9,
            min_count: 1,
            max_count: 10,
            probability: 0.1,
            frequency: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShrinkParams {
    pub enabled: bool,
    pub window: usize,
    pub overcrowd_count: usize,
    pub probability: f64,
    pub frequency: u64,
}

impl Default for ShrinkParams {
    fn default() -> Self {
        Self {
            enabled: true,
            window: 5,
            overcrowd_count: 10,
            probability: 0.25,
            frequency: 5,
        }
    }
}

/// Where the initial population is placed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Inoculation {
    Disk { center: [f64; 2], radius: f64, count: usize },
    Rect { center: [f64; 2], width: usize, height: usize, count: usize },
    /// Every lattice cell is a candidate; `coverage` of them are filled.
    Full { coverage: f64 },
}

impl Inoculation {
    pub fn region_cells(&self, width: usize, height: usize) -> Vec<(usize, usize)> {
        match *self {
            Inoculation::Disk { center, radius, .. } => Footprint::Disk { radius }.cells(center, width, height),
            Inoculation::Rect {
                center,
                width: w,
                height: h,
                ..
            } => Footprint::Rect { width: w, height: h }.cells(center, width, height),
            Inoculation::Full { .. } => (0..height).flat_map(|y| (0..width).map(move |x| (x, y))).collect(),
        }
    }

    pub fn count(&self, width: usize, height: usize) -> usize {
        match *self {
            Inoculation::Disk { count, .. } | Inoculation::Rect { count, .. } => count,
            Inoculation::Full { coverage } => (coverage * (width * height) as f64).round() as usize,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("inoculation asks for {requested} agents but its region holds only {capacity} cells")]
pub struct CapacityError {
    pub requested: usize,
    pub capacity: usize,
}

/// Places agents on distinct, uniformly chosen cells of the inoculation
/// region with uniform random headings. Ids start at 0.
pub fn inoculate(
    spec: &Inoculation,
    width: usize,
    height: usize,
    rng: &mut impl Rng,
) -> Result<(Vec<Agent>, OccupancyGrid), CapacityError> {
    let mut cells = spec.region_cells(width, height);
    let requested = spec.count(width, height);
    if requested > cells.len() {
        return Err(CapacityError {
            requested,
            capacity: cells.len(),
        });
    }
    let (chosen, _) = cells.partial_shuffle(rng, requested);
    let mut occupancy = OccupancyGrid::new(width, height);
    let mut agents = Vec::with_capacity(requested);
    for (i, &(x, y)) in chosen.iter().enumerate() {
        let id = i as AgentId;
        occupancy.place(x, y, id);
        agents.push(Agent {
            id,
            x: x as f64 + 0.5,
            y: y as f64 + 0.5,
            heading: rng.gen_range(0.0..360.0),
        });
    }
    Ok((agents, occupancy))
}

/// The three-sensor decision table. Returns the new heading.
pub fn orient(heading: f64, front: f64, left: f64, right: f64, rotation: f64, rng: &mut impl Rng) -> f64 {
    let turned = if front >= left && front >= right {
        heading
    } else if front < left && front < right {
        if rng.gen_bool(0.5) {
            heading + rotation
        } else {
            heading - rotation
        }
    } else if left < right {
        heading + rotation
    } else if right < left {
        heading - rotation
    } else {
        heading
    };
    turned.rem_euclid(360.0)
}

/// Samples front, left (`-SA`) and right (`+SA`) sensors and applies
/// [`orient`].
pub fn sense_and_orient(agent: &Agent, field: &TrailField, params: &AgentParams, rng: &mut impl Rng) -> f64 {
    let so = params.sensor_offset;
    let front = field.sample_sensor(agent.x, agent.y, agent.heading, 0.0, so);
    let left = field.sample_sensor(agent.x, agent.y, agent.heading, -params.sensor_angle, so);
    let right = field.sample_sensor(agent.x, agent.y, agent.heading, params.sensor_angle, so);
    orient(agent.heading, front, left, right, params.rotation_angle, rng)
}

/// Moves one step along the heading if the target cell is the agent's own or
/// empty; deposits trail on success. A blocked agent stays put and picks a
/// new random heading.
pub fn attempt_move(
    agent: &mut Agent,
    occupancy: &mut OccupancyGrid,
    field: &mut TrailField,
    params: &AgentParams,
    rng: &mut impl Rng,
) -> bool {
    let (sin, cos) = agent.heading.to_radians().sin_cos();
    let nx = agent.x + params.step_size * cos;
    let ny = agent.y + params.step_size * sin;
    let (w, h) = (occupancy.width(), occupancy.height());
    let own = cell_of(w, h, agent.x, agent.y).expect("agent is on the lattice");
    let target = cell_of(w, h, nx, ny);
    let free = match target {
        Some(c) if c == own => true,
        Some((tx, ty)) => !occupancy.is_occupied(tx, ty),
        None => false,
    };
    if !free {
        agent.heading = rng.gen_range(0.0..360.0);
        return false;
    }
    let (tx, ty) = target.unwrap();
    if (tx, ty) != own {
        occupancy.clear(own.0, own.1);
        occupancy.place(tx, ty, agent.id);
    }
    agent.x = nx;
    agent.y = ny;
    field.add(tx, ty, params.deposit);
    true
}

/// One growth pass over the agents present at entry, in random order.
/// Returns how many agents were spawned.
pub fn growth_test(
    agents: &mut Vec<Agent>,
    occupancy: &mut OccupancyGrid,
    params: &GrowthParams,
    next_id: &mut AgentId,
    rng: &mut impl Rng,
) -> usize {
    let (w, h) = (occupancy.width(), occupancy.height());
    let mut order: Vec<usize> = (0..agents.len()).collect();
    order.shuffle(rng);
    let mut spawned = 0;
    let mut empties = Vec::with_capacity(8);
    for i in order {
        let a = agents[i];
        let (cx, cy) = cell_of(w, h, a.x, a.y).expect("agent is on the lattice");
        let count = occupancy.count_window(cx, cy, params.window);
        if count < params.min_count || count > params.max_count {
            continue;
        }
        if rng.gen::<f64>() >= params.probability {
            continue;
        }
        empties.clear();
        for y in cy.saturating_sub(1)..=(cy + 1).min(h - 1) {
            for x in cx.saturating_sub(1)..=(cx + 1).min(w - 1) {
                if !occupancy.is_occupied(x, y) {
                    empties.push((x, y));
                }
            }
        }
        if empties.is_empty() {
            continue;
        }
        let (x, y) = empties[rng.gen_range(0..empties.len())];
        let id = *next_id;
        *next_id += 1;
        occupancy.place(x, y, id);
        agents.push(Agent {
            id,
            x: x as f64 + 0.5,
            y: y as f64 + 0.5,
            heading: rng.gen_range(0.0..360.0),
        });
        spawned += 1;
    }
    spawned
}

/// One shrink pass in random order; each deletion is visible to agents
/// tested after it. Returns how many agents were removed.
pub fn shrink_test(
    agents: &mut Vec<Agent>,
    occupancy: &mut OccupancyGrid,
    params: &ShrinkParams,
    rng: &mut impl Rng,
) -> usize {
    let (w, h) = (occupancy.width(), occupancy.height());
    let mut order: Vec<usize> = (0..agents.len()).collect();
    order.shuffle(rng);
    let mut dead = vec![false; agents.len()];
    let mut removed = 0;
    for i in order {
        let a = agents[i];
        let (cx, cy) = cell_of(w, h, a.x, a.y).expect("agent is on the lattice");
        if occupancy.count_window(cx, cy, params.window) <= params.overcrowd_count {
            continue;
        }
        if rng.gen::<f64>() < params.probability {
            occupancy.clear(cx, cy);
            dead[i] = true;
            removed += 1;
        }
    }
    if removed > 0 {
        let mut i = 0;
        agents.retain(|_| {
            i += 1;
            !dead[i - 1]
        });
    }
    removed
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StepError {
    #[error("step {step}: {source}")]
    Event {
        step: u64,
        #[source]
        source: EventError,
    },
}

/// Complete simulation state plus the single random stream that drives it.
#[derive(Debug, Clone)]
pub struct World {
    pub field: TrailField,
    pub agents: Vec<Agent>,
    pub occupancy: OccupancyGrid,
    pub sources: Vec<StimulusSource>,
    pub substrate: Substrate,
    pub diffusion: DiffusionParams,
    pub agent_params: AgentParams,
    pub growth: GrowthParams,
    pub shrink: ShrinkParams,
    schedule: EventSchedule,
    rng: ChaCha8Rng,
    /// Index of the next step to execute.
    step: u64,
    next_id: AgentId,
    order: Vec<usize>,
    back: TrailField,
    scratch: Vec<f64>,
}

impl World {
    /// Builds the initial world from a validated scenario.
    pub fn new(scenario: &Scenario) -> Result<Self, CapacityError> {
        let (w, h) = (scenario.lattice.width, scenario.lattice.height);
        let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
        let (agents, occupancy) = inoculate(&scenario.population.inoculation, w, h, &mut rng)?;
        Ok(Self {
            field: TrailField::new(w, h),
            next_id: agents.len() as AgentId,
            agents,
            occupancy,
            sources: scenario.sources.clone(),
            substrate: Substrate::from_spec(&scenario.substrate, w, h),
            diffusion: scenario.diffusion,
            agent_params: scenario.agents,
            growth: scenario.population.growth,
            shrink: scenario.population.shrink,
            schedule: scenario.events.clone(),
            rng,
            step: 0,
            order: Vec::new(),
            back: TrailField::new(w, h),
            scratch: Vec::new(),
        })
    }

    /// Number of steps executed so far.
    pub fn steps_done(&self) -> u64 {
        self.step
    }

    pub fn width(&self) -> usize {
        self.field.width()
    }

    pub fn height(&self) -> usize {
        self.field.height()
    }

    pub fn population(&self) -> usize {
        self.agents.len()
    }

    pub fn source(&self, id: &str) -> Option<&StimulusSource> {
        self.sources.iter().find(|s| s.id == id)
    }

    /// Executes one full step: events, suppression, projection, sensing,
    /// movement, growth, shrinkage, diffusion.
    pub fn step(&mut self) -> Result<(), StepError> {
        let t = self.step;
        stimuli::apply_events(&self.schedule, t, &mut self.sources)
            .map_err(|source| StepError::Event { step: t, source })?;
        stimuli::update_suppression(&mut self.sources, &self.occupancy);
        stimuli::project(&mut self.field, &self.sources, &mut self.substrate, &self.occupancy);

        self.order.clear();
        self.order.extend(0..self.agents.len());
        self.order.shuffle(&mut self.rng);
        for &i in &self.order {
            let a = &self.agents[i];
            let heading = sense_and_orient(a, &self.field, &self.agent_params, &mut self.rng);
            self.agents[i].heading = heading;
        }

        self.order.shuffle(&mut self.rng);
        for &i in &self.order {
            attempt_move(
                &mut self.agents[i],
                &mut self.occupancy,
                &mut self.field,
                &self.agent_params,
                &mut self.rng,
            );
        }

        if self.growth.enabled && t % self.growth.frequency == 0 {
            growth_test(
                &mut self.agents,
                &mut self.occupancy,
                &self.growth,
                &mut self.next_id,
                &mut self.rng,
            );
        }
        if self.shrink.enabled && t % self.shrink.frequency == 0 {
            shrink_test(&mut self.agents, &mut self.occupancy, &self.shrink, &mut self.rng);
        }

        self.field.diffuse_into(&self.diffusion, &mut self.back, &mut self.scratch);
        std::mem::swap(&mut self.field, &mut self.back);
        self.step += 1;
        Ok(())
    }

    /// Removes every agent, e.g. to probe how sources recover.
    pub fn clear_agents(&mut self) {
        for a in self.agents.drain(..) {
            let (x, y) = cell_of(self.occupancy.width(), self.occupancy.height(), a.x, a.y).unwrap();
            self.occupancy.clear(x, y);
        }
    }
}
