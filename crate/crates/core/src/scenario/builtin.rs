//! Reproduction scenarios, one per experiment family.

use super::{OracleTargets, Scenario, ScenarioError};
use crate::stimuli::{EventAction, Footprint, ScheduledEvent, SourceKind, StimulusSource, SubstrateRegion, SubstrateSpec};
use crate::swarm::Inoculation;

type Builder = fn() -> Scenario;

const BUILTINS: &[(&str, Builder)] = &[
    ("taxis", taxis),
    ("repellent_avoidance", repellent_avoidance),
    ("fig1_dendritic", fig1_dendritic),
    ("fig2_radial", fig2_radial),
    ("fig3_spanning_tree", fig3_spanning_tree),
    ("fig4_voronoi", fig4_voronoi),
    ("fig4_weighted_voronoi", fig4_weighted_voronoi),
    ("fig5_hybrid_high", fig5_hybrid_high),
    ("fig5_hybrid_medium", fig5_hybrid_medium),
    ("fig5_hybrid_low", fig5_hybrid_low),
    ("choice_distance", choice_distance),
    ("choice_size", choice_size),
    ("choice_weight", choice_weight),
    ("dynamic_removal", dynamic_removal),
];

pub fn builtin_names() -> Vec<String> {
    BUILTINS.iter().map(|(n, _)| n.to_string()).collect()
}

pub fn builtin_scenarios() -> Vec<Scenario> {
    BUILTINS.iter().map(|(_, b)| b()).collect()
}

pub fn builtin_scenario(name: &str) -> Result<Scenario, ScenarioError> {
    BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, b)| b())
        .ok_or_else(|| ScenarioError::UnknownBuiltin {
            name: name.to_string(),
            valid: builtin_names(),
        })
}

fn base(name: &str, width: usize, height: usize, steps: u64) -> Scenario {
    let mut s = Scenario::new(width, height, 1, steps);
    s.name = name.to_string();
    s
}

fn disk(center: [f64; 2], radius: f64, count: usize) -> Inoculation {
    Inoculation::Disk { center, radius, count }
}

fn node(id: &str, center: [f64; 2], radius: f64, weight: f64) -> StimulusSource {
    StimulusSource::new(id, SourceKind::Attractant, center, weight)
        .with_footprint(Footprint::Disk { radius })
        .with_suppression(0.3, 0.5)
}

fn repellent(id: &str, center: [f64; 2], weight: f64) -> StimulusSource {
    StimulusSource::new(id, SourceKind::Repellent, center, weight)
}

/// A migrating blob without growth, used for the approach and avoidance runs.
fn migration(name: &str) -> Scenario {
    let mut s = base(name, 200, 200, 3000);
    s.population.inoculation = disk([40.0, 100.0], 12.0, 250);
    s.population.growth.enabled = false;
    s.population.shrink.enabled = false;
    s.outputs.metrics_every = 100;
    s
}

fn taxis() -> Scenario {
    let mut s = migration("taxis");
    s.diffusion.decay = 0.01;
    s.agents.deposit = 0.5;
    s.sources
        .push(StimulusSource::new("food", SourceKind::Attractant, [100.0, 100.0], 10.0).with_suppression(1.0, 0.0));
    s
}

fn repellent_avoidance() -> Scenario {
    let mut s = migration("repellent_avoidance");
    s.sources.push(repellent("rep", [100.0, 100.0], 10.0));
    s
}

fn fig1_dendritic() -> Scenario {
    let mut s = base("fig1_dendritic", 100, 100, 5000);
    s.diffusion.decay = 0.05;
    s.population.inoculation = disk([20.0, 50.0], 2.0, 10);
    let sites = [[20.0, 50.0], [38.0, 40.0], [40.0, 65.0], [58.0, 28.0], [60.0, 55.0], [62.0, 78.0], [80.0, 42.0]];
    for (i, c) in sites.iter().enumerate() {
        s.sources.push(node(&format!("a{i}"), *c, 2.0, 20.0));
    }
    s.outputs.metrics_every = 100;
    s
}

fn fig2_radial() -> Scenario {
    let mut s = base("fig2_radial", 64, 64, 2000);
    s.diffusion.decay = 0.3;
    s.agents.deposit = 0.5;
    s.population.inoculation = disk([32.0, 32.0], 4.0, 40);
    s.substrate = SubstrateSpec {
        enabled: true,
        amount: 200.0,
        region: SubstrateRegion::Full,
        projection_rate: 0.01,
        consumption: 0.5,
    };
    for (i, c) in [[16.0, 16.0], [48.0, 16.0], [16.0, 48.0], [48.0, 48.0]].iter().enumerate() {
        s.sources.push(node(&format!("oat{i}"), *c, 3.0, 20.0));
    }
    s.outputs.metrics_every = 100;
    s
}

fn fig3_spanning_tree() -> Scenario {
    let mut s = base("fig3_spanning_tree", 100, 100, 10_000);
    s.diffusion.decay = 0.05;
    s.population.inoculation = disk([50.0, 80.0], 2.0, 10);
    let sites = [[50.0, 80.0], [50.0, 60.0], [32.0, 45.0], [68.0, 45.0], [38.0, 25.0]];
    for (i, c) in sites.iter().enumerate() {
        s.sources.push(node(&format!("n{i}"), *c, 2.0, 20.0));
    }
    s.outputs.metrics_every = 50;
    s.oracles = OracleTargets { mst: true, voronoi: false };
    s
}

/// Uniformly seeded 256x256 lattice with a slowly decaying, light trail.
fn plane(name: &str) -> Scenario {
    let mut s = base(name, 256, 256, 5000);
    s.diffusion.decay = 0.01;
    s.agents.deposit = 0.5;
    s.population.inoculation = Inoculation::Full { coverage: 0.5 };
    s.outputs.metrics_every = 100;
    s
}

const REPELLENT_SITES: [[f64; 2]; 5] = [[64.0, 64.0], [190.0, 70.0], [128.0, 140.0], [60.0, 200.0], [200.0, 196.0]];

fn fig4_voronoi() -> Scenario {
    let mut s = plane("fig4_voronoi");
    for (i, c) in REPELLENT_SITES.iter().enumerate() {
        s.sources.push(repellent(&format!("r{i}"), *c, 1e6));
    }
    s.oracles.voronoi = true;
    s
}

fn fig4_weighted_voronoi() -> Scenario {
    let mut s = plane("fig4_weighted_voronoi");
    s.sources.push(repellent("strong", [80.0, 128.0], 3000.0));
    s.sources.push(repellent("weak", [170.0, 128.0], 1000.0));
    s.oracles.voronoi = true;
    s
}

fn hybrid(name: &str, repellent_weight: f64) -> Scenario {
    let mut s = plane(name);
    for (i, c) in REPELLENT_SITES.iter().enumerate() {
        s.sources.push(repellent(&format!("r{i}"), *c, repellent_weight));
    }
    for (i, c) in [[128.0, 40.0], [40.0, 128.0], [216.0, 128.0], [128.0, 216.0]].iter().enumerate() {
        s.sources
            .push(StimulusSource::new(format!("a{i}"), SourceKind::Attractant, *c, 1e6));
    }
    s
}

fn fig5_hybrid_high() -> Scenario {
    hybrid("fig5_hybrid_high", 1e7)
}

fn fig5_hybrid_medium() -> Scenario {
    hybrid("fig5_hybrid_medium", 1e6)
}

fn fig5_hybrid_low() -> Scenario {
    hybrid("fig5_hybrid_low", 1e5)
}

/// Two candidate food sources either side of a small central inoculum.
fn choice(name: &str, left: StimulusSource, right: StimulusSource) -> Scenario {
    let mut s = base(name, 100, 100, 3000);
    s.diffusion.decay = 0.05;
    s.population.inoculation = disk([50.0, 50.0], 3.0, 20);
    s.sources.push(left);
    s.sources.push(right);
    s.outputs.metrics_every = 1;
    s
}

fn choice_distance() -> Scenario {
    choice("choice_distance", node("near", [30.0, 50.0], 2.0, 20.0), node("far", [85.0, 50.0], 2.0, 20.0))
}

fn choice_size() -> Scenario {
    choice("choice_size", node("small", [20.0, 50.0], 2.0, 20.0), node("large", [80.0, 50.0], 5.0, 20.0))
}

fn choice_weight() -> Scenario {
    choice("choice_weight", node("weak", [20.0, 50.0], 2.0, 10.0), node("strong", [80.0, 50.0], 2.0, 40.0))
}

fn dynamic_removal() -> Scenario {
    let mut s = base("dynamic_removal", 100, 100, 3500);
    s.diffusion.decay = 0.05;
    s.population.inoculation = disk([25.0, 50.0], 2.0, 10);
    s.sources.push(node("keep", [25.0, 50.0], 2.0, 20.0));
    s.sources.push(node("gone", [55.0, 50.0], 2.0, 20.0));
    s.events.push(ScheduledEvent {
        step: 2000,
        action: EventAction::RemoveSource { id: "gone".into() },
    });
    s.outputs.metrics_every = 50;
    s
}
