//! Attractants and repellents together. As the repellents weaken the
//! plane-dividing pattern gives way to a sparser proximity graph, and the
//! total network length drops.
//!
//! cargo run --release --example hybrid_sweep -- [seed]

use plasmodium::{builtin_scenario, Simulation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed: Option<u64> = std::env::args().nth(1).map(|s| s.parse()).transpose()?;
    for name in ["fig5_hybrid_high", "fig5_hybrid_medium", "fig5_hybrid_low"] {
        let mut scenario = builtin_scenario(name)?;
        if let Some(seed) = seed {
            scenario.seed = seed;
        }
        let weight = scenario.sources[0].weight;
        let mut sim = Simulation::new(scenario)?;
        sim.run()?;
        let r = sim.report();
        println!(
            "repellent weight {weight:>9.0e}: skeleton length {:>6.0}, holes {:>3}",
            r.network.skeleton_length, r.network.holes
        );
    }
    Ok(())
}
