//! A blob of agents drifting up a single attractant gradient, and the same
//! blob retreating from a repellent.
//!
//! cargo run --release --example taxis

use plasmodium::{builtin_scenario, Simulation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["taxis", "repellent_avoidance"] {
        let scenario = builtin_scenario(name)?;
        let target = scenario.sources[0].center;
        let mut sim = Simulation::new(scenario)?;
        println!("{name}");
        sim.run_with(|world, t| {
            if (t + 1) % 500 == 0 {
                let n = world.agents.len() as f64;
                let cx = world.agents.iter().map(|a| a.x).sum::<f64>() / n;
                let cy = world.agents.iter().map(|a| a.y).sum::<f64>() / n;
                let nearest = world
                    .agents
                    .iter()
                    .map(|a| (a.x - target[0]).hypot(a.y - target[1]))
                    .fold(f64::INFINITY, f64::min);
                println!(
                    "  step {:>4}: centroid distance {:>5.1}, nearest agent {:>5.1}",
                    t + 1,
                    (cx - target[0]).hypot(cy - target[1]),
                    nearest
                );
            }
        })?;
    }
    Ok(())
}
