//! Removes one of two connected food sources mid-run and tracks how quickly
//! the collective abandons it.
//!
//! cargo run --release --example dynamic_removal -- [seed]

use plasmodium::{builtin_scenario, Simulation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut scenario = builtin_scenario("dynamic_removal")?;
    if let Some(seed) = std::env::args().nth(1) {
        scenario.seed = seed.parse()?;
    }
    let site = scenario.sources.iter().find(|s| s.id == "gone").expect("builtin layout").center;
    let removed_at = scenario.events[0].step;
    println!("source removed at step {removed_at}");
    let mut sim = Simulation::new(scenario)?;
    sim.run_with(|world, t| {
        if (t + 1) % 250 == 0 {
            let near = world
                .agents
                .iter()
                .filter(|a| (a.x - site[0]).hypot(a.y - site[1]) < 15.0)
                .count();
            println!("step {:>4}: {near:>3} agents within 15 cells", t + 1);
        }
    })?;
    Ok(())
}
