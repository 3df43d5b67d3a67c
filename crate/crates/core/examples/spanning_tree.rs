//! Grows a network over five food sources and compares it with the
//! Euclidean minimum spanning tree of their centres.
//!
//! cargo run --release --example spanning_tree -- [seed]

use plasmodium::{builtin_scenario, Simulation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut scenario = builtin_scenario("fig3_spanning_tree")?;
    if let Some(seed) = std::env::args().nth(1) {
        scenario.seed = seed.parse()?;
    }
    let mut sim = Simulation::new(scenario)?;
    sim.run_with(|world, t| {
        if (t + 1) % 2000 == 0 {
            let engulfed = world.sources.iter().filter(|s| s.suppressed).count();
            println!("step {:>5}: {:>4} agents, {engulfed}/{} sources engulfed", t + 1, world.population(), world.sources.len());
        }
    })?;
    let tree = sim.report().tree.expect("scenario asks for the MST oracle");
    println!("nodes connected: {}", tree.network.all_nodes_connected());
    println!("holes:           {}", tree.network.holes);
    println!("skeleton length: {:.1}", tree.network.skeleton_length);
    println!("MST length:      {:.1} over edges {:?}", tree.mst_length, tree.mst_edges);
    println!("ratio:           {:.3}", tree.length_ratio);
    Ok(())
}
