//! Two repellents at 3:1 strength. The stronger one claims the larger
//! region, so the agent boundary should sit closer to the multiplicatively
//! weighted bisector than to the midline.
//!
//! cargo run --release --example weighted_voronoi -- [seed]

use plasmodium::{builtin_scenario, Simulation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut scenario = builtin_scenario("fig4_weighted_voronoi")?;
    if let Some(seed) = std::env::args().nth(1) {
        scenario.seed = seed.parse()?;
    }
    let mut sim = Simulation::new(scenario)?;
    sim.run()?;
    let v = sim.report().voronoi.expect("scenario asks for the Voronoi oracle");
    for (id, w) in v.sites.iter().zip(&v.weights) {
        println!("{id:<7} weight {w}");
    }
    println!("agreement with equal-weight diagram: {:.3}", v.classical_agreement);
    println!("agreement with weighted diagram:     {:.3}", v.weighted_agreement);
    Ok(())
}
