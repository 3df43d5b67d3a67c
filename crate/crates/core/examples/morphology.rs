//! Contrasts dendritic growth towards sparse, weak food with radial growth
//! over a nutrient-rich substrate.
//!
//! cargo run --release --example morphology

use plasmodium::{builtin_scenario, Simulation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["fig1_dendritic", "fig2_radial"] {
        let mut sim = Simulation::new(builtin_scenario(name)?)?;
        sim.run()?;
        let r = sim.report();
        println!(
            "{name:<16} agents {:>5}  coverage {:.3}  compactness {:.3}  holes {}",
            r.population, r.morphology.coverage, r.morphology.compactness, r.network.holes
        );
    }
    Ok(())
}
