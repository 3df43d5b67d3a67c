//! Two food sources differing in one property. The source engulfed first is
//! the one the collective chose.
//!
//! cargo run --release --example nutrient_choice -- [seeds]

use plasmodium::{builtin_scenario, Simulation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seeds: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    for name in ["choice_distance", "choice_size", "choice_weight"] {
        print!("{name:<16}");
        for seed in 1..=seeds {
            let mut scenario = builtin_scenario(name)?;
            scenario.seed = seed;
            let mut sim = Simulation::new(scenario)?;
            sim.run()?;
            let choice = sim.report().choice;
            match choice.first().and_then(|c| c.first_suppressed.map(|t| (&c.id, t))) {
                Some((id, t)) => print!("  {id}@{t}"),
                None => print!("  none"),
            }
        }
        println!();
    }
    Ok(())
}
