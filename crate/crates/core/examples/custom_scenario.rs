//! Builds a scenario in code, checks it, round-trips it through its JSON
//! form and runs it to a directory the `analyze` command can read.
//!
//! cargo run --release --example custom_scenario -- [out_dir]

use std::path::PathBuf;

use plasmodium::run::run_to_dir;
use plasmodium::stimuli::{EventAction, ScheduledEvent};
use plasmodium::swarm::Inoculation;
use plasmodium::{parse_scenario, Footprint, Scenario, SourceKind, StimulusSource};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "custom_out".into()));

    let mut s = Scenario::new(120, 80, 42, 3000);
    s.name = "ring_of_food".into();
    s.diffusion.decay = 0.05;
    s.population.inoculation = Inoculation::Disk { center: [60.0, 40.0], radius: 3.0, count: 20 };
    for (i, angle) in [0.0f64, 72.0, 144.0, 216.0, 288.0].iter().enumerate() {
        let (sin, cos) = angle.to_radians().sin_cos();
        s.sources.push(
            StimulusSource::new(format!("f{i}"), SourceKind::Attractant, [60.0 + 30.0 * cos, 40.0 + 25.0 * sin], 20.0)
                .with_footprint(Footprint::Disk { radius: 2.0 })
                .with_suppression(0.3, 0.5),
        );
    }
    s.events.push(ScheduledEvent {
        step: 1500,
        action: EventAction::AddSource {
            source: StimulusSource::new("late", SourceKind::Repellent, [60.0, 40.0], 50.0),
        },
    });
    s.outputs.frame_every = 500;
    s.oracles.mst = true;

    let problems = s.validate();
    assert!(problems.is_empty(), "{problems:?}");
    let json = s.to_json();
    assert_eq!(parse_scenario(&json)?, s);

    let report = run_to_dir(s, &out, |t, total| {
        if (t + 1) % 1000 == 0 {
            eprintln!("step {}/{total}", t + 1);
        }
    })?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    println!("try: plasmodium analyze --run {} --mode tree", out.display());
    Ok(())
}
