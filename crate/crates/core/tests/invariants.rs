use plasmodium::analysis::{
    mst_oracle, network_mask, occupancy_mask, skeletonize, topology, weighted_voronoi_oracle, BinaryMask,
};
use plasmodium::scenario::builtin_scenarios;
use plasmodium::stimuli::{EventAction, ScheduledEvent};
use plasmodium::swarm::Inoculation;
use plasmodium::{parse_scenario, Footprint, Scenario, Simulation, SourceKind, StimulusSource};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = SourceKind> {
    prop_oneof![Just(SourceKind::Attractant), Just(SourceKind::Repellent)]
}

fn footprint() -> impl Strategy<Value = Footprint> {
    prop_oneof![
        Just(Footprint::Point),
        (1.0f64..4.0).prop_map(|radius| Footprint::Disk { radius }),
        (1usize..6, 1usize..6).prop_map(|(width, height)| Footprint::Rect { width, height }),
        (2usize..6, 2usize..6).prop_map(|(width, height)| Footprint::RectOutline { width, height }),
    ]
}

fn source(i: usize, w: usize, h: usize) -> impl Strategy<Value = StimulusSource> {
    (kind(), 0.0..w as f64, 0.0..h as f64, 0.1f64..50.0, footprint(), 0.05f64..1.0, 0.0f64..1.0).prop_map(
        move |(k, x, y, weight, fp, th, factor)| {
            StimulusSource::new(format!("s{i}"), k, [x, y], weight)
                .with_footprint(fp)
                .with_suppression(th, factor)
        },
    )
}

prop_compose! {
    fn small_scenario()(w in 16usize..40, h in 16usize..40, seed in any::<u64>())
        (sources in (0..4usize).prop_flat_map(move |n| {
            (0..n).map(|i| source(i, w, h)).collect::<Vec<_>>()
        }),
         count in 1usize..60,
         growth in any::<bool>(),
         shrink in any::<bool>(),
         decay in 0.0f64..0.5,
         remove_at in 1u64..30,
         w in Just(w), h in Just(h), seed in Just(seed))
        -> Scenario
    {
        let mut s = Scenario::new(w, h, seed, 30);
        s.name = "prop".into();
        s.diffusion.decay = decay;
        s.population.inoculation = Inoculation::Disk { center: [w as f64 / 2.0, h as f64 / 2.0], radius: 6.0, count: count.min(100) };
        s.population.growth.enabled = growth;
        s.population.shrink.enabled = shrink;
        if let Some(first) = sources.first() {
            s.events.push(ScheduledEvent { step: remove_at, action: EventAction::RemoveSource { id: first.id.clone() } });
        }
        s.sources = sources;
        s.outputs.metrics_every = 7;
        s
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn world_invariants_hold_every_step(s in small_scenario()) {
        let (w, h) = (s.lattice.width as f64, s.lattice.height as f64);
        let mut sim = Simulation::new(s).unwrap();
        while !sim.is_finished() {
            sim.step().unwrap();
            let world = sim.world();
            prop_assert!(world.occupancy.audit(&world.agents).is_ok());
            prop_assert!(world.field.is_finite());
            for a in &world.agents {
                prop_assert!(a.x >= 0.0 && a.x < w && a.y >= 0.0 && a.y < h);
            }
        }
    }

    #[test]
    fn same_seed_same_world(s in small_scenario()) {
        let mut a = Simulation::new(s.clone()).unwrap();
        let mut b = Simulation::new(s).unwrap();
        a.run().unwrap();
        b.run().unwrap();
        prop_assert_eq!(a.snapshot(), b.snapshot());
        prop_assert_eq!(a.history(), b.history());
    }

    #[test]
    fn scenarios_round_trip(s in small_scenario()) {
        let back = parse_scenario(&s.to_json()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn network_mask_contains_occupancy(s in small_scenario()) {
        let mut sim = Simulation::new(s).unwrap();
        sim.run().unwrap();
        let occ = occupancy_mask(&sim.world().occupancy);
        let net = network_mask(&sim.world().occupancy);
        prop_assert!(occ.is_subset_of(&net));
        prop_assert!(skeletonize(&net).is_subset_of(&net));
        let g = topology(&net, &sim.world().sources);
        prop_assert!(g.connected_components <= g.mask_components);
    }

    #[test]
    fn mst_is_no_longer_than_any_star(pts in proptest::collection::vec((0.0f64..50.0, 0.0f64..50.0), 1..12)) {
        let pts: Vec<[f64; 2]> = pts.into_iter().map(|(x, y)| [x, y]).collect();
        let t = mst_oracle(&pts).unwrap();
        prop_assert_eq!(t.edges.len(), pts.len() - 1);
        for c in &pts {
            let star: f64 = pts.iter().map(|p| (p[0] - c[0]).hypot(p[1] - c[1])).sum();
            prop_assert!(t.total_length <= star + 1e-9);
        }
    }

    #[test]
    fn scaling_all_weights_keeps_the_diagram(
        sites in proptest::collection::vec((0.0f64..30.0, 0.0f64..20.0, 0.5f64..4.0), 1..5),
        k in 0.1f64..10.0,
    ) {
        let pts: Vec<[f64; 2]> = sites.iter().map(|s| [s.0, s.1]).collect();
        let w: Vec<f64> = sites.iter().map(|s| s.2).collect();
        let scaled: Vec<f64> = w.iter().map(|x| x * k).collect();
        let a = weighted_voronoi_oracle(&pts, &w, 30, 20).unwrap();
        let b = weighted_voronoi_oracle(&pts, &scaled, 30, 20).unwrap();
        let differ = (0..20).flat_map(|y| (0..30).map(move |x| (x, y))).filter(|&(x, y)| a.get(x, y) != b.get(x, y)).count();
        // Rounding can flip exact ties only.
        prop_assert!(differ <= 2);
    }
}

#[test]
fn builtins_are_runnable_for_a_few_steps() {
    for mut s in builtin_scenarios() {
        s.steps = 3;
        let name = s.name.clone();
        let mut sim = Simulation::new(s).unwrap_or_else(|e| panic!("{name}: {e}"));
        sim.run().unwrap();
        assert!(!sim.history().is_empty(), "{name}");
        let w = sim.world();
        w.occupancy.audit(&w.agents).unwrap();
    }
}

#[test]
fn empty_mask_has_no_skeleton() {
    let m = BinaryMask::new(10, 10);
    assert_eq!(skeletonize(&m).count(), 0);
}
