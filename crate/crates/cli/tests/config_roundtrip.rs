use firefly_cli::config::{CliConfig, Command, RawConfig};
use proptest::prelude::*;

fn command() -> impl Strategy<Value = Command> {
    prop::sample::select(Command::ALL.to_vec())
}

prop_compose! {
    fn raw_config()(
        command in command(),
        objective in prop::sample::select(vec!["dejong", "yang_forest", "four_peak", "standing_wave"]),
        dim in 1usize..6,
        n in 2usize..60,
        iters in 2usize..2000,
        beta0 in 0.0f64..3.0,
        gamma in 0.0f64..5.0,
        alpha0 in 0.0f64..2.0,
        delta in 0.01f64..=1.0,
        seed in any::<u64>(),
        uniform in any::<bool>(),
        q in prop::option::of(0.01f64..2.0),
        trials in 1usize..50,
        base_seed in any::<u64>(),
        target in 0.0f64..1.0,
        dims in prop::collection::vec(1usize..9, 1..5),
        budget_factor in 0.1f64..10.0,
    ) -> (Command, RawConfig) {
        let mut raw = RawConfig::default();
        let dim = if objective == "four_peak" { 2 } else { dim };
        let dims = dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        let q = q.map_or("none".to_string(), |q| q.to_string());
        for (k, v) in [
            ("objective", objective.to_string()),
            ("dim", dim.to_string()),
            ("n", n.to_string()),
            ("iters", iters.to_string()),
            ("beta0", beta0.to_string()),
            ("gamma", gamma.to_string()),
            ("alpha0", alpha0.to_string()),
            ("delta", delta.to_string()),
            ("seed", seed.to_string()),
            ("noise", if uniform { "uniform_symmetric" } else { "gaussian" }.to_string()),
            ("q", q),
            ("trials", trials.to_string()),
            ("base_seed", base_seed.to_string()),
            ("target", target.to_string()),
            ("dims", dims),
            ("budget_factor", budget_factor.to_string()),
        ] {
            raw.set(k, &v).unwrap();
        }
        (command, raw)
    }
}

proptest! {
    #[test]
    fn render_then_parse_is_identity((command, raw) in raw_config()) {
        let cfg = CliConfig::resolve(command, &raw).unwrap();
        let back = CliConfig::from_text(&cfg.render()).unwrap();
        prop_assert_eq!(&back, &cfg);
        prop_assert_eq!(back.render(), cfg.render());
    }

    #[test]
    fn flags_override_file_values((command, file) in raw_config(), n in 2usize..60, seed in any::<u64>()) {
        let mut flags = RawConfig::default();
        flags.set("n", &n.to_string()).unwrap();
        flags.set("seed", &seed.to_string()).unwrap();
        let mut merged = file.clone();
        merged.merge(&flags);
        let cfg = CliConfig::resolve(command, &merged).unwrap();
        prop_assert_eq!(cfg.params.n, n);
        prop_assert_eq!(cfg.params.seed, seed);
        let base = CliConfig::resolve(command, &file).unwrap();
        prop_assert_eq!(cfg.params.beta0, base.params.beta0);
        prop_assert_eq!(cfg.trials, base.trials);
    }
}
