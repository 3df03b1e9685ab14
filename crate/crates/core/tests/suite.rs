use heisot::suite::{run_suite, selectors, SuiteConfig};

fn small(seed: u64) -> SuiteConfig {
    SuiteConfig {
        seed,
        trials: 8,
        ..SuiteConfig::default()
    }
}

#[test]
fn every_property_passes_on_small_runs() {
    for seed in [0, 1] {
        let report = run_suite(&small(seed), "all").unwrap();
        let failed: Vec<_> = report.properties.iter().filter(|p| !p.pass).collect();
        assert!(failed.is_empty(), "seed {seed}: {failed:#?}");
        assert_eq!(report.properties.len(), selectors().len());
    }
}

#[test]
fn reports_are_deterministic() {
    let a = run_suite(&small(3), "transport").unwrap().to_json();
    let b = run_suite(&small(3), "transport").unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn module_and_exact_selectors() {
    let module = run_suite(&small(0), "radon").unwrap();
    assert!(module.properties.iter().all(|p| p.name.starts_with("radon.")));
    let one = run_suite(&small(0), "rigidity.step4").unwrap();
    assert_eq!(one.properties.len(), 1);
    assert!((one.properties[0].details["cost_mu_at_half"] - 1.0).abs() < 1e-12);
    assert!((one.properties[0].details["cost_image_at_half"] - 1.75).abs() < 1e-12);
}
