use scherk_costa::verify::*;

#[test]
fn integral_suite_passes_every_check() {
    let rep = run_suite(Suite::Integrals);
    assert_eq!(rep.entries.len(), 22);
    for e in &rep.entries {
        assert!(e.passed(), "{e:?}");
        assert!(e.error < 1e-10, "{e:?}");
    }
}

#[test]
fn bounds_suite_fails_only_on_the_end_box_b_floor() {
    let rep = run_suite(Suite::Bounds);
    let fails: Vec<_> = rep.failures().collect();
    // b dips to about sin rho - R^2/2 once lambda grows, below -0.0764.
    assert!(!fails.is_empty());
    for e in &fails {
        assert!(e.name.starts_with("end box b >= b_min"), "unexpected failure {e:?}");
        assert!(e.value < -0.0764 && e.value > -0.083, "{e:?}");
    }
    for e in rep.find("corner") {
        assert!(e.passed(), "{e:?}");
    }
    for prefix in ["1/(r c1)", "1/(r c3_tilde)", "J1", "J2", "balance sign", "I1 positive", "r^2 c1"] {
        let hits = rep.find(prefix);
        assert!(!hits.is_empty(), "no checks named {prefix}");
        for e in hits {
            assert!(e.passed(), "{e:?}");
        }
    }
}

#[test]
fn asymptotics_suite_reports_three_unmet_limits() {
    let rep = run_suite(Suite::Asymptotics);
    let mut names: Vec<_> = rep.failures().map(|e| e.name.split(" [").next().unwrap().to_string()).collect();
    names.sort();
    assert_eq!(
        names,
        vec![
            "c2 negative at large lambda".to_string(),
            "lambda^1.5 I2 -> -inf".to_string(),
            "sqrt(lambda) J2min -> pi".to_string(),
        ]
    );
    let j2 = &rep.find("sqrt(lambda) J2min")[0];
    assert!((j2.value - 3.206027108948780).abs() < 1e-9);
}

#[test]
fn report_serialises() {
    let rep = run_suite(Suite::Asymptotics);
    let js = rep.to_json().unwrap();
    let back: VerificationReport = serde_json::from_str(&js).unwrap();
    assert_eq!(back.entries.len(), rep.entries.len());
    assert!(rep.to_table().contains("failed"));
}
