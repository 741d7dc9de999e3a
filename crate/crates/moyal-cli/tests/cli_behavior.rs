//! End-to-end behavior of the command-line surfaces through the library
//! entry points: expression round trips, configuration handling and suite
//! orchestration.

use moyal_cli::config::{Config, ThetaSpec};
use moyal_cli::expr::{parse_expression, print_poly};
use moyal_cli::suites::run_suite;
use moyal_cli::{run_configured, star_command};

use proptest::prelude::*;

#[test]
fn star_command_matches_documented_examples() {
    let mut config = Config::default();
    config.theta = Some(ThetaSpec::parse("1").unwrap());
    assert_eq!(star_command("x1", "x2", &config).unwrap(), "x1*x2 + (1/2)*i");
    assert_eq!(star_command("1", "x1^3", &config).unwrap(), "x1^3");
    assert_eq!(star_command("x1", "x1", &config).unwrap(), "x1^2");

    // commutator via two calls
    config.theta = Some(ThetaSpec::parse("1/3").unwrap());
    let ab = star_command("x1", "x2", &config).unwrap();
    let ba = star_command("x2", "x1", &config).unwrap();
    assert_eq!(ab, "x1*x2 + (1/6)*i");
    assert_eq!(ba, "x1*x2 - (1/6)*i");
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_expression("x1 +").unwrap_err();
    assert_eq!(err.position, 5);
    let err = parse_expression("x1^x2").unwrap_err();
    assert_eq!(err.position, 4);
    let err = parse_expression("(x1").unwrap_err();
    assert_eq!(err.position, 4);
}

#[test]
fn fast_suites_pass_under_default_config() {
    let config = Config::default();
    for name in ["hopf", "fock", "landau", "twoparticle"] {
        let report = run_suite(name, &config).unwrap();
        assert!(report.all_passed(), "suite {name}:\n{}", report.render_text());
        // every check carries an identity anchor
        for check in &report.checks {
            assert!(!check.identity.is_empty());
        }
    }
}

#[test]
fn reports_are_deterministic_given_a_config() {
    let config = Config::default();
    let a = run_suite("fock", &config).unwrap();
    let b = run_suite("fock", &config).unwrap();
    assert_eq!(a.seed, b.seed);
    let residuals_a: Vec<f64> = a.checks.iter().map(|c| c.residual).collect();
    let residuals_b: Vec<f64> = b.checks.iter().map(|c| c.residual).collect();
    assert_eq!(residuals_a, residuals_b);
}

#[test]
fn suite_reports_are_written_to_the_output_directory() {
    let dir = std::env::temp_dir().join("moyal-cli-behavior-test");
    let _ = std::fs::remove_dir_all(&dir);
    let mut config = Config::default();
    config.suites = vec!["hopf".into()];
    config.output_dir = Some(dir.clone());
    let reports = run_configured(&config).unwrap();
    assert_eq!(reports.len(), 1);
    let json_path = dir.join("hopf.json");
    let text_path = dir.join("hopf.txt");
    assert!(json_path.exists() && text_path.exists());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(json_path).unwrap()).unwrap();
    assert_eq!(parsed["suite"], "hopf");
    assert!(parsed["checks"].as_array().unwrap().len() >= 10);
}

#[test]
fn unknown_suites_are_usage_errors() {
    let config = Config::default();
    assert!(run_suite("bogus", &config).is_err());
    let mut c = Config::default();
    c.suites = vec!["bogus".into()];
    assert!(c.validate().is_err());
}

/// Expressions assembled from the printable grammar.
fn arb_expr_text() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (1u32..=3, 1u32..=2).prop_map(|(c, p)| if p == 1 {
            format!("x{c}")
        } else {
            format!("x{c}_{p}")
        }),
        (-9i64..=9).prop_map(|n| format!("({n})")),
        (1i64..=9, 1i64..=9).prop_map(|(p, q)| format!("({p}/{q})")),
        Just("i".to_string()),
    ];
    prop::collection::vec((atom, 0u32..=2), 1..5).prop_map(|factors| {
        factors
            .into_iter()
            .map(|(base, exp)| if exp > 0 { format!("{base}^{exp}") } else { base })
            .collect::<Vec<_>>()
            .join("*")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_print_is_the_identity(text in arb_expr_text()) {
        let (poly, layout) = parse_expression(&text).unwrap();
        let printed = print_poly(&poly, &layout);
        let (reparsed, layout2) = parse_expression(&printed).unwrap();
        // the canonical form is a fixed point of print . parse
        prop_assert_eq!(print_poly(&reparsed, &layout2), printed);
    }
}
