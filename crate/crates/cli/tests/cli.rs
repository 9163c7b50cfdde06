//! End-to-end tests of the `semihard` binary: exit codes, error text,
//! pipeline correctness (simulate → fit), report invariants, settings
//! precedence, and format round-trips.

use std::fs;
use std::process::{Command, Output};

use semihard_cli::report::SweepReport;
use semihard_core::distributions::ReferenceDistribution;
use semihard_core::special::{normal_cdf, normal_pdf};

fn semihard() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_semihard"));
    // keep the ambient environment from leaking a seed into the tests
    cmd.env_remove("EDGEWORTH_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    semihard()
        .args(args)
        .output()
        .expect("failed to launch the CLI")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is not UTF-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is not UTF-8")
}

/// Value of a `key=value` line in keyed output (fit/recommend).
fn keyed(text: &str, key: &str) -> String {
    let prefix = format!("{key}=");
    text.lines()
        .find_map(|line| line.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("missing `{key}=` line in:\n{text}"))
        .to_string()
}

fn keyed_f64(text: &str, key: &str) -> f64 {
    keyed(text, key)
        .parse()
        .expect("keyed value is not a number")
}

#[test]
fn help_and_version_exit_zero() {
    for args in [
        &["--help"][..],
        &["--version"][..],
        &["expand", "--help"][..],
    ] {
        let out = run(args);
        assert_exit(&out, 0);
    }
    assert!(stdout_str(&run(&["--version"])).starts_with("semihard "));
}

#[test]
fn missing_subcommand_is_a_usage_error() {
    assert_exit(&run(&[]), 1);
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_exit(&run(&["expand", "--no-such-flag"]), 1);
}

#[test]
fn expand_rejects_nonpositive_sigma() {
    let out = run(&[
        "expand",
        "--mean",
        "1",
        "--sigma",
        "0",
        "--skewness",
        "0",
        "--alphas",
        "1",
        "--batch-sizes",
        "4",
    ]);
    assert_exit(&out, 1);
    assert!(stderr_str(&out).contains("sigma"));
}

#[test]
fn simulate_rejects_tiny_triplet_counts() {
    let out = run(&["simulate", "--n-triplets", "0"]);
    assert_exit(&out, 1);
}

#[test]
fn fit_reports_a_missing_file_as_a_data_error() {
    let out = run(&["fit", "/nonexistent/gaps.txt"]);
    assert_exit(&out, 2);
}

#[test]
fn fit_rejects_a_sample_that_is_too_short() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.txt");
    fs::write(&path, "1.0\n2.0\n3.0\n").unwrap();
    let out = run(&["fit", path.to_str().unwrap()]);
    assert_exit(&out, 2);
}

#[test]
fn fit_names_the_line_that_failed_to_parse() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "1.0\n2.0\nbanana\n4.0\n5.0\n").unwrap();
    let out = run(&["fit", path.to_str().unwrap()]);
    assert_exit(&out, 2);
    let err = stderr_str(&out);
    assert!(err.contains(":3: not a number"), "stderr: {err}");
    assert!(err.contains("banana"), "stderr: {err}");
}

#[test]
fn fit_recovers_gamma_cumulants_from_a_large_sample() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gamma.txt");
    let sample = ReferenceDistribution::shifted_gamma(4.0, 1.0, 0.0)
        .unwrap()
        .sample(50_000, 9)
        .unwrap();
    let mut body = String::from("# gamma(shape=4, scale=1) draws\n");
    for v in sample.values() {
        body.push_str(&v.to_string());
        body.push('\n');
    }
    fs::write(&path, body).unwrap();

    let out = run(&["fit", path.to_str().unwrap()]);
    assert_exit(&out, 0);
    let text = stdout_str(&out);
    assert_eq!(keyed(&text, "n_samples"), "50000");
    let mean = keyed_f64(&text, "mean");
    let variance = keyed_f64(&text, "variance");
    let skewness = keyed_f64(&text, "skewness");
    assert!((mean - 4.0).abs() < 0.1, "mean {mean}");
    assert!((variance - 4.0).abs() < 0.3, "variance {variance}");
    assert!((skewness - 1.0).abs() < 0.1, "skewness {skewness}");
}

#[test]
fn simulated_gaps_center_at_zero_when_clusters_coincide() {
    // separation 0 makes positives and negatives exchangeable, so the
    // distance gap must be symmetric around 0
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gaps.txt");
    let out = run(&[
        "--seed",
        "11",
        "simulate",
        "--n-triplets",
        "20000",
        "--separation",
        "0",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);

    let fit = run(&["fit", path.to_str().unwrap()]);
    assert_exit(&fit, 0);
    let mean = keyed_f64(&stdout_str(&fit), "mean");
    assert!(mean.abs() < 0.05, "mean gap {mean} too far from 0");
}

#[test]
fn simulate_writes_provenance_and_is_seed_sensitive() {
    let base = ["simulate", "--n-triplets", "100"];
    let with_seed = |seed: &'static str| {
        let mut args = vec!["--seed", seed];
        args.extend_from_slice(&base);
        stdout_str(&run(&args))
    };
    let a = with_seed("1");
    let b = with_seed("1");
    let c = with_seed("2");
    assert_eq!(a, b, "same seed must reproduce the sample");
    assert_ne!(a, c, "different seeds must change the sample");
    assert!(
        a.starts_with("# source: "),
        "missing provenance header: {a}"
    );
    assert!(a.contains("# seed: 1"));
}

#[test]
fn seed_precedence_is_flag_then_env_then_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("semihard.conf");
    fs::write(&config, "seed=1\n").unwrap();
    let config = config.to_str().unwrap();

    let sample = |extra_env: Option<&str>, args: &[&str]| {
        let mut cmd = semihard();
        if let Some(seed) = extra_env {
            cmd.env("EDGEWORTH_SEED", seed);
        }
        let out = cmd.args(args).output().expect("failed to launch the CLI");
        assert_exit(&out, 0);
        stdout_str(&out)
    };
    let reference =
        |seed: &'static str| sample(None, &["--seed", seed, "simulate", "--n-triplets", "100"]);

    // config alone supplies the seed
    let from_config = sample(
        None,
        &["--config", config, "simulate", "--n-triplets", "100"],
    );
    assert_eq!(from_config, reference("1"));
    // the environment beats the config
    let from_env = sample(
        Some("2"),
        &["--config", config, "simulate", "--n-triplets", "100"],
    );
    assert_eq!(from_env, reference("2"));
    // the flag beats both
    let from_flag = sample(
        Some("2"),
        &[
            "--config",
            config,
            "--seed",
            "3",
            "simulate",
            "--n-triplets",
            "100",
        ],
    );
    assert_eq!(from_flag, reference("3"));
    // nothing set falls back to the default seed
    let from_default = sample(None, &["simulate", "--n-triplets", "100"]);
    assert_eq!(from_default, reference("42"));
}

#[test]
fn expand_zero_skew_zeroes_the_correction_column() {
    let out = run(&[
        "expand",
        "--mean",
        "1",
        "--sigma",
        "0.5",
        "--skewness",
        "0",
        "--alphas",
        "0.5,1,1.5",
        "--batch-sizes",
        "4,16,64",
    ]);
    assert_exit(&out, 0);
    let report = SweepReport::from_csv(&stdout_str(&out)).unwrap();
    assert_eq!(report.rows.len(), 9);
    for row in &report.rows {
        assert_eq!(row.correction, 0.0, "α={} N={}", row.alpha, row.n_eff);
        assert_eq!(row.total, row.leading);
    }
}

#[test]
fn expand_rows_compose_exactly() {
    let out = run(&[
        "expand",
        "--mean",
        "0.8",
        "--sigma",
        "1.1",
        "--skewness",
        "0.6",
        "--alphas",
        "0.4,1.2,2.0",
        "--batch-sizes",
        "4,25,100",
    ]);
    assert_exit(&out, 0);
    let report = SweepReport::from_csv(&stdout_str(&out)).unwrap();
    assert_eq!(report.rows.len(), 9);
    for row in &report.rows {
        // shortest-round-trip formatting makes the parsed floats bit-exact,
        // so the composition identity survives the CSV boundary
        assert_eq!(
            row.total,
            row.leading + row.correction / (row.n_eff as f64).sqrt(),
            "α={} N={}",
            row.alpha,
            row.n_eff
        );
        assert_eq!(row.p_sh, row.sensitivity);
        assert!(row.oracle_value.is_none() && row.abs_error.is_none());
    }
}

#[test]
fn expand_sensitivity_matches_the_mean_margin_closed_form() {
    // α = μ = σ = 1, γ₃ = 0.6, N = 25: the window probability reduces to
    // 1/2 − Φ(−1) + (γ₃/(6√N))·φ(0), since the φ(ζ₀)·He₂(ζ₀) term vanishes
    // at ζ₀ = −1
    let out = run(&[
        "expand",
        "--mean",
        "1",
        "--sigma",
        "1",
        "--skewness",
        "0.6",
        "--alphas",
        "1",
        "--batch-sizes",
        "25",
    ]);
    assert_exit(&out, 0);
    let report = SweepReport::from_csv(&stdout_str(&out)).unwrap();
    assert_eq!(report.rows.len(), 1);
    let expected = 0.5 - normal_cdf(-1.0).unwrap() + 0.6 / 30.0 * normal_pdf(0.0).unwrap();
    let got = report.rows[0].sensitivity;
    assert!(
        (got - expected).abs() <= 1e-12,
        "sensitivity {got} vs closed form {expected}"
    );
}

#[test]
fn expand_csv_round_trips_byte_identically() {
    let out = run(&[
        "expand",
        "--mean",
        "0.3",
        "--sigma",
        "0.9",
        "--skewness",
        "-0.4",
        "--alphas",
        "0.7,2.3",
        "--batch-sizes",
        "8,32",
    ]);
    assert_exit(&out, 0);
    let text = stdout_str(&out);
    let report = SweepReport::from_csv(&text).unwrap();
    assert_eq!(report.to_csv(), text);
}

#[test]
fn expand_json_is_well_formed() {
    let out = run(&[
        "expand",
        "--mean",
        "0.3",
        "--sigma",
        "0.9",
        "--skewness",
        "-0.4",
        "--alphas",
        "0.7",
        "--batch-sizes",
        "8",
        "--format",
        "json",
    ]);
    assert_exit(&out, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(value["rows"].as_array().map(Vec::len), Some(1));
    assert_eq!(value["rows"][0]["n_eff"], 8);
}

#[test]
fn expand_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = run(&[
        "expand",
        "--mean",
        "1",
        "--sigma",
        "1",
        "--skewness",
        "0",
        "--alphas",
        "1",
        "--batch-sizes",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_exit(&out, 0);
    assert!(stdout_str(&out).is_empty());
    let report = SweepReport::from_csv(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.rows.len(), 1);
}

#[test]
fn validate_normal_family_reproduces_the_exact_law() {
    // the batch mean of a normal law is normal with zero skewness, so the
    // expansion is exact up to quadrature tolerance at every batch size
    let out = run(&[
        "validate",
        "--family",
        "normal",
        "--family-mean",
        "1",
        "--family-sigma",
        "0.8",
        "--alpha",
        "2",
        "--batch-sizes",
        "2,8,32",
    ]);
    assert_exit(&out, 0);
    let report = SweepReport::from_csv(&stdout_str(&out)).unwrap();
    assert_eq!(report.rows.len(), 3);
    for row in &report.rows {
        let err = row.abs_error.expect("validate rows carry the oracle error");
        assert!(err < 1e-8, "N={}: abs_error {err}", row.n_eff);
        assert!(row.oracle_value.is_some());
    }
}

#[test]
fn validate_reports_the_scaling_fit_in_metadata() {
    let out = run(&[
        "validate",
        "--family",
        "gamma",
        "--shape",
        "4",
        "--scale",
        "1",
        "--alpha",
        "3.7",
        "--convention",
        "density-negated",
        "--batch-sizes",
        "4,8,16,32,64,128",
    ]);
    assert_exit(&out, 0);
    let report = SweepReport::from_csv(&stdout_str(&out)).unwrap();
    let slope: f64 = report
        .metadata
        .iter()
        .find(|(k, _)| k == "scaling_slope")
        .expect("scaling_slope metadata")
        .1
        .parse()
        .unwrap();
    assert!((-1.3..=-0.7).contains(&slope), "slope {slope}");
}

#[test]
fn validate_mixture_family_is_a_data_error() {
    // the mixture has no closed batch-mean law, so validation cannot build
    // its exact reference density
    let out = run(&[
        "validate",
        "--family",
        "mixture",
        "--weight",
        "0.4",
        "--mean1",
        "0",
        "--sigma1",
        "1",
        "--mean2",
        "2",
        "--sigma2",
        "0.5",
        "--alpha",
        "1",
        "--batch-sizes",
        "4,8",
    ]);
    assert_exit(&out, 2);
    assert!(stderr_str(&out).contains("batch-mean law"));
}

#[test]
fn validate_requires_family_parameters() {
    let out = run(&[
        "validate",
        "--family",
        "gamma",
        "--alpha",
        "1",
        "--batch-sizes",
        "4",
    ]);
    assert_exit(&out, 1);
    assert!(stderr_str(&out).contains("--shape"));
}

#[test]
fn recommend_matches_a_hand_computed_threshold() {
    // mean 1, σ 1e-6, γ₃ 0, α 2: the loss total is exactly α − μ = 1, so
    // C/N ≤ ε·total first holds at N = C/ε
    let base = [
        "recommend",
        "--alpha",
        "2",
        "--n-eff",
        "100",
        "--mean",
        "1",
        "--sigma",
        "1e-6",
        "--skewness",
        "0",
        "--c-estimate",
        "1",
    ];
    let mut strict = base.to_vec();
    strict.extend_from_slice(&["--epsilon", "0.01"]);
    let out = run(&strict);
    assert_exit(&out, 0);
    let text = stdout_str(&out);
    assert_eq!(keyed(&text, "recommended_n"), "100");
    assert_eq!(keyed_f64(&text, "loss_total"), 1.0);

    let mut loose = base.to_vec();
    loose.extend_from_slice(&["--epsilon", "0.02"]);
    assert_eq!(keyed(&stdout_str(&run(&loose)), "recommended_n"), "50");
}

#[test]
fn recommend_fits_the_constant_inline_from_a_family() {
    let out = run(&[
        "recommend",
        "--alpha",
        "3.7",
        "--epsilon",
        "0.05",
        "--n-eff",
        "64",
        "--family",
        "gamma",
        "--shape",
        "4",
        "--scale",
        "1",
        "--convention",
        "density-negated",
    ]);
    assert_exit(&out, 0);
    let text = stdout_str(&out);
    assert_eq!(keyed(&text, "c_source"), "inline-fit");
    let n: u64 = keyed(&text, "recommended_n").parse().unwrap();
    assert!(n >= 1);
    let c: f64 = keyed_f64(&text, "c_estimate");
    assert!(c > 0.0 && c.is_finite());
}
