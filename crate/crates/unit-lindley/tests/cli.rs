//! End-to-end tests of the command-line binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use unit_lindley::cli::{load_csv, Scale};
use unit_lindley::simulation::SimulationTable;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unit-lindley"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn binary");
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn run_expect_code(args: &[&str], code: i32) -> Output {
    let out = bin().args(args).output().expect("spawn binary");
    assert_eq!(
        out.status.code(),
        Some(code),
        "command {args:?}: stderr = {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("unit_lindley_it");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn csv_column(text: &str, name: &str) -> Vec<String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().to_string())
        .collect()
}

#[test]
fn fit_reports_the_zero_fraction_as_alpha() {
    let path = fixture("pass_rates_zero_inflated.csv");
    let ds = load_csv(&path, "value", Scale::Unit, ',').unwrap();
    let expected_alpha = ds.sample.n_zero() as f64 / ds.sample.len() as f64;

    let out = run_ok(&[
        "fit", "--input", &path, "--column", "value", "--model", "ulzi", "--format", "csv",
    ]);
    let params = csv_column(&out, "param");
    let estimates = csv_column(&out, "estimate");
    let alpha_idx = params.iter().position(|p| p == "alpha").unwrap();
    let alpha: f64 = estimates[alpha_idx].parse().unwrap();
    assert_eq!(alpha, expected_alpha);

    // text mode shows it at 4 decimals
    let text = run_ok(&[
        "fit", "--input", &path, "--column", "value", "--model", "ulzi",
    ]);
    assert!(text.contains(&format!("{expected_alpha:.4}")), "{text}");
    assert!(text.contains("KS statistic"));
}

#[test]
fn fit_ks_matches_gof_ks() {
    let path = fixture("pass_rates_zero_inflated.csv");
    let fit_out = run_ok(&[
        "fit", "--input", &path, "--column", "value", "--model", "ulzi", "--format", "csv",
    ]);
    let fit_ks = csv_column(&fit_out, "ks")[0].clone();
    let gof_out = run_ok(&[
        "gof", "--input", &path, "--column", "value", "--model", "ulzi", "--format", "csv",
    ]);
    let gof_ks = csv_column(&gof_out, "ks")[0].clone();
    assert_eq!(fit_ks, gof_ks);
}

#[test]
fn fit_methods_bcmle_and_cme() {
    let path = fixture("pass_rates_zero_inflated.csv");
    let mle = run_ok(&[
        "fit", "--input", &path, "--column", "value", "--model", "ulzi", "--format", "csv",
    ]);
    let bc = run_ok(&[
        "fit", "--input", &path, "--column", "value", "--model", "ulzi", "--method", "bcmle",
        "--format", "csv",
    ]);
    let cme = run_ok(&[
        "fit", "--input", &path, "--column", "value", "--model", "ulzi", "--method", "cme",
        "--format", "csv",
    ]);
    let theta = |out: &str| -> f64 {
        let params = csv_column(out, "param");
        let estimates = csv_column(out, "estimate");
        let idx = params.iter().position(|p| p == "theta").unwrap();
        estimates[idx].parse().unwrap()
    };
    let (t_mle, t_bc, t_cme) = (theta(&mle), theta(&bc), theta(&cme));
    assert!(
        t_bc < t_mle,
        "bias correction shrinks theta: {t_bc} vs {t_mle}"
    );
    assert!((t_cme - t_mle).abs() / t_mle < 0.2);
    // CME reports no standard error for theta
    let params = csv_column(&cme, "param");
    let ses = csv_column(&cme, "std_error");
    let idx = params.iter().position(|p| p == "theta").unwrap();
    assert!(ses[idx].is_empty());
}

#[test]
fn fit_rejects_model_mismatch_with_hint() {
    let path = fixture("pass_rates_zero_one_inflated.csv");
    let out = run_expect_code(
        &[
            "fit", "--input", &path, "--column", "value", "--model", "ulzi",
        ],
        4,
    );
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("ULZOI"), "no remediation hint: {stderr}");
}

#[test]
fn fit_beta_models() {
    let path = fixture("pass_rates_zero_inflated.csv");
    let out = run_ok(&[
        "fit", "--input", &path, "--column", "value", "--model", "zib", "--format", "csv",
    ]);
    let params = csv_column(&out, "param");
    assert!(params.contains(&"mu".to_string()) && params.contains(&"phi".to_string()));
    // beta fits are MLE-only
    run_expect_code(
        &[
            "fit", "--input", &path, "--column", "value", "--model", "zib", "--method", "cme",
        ],
        2,
    );
}

#[test]
fn sample_deterministic_and_empty() {
    let a = temp_path("draws_a.csv");
    let b = temp_path("draws_b.csv");
    for out in [&a, &b] {
        run_ok(&[
            "sample",
            "--model",
            "ulzi",
            "--alpha",
            "0.2",
            "--theta",
            "7",
            "-n",
            "500",
            "--seed",
            "99",
            "--out",
            out.to_str().unwrap(),
        ]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let header_only = run_ok(&[
        "sample", "--model", "ulzi", "--alpha", "0.2", "--theta", "7", "-n", "0",
    ]);
    assert_eq!(header_only, "value\n");

    // output round-trips through the loader
    let ds = load_csv(a.to_str().unwrap(), "value", Scale::Unit, ',').unwrap();
    assert_eq!(ds.sample.len(), 500);
}

#[test]
fn sample_zoi_endpoint_fractions() {
    let path = temp_path("draws_zoi.csv");
    run_ok(&[
        "sample",
        "--model",
        "ulzoi",
        "--alpha",
        "0.5",
        "--theta",
        "1.0",
        "--p",
        "0.3",
        "-n",
        "1000000",
        "--seed",
        "7",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&path).unwrap();
    let n = 1_000_000f64;
    let ones = text
        .lines()
        .filter(|l| *l == "1.0000000000000000e0")
        .count() as f64;
    let zeros = text
        .lines()
        .filter(|l| *l == "0.0000000000000000e0")
        .count() as f64;
    // 4 sigma binomial bands around alpha*p and alpha*(1-p)
    assert!((ones / n - 0.15).abs() < 4.0 * (0.15f64 * 0.85 / n).sqrt());
    assert!((zeros / n - 0.35).abs() < 4.0 * (0.35f64 * 0.65 / n).sqrt());
}

#[test]
fn compare_routes_by_data_pattern() {
    let zoi = fixture("pass_rates_zero_one_inflated.csv");
    let out = run_ok(&["compare", "--input", &zoi, "--column", "value"]);
    assert!(out.contains("ULZOI"), "{out}");
    assert!(out.contains("ZOIB"), "{out}");
    assert!(!out.contains("ULZI:"), "{out}");
    assert!(out.contains("smaller KS:"), "{out}");
    // two KS values printed at 4 decimals
    assert_eq!(out.matches("KS = 0.").count(), 2, "{out}");

    let zi = fixture("pass_rates_zero_inflated.csv");
    let out = run_ok(&["compare", "--input", &zi, "--column", "value"]);
    assert!(out.contains("ULZI") && out.contains("ZIB"), "{out}");
    assert!(!out.contains("ULZOI"), "{out}");
}

#[test]
fn compare_csv_schema() {
    let zi = fixture("pass_rates_zero_inflated.csv");
    let out = run_ok(&[
        "compare", "--input", &zi, "--column", "value", "--format", "csv",
    ]);
    assert!(out.starts_with("model,param,estimate,std_error,log_lik,ks\n"));
    let models = csv_column(&out, "model");
    assert!(models.contains(&"ULZI".to_string()) && models.contains(&"ZIB".to_string()));
}

#[test]
fn simulate_single_replication_smoke_is_fast() {
    let start = Instant::now();
    let out = run_ok(&[
        "simulate", "--model", "ulzi", "--alpha", "0.2", "--theta", "7", "--sizes", "25", "--reps",
        "1", "--seed", "5",
    ]);
    assert!(
        start.elapsed().as_secs_f64() < 1.0,
        "took {:?}",
        start.elapsed()
    );
    assert!(out.contains("model ULZI"));
    assert!(out.contains("failed replications"));
}

#[test]
fn simulate_csv_round_trips() {
    let out_file = temp_path("sim.csv");
    let stdout = run_ok(&[
        "simulate",
        "--model",
        "ulzoi",
        "--alpha",
        "0.3",
        "--theta",
        "0.56",
        "--p",
        "0.5",
        "--sizes",
        "30,50",
        "--reps",
        "20",
        "--seed",
        "11",
        "--format",
        "csv",
        "--out",
        out_file.to_str().unwrap(),
    ]);
    let table = SimulationTable::from_csv(&stdout).unwrap();
    assert_eq!(table.to_csv(), stdout);
    // --out wrote the same CSV
    assert_eq!(fs::read_to_string(&out_file).unwrap(), stdout);
    assert!(table.bias.iter().any(|c| c.param == "p"));
}

#[test]
fn simulate_emits_estimate_plot_data() {
    let est_file = temp_path("estimates.csv");
    run_ok(&[
        "simulate",
        "--model",
        "ulzi",
        "--alpha",
        "0.2",
        "--theta",
        "7",
        "--sizes",
        "50",
        "--reps",
        "25",
        "--seed",
        "3",
        "--study",
        "bias",
        "--estimates-out",
        est_file.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&est_file).unwrap();
    assert!(text.starts_with("n,estimator,replication,theta_hat\n"));
    // 25 replications x 3 estimators (no failures expected at alpha=0.2, n=50)
    assert_eq!(text.lines().count(), 1 + 25 * 3);
}

#[test]
fn gof_with_given_parameters_and_plot_data() {
    let path = fixture("pass_rates_zero_inflated.csv");
    let plot = temp_path("plot.csv");
    let out = run_ok(&[
        "gof",
        "--input",
        &path,
        "--column",
        "value",
        "--model",
        "ulzi",
        "--alpha",
        "0.2438",
        "--theta",
        "0.7617",
        "--plot-out",
        plot.to_str().unwrap(),
    ]);
    assert!(out.contains("given parameters"));

    let text = fs::read_to_string(&plot).unwrap();
    assert!(text.starts_with("x,empirical_cdf,model_cdf\n"));
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.first().unwrap()[0], 0.0);
    assert_eq!(rows.last().unwrap()[0], 1.0);
    for pair in rows.windows(2) {
        assert!(pair[0][0] < pair[1][0]);
        assert!(pair[0][1] <= pair[1][1]);
        assert!(pair[0][2] <= pair[1][2] + 1e-12);
    }
    assert_eq!(rows.last().unwrap()[1], 1.0);
}

#[test]
fn percent_scale_through_the_binary() {
    let path = temp_path("percent.csv");
    fs::write(&path, "school,pass_pct\na,100\nb,0\nc,37.5\nd,62.5\ne,80\n").unwrap();
    let out = run_ok(&[
        "gof",
        "--input",
        path.to_str().unwrap(),
        "--column",
        "pass_pct",
        "--scale",
        "percent",
        "--model",
        "ulzoi",
        "--alpha",
        "0.4",
        "--theta",
        "1.0",
        "--p",
        "0.5",
    ]);
    assert!(out.contains("KS statistic"));
}

#[test]
fn exit_codes() {
    // usage: unknown flag
    run_expect_code(&["fit", "--no-such-flag"], 2);
    // usage: bad confidence level
    let path = fixture("pass_rates_zero_inflated.csv");
    run_expect_code(
        &[
            "fit", "--input", &path, "--column", "value", "--model", "ulzi", "--level", "1.5",
        ],
        2,
    );
    // data validation: missing file
    run_expect_code(
        &[
            "fit",
            "--input",
            "/no/such/file.csv",
            "--column",
            "0",
            "--model",
            "ulzi",
        ],
        3,
    );
    // data validation: value out of range, row named
    let bad = temp_path("bad.csv");
    fs::write(&bad, "rate\n0.5\n1.2\n").unwrap();
    let out = run_expect_code(
        &[
            "fit",
            "--input",
            bad.to_str().unwrap(),
            "--column",
            "rate",
            "--model",
            "ulzi",
        ],
        3,
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 3"));
    // estimation: boundary sample (no zeros)
    let nz = temp_path("no_zeros.csv");
    fs::write(&nz, "rate\n0.5\n0.25\n0.75\n").unwrap();
    run_expect_code(
        &[
            "fit",
            "--input",
            nz.to_str().unwrap(),
            "--column",
            "rate",
            "--model",
            "ulzi",
        ],
        4,
    );
}
