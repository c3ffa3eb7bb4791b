//! End-to-end checks of the command-line surface: exit codes, file formats,
//! determinism, and cross-command consistency.

use heavytail::cli::{cli_dispatch, EXIT_DATA, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> i32 {
    let mut argv = vec!["heavytail".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    cli_dispatch(argv)
}

#[test]
fn simulate_is_deterministic_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.txt");
    let out_b = dir.path().join("b.txt");
    let base = [
        "simulate", "--tail", "powerlaw", "--theta", "2.5", "--dev", "uexp", "--phi",
        "0.1,0.05,0", "--n", "1000", "--seed", "7", "--quiet",
    ];
    let mut args_a: Vec<&str> = base.to_vec();
    let a_path = out_a.to_str().unwrap();
    args_a.extend(["--output", a_path]);
    assert_eq!(run(&args_a), EXIT_OK);
    let mut args_b: Vec<&str> = base.to_vec();
    let b_path = out_b.to_str().unwrap();
    args_b.extend(["--output", b_path]);
    assert_eq!(run(&args_b), EXIT_OK);

    let a = std::fs::read_to_string(&out_a).unwrap();
    let b = std::fs::read_to_string(&out_b).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 1000);
    assert!(a.lines().all(|l| l.parse::<u64>().unwrap() >= 1));
}

#[test]
fn fit_writes_a_self_contained_report() {
    let dir = tempfile::tempdir().unwrap();
    let data_path = dir.path().join("d.txt");
    let report_a = dir.path().join("r1.json");
    let report_b = dir.path().join("r2.json");
    let chain_csv = dir.path().join("chain.csv");

    assert_eq!(
        run(&[
            "simulate", "--tail", "powerlaw", "--theta", "2.5", "--dev", "uexp", "--phi",
            "0.2,0.1,0.01", "--n", "800", "--seed", "3", "--quiet", "--output",
            data_path.to_str().unwrap(),
        ]),
        EXIT_OK
    );

    for (report, with_chain) in [(&report_a, true), (&report_b, false)] {
        let mut args = vec![
            "fit", "--data", data_path.to_str().unwrap(), "--model", "m1", "--iters", "3000",
            "--burnin", "1000", "--pilot", "800", "--seed", "1", "--quiet", "--output",
            report.to_str().unwrap(),
        ];
        let chain_path = chain_csv.to_str().unwrap();
        if with_chain {
            args.extend(["--chain-csv", chain_path]);
        }
        assert_eq!(run(&args), EXIT_OK);
    }

    let a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_a).unwrap()).unwrap();
    let b: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_b).unwrap()).unwrap();
    assert_eq!(a["schema_version"], 1);
    assert_eq!(a["data"]["n"], 800);
    assert_eq!(a["seed"], 1);
    assert!(a["xmin"].is_object());
    assert!(a["posterior"].is_array());
    // Same data + config + seed → identical summaries.
    assert_eq!(a["posterior"], b["posterior"]);
    assert_eq!(a["bic"], b["bic"]);

    // Chain CSV: headered, one row per kept draw.
    let csv = std::fs::read_to_string(&chain_csv).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "draw,log_posterior,theta,phi0,phi1,phi2");
    assert_eq!(lines.count(), 2000); // (3000 − 1000) / 1
}

#[test]
fn ecdf_matches_library_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let data_path = dir.path().join("d.txt");
    std::fs::write(&data_path, "1\n1\n3\n9\n9\n9\n").unwrap();
    let out = dir.path().join("e.csv");
    assert_eq!(
        run(&["ecdf", "--data", data_path.to_str().unwrap(), "--quiet", "--output", out.to_str().unwrap()]),
        EXIT_OK
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let expected = "x,survival\n1,1\n3,0.6666666666666666\n9,0.5\n";
    assert_eq!(text, expected);
}

#[test]
fn pairs_format_flows_through_fit() {
    let dir = tempfile::tempdir().unwrap();
    let pairs_path = dir.path().join("d.csv");
    assert_eq!(
        run(&[
            "simulate", "--tail", "lognormal", "--mu", "1.0", "--sigma", "0.8", "--dev", "none",
            "--n", "600", "--seed", "9", "--format", "pairs", "--quiet", "--output",
            pairs_path.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let text = std::fs::read_to_string(&pairs_path).unwrap();
    assert!(text.starts_with("value,count\n"));

    let report = dir.path().join("r.json");
    assert_eq!(
        run(&[
            "fit", "--data", pairs_path.to_str().unwrap(), "--format", "pairs", "--model", "m3",
            "--iters", "2000", "--burnin", "500", "--pilot", "500", "--seed", "2", "--quiet",
            "--output", report.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["data"]["n"], 600);
    assert!(r["xmin"].is_null()); // m3 has no deviation block
}

#[test]
fn csn_command_reports_fit() {
    let dir = tempfile::tempdir().unwrap();
    let data_path = dir.path().join("d.txt");
    assert_eq!(
        run(&[
            "simulate", "--tail", "powerlaw", "--theta", "2.5", "--dev", "none", "--n", "5000",
            "--seed", "4", "--quiet", "--output", data_path.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let out = dir.path().join("csn.json");
    assert_eq!(
        run(&["csn", "--data", data_path.to_str().unwrap(), "--quiet", "--output", out.to_str().unwrap()]),
        EXIT_OK
    );
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(r["alpha"].as_f64().unwrap() > 2.0);
    assert!(r["xmin"].as_u64().unwrap() >= 1);
}

#[test]
fn compare_models_consistent_with_individual_fits() {
    let dir = tempfile::tempdir().unwrap();
    let data_path = dir.path().join("d.txt");
    assert_eq!(
        run(&[
            "simulate", "--tail", "lognormal", "--mu", "1.0", "--sigma", "1.0", "--dev", "none",
            "--n", "2000", "--seed", "6", "--quiet", "--output", data_path.to_str().unwrap(),
        ]),
        EXIT_OK
    );
    let cmp_out = dir.path().join("cmp.json");
    let tuning = ["--iters", "2500", "--burnin", "800", "--pilot", "600", "--seed", "5"];
    let mut args = vec![
        "compare-models", "--data", data_path.to_str().unwrap(), "--models", "m1,m3", "--quiet",
        "--output", cmp_out.to_str().unwrap(),
    ];
    args.extend(tuning);
    assert_eq!(run(&args), EXIT_OK);
    let cmp: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cmp_out).unwrap()).unwrap();

    // The per-model BIC must match a standalone fit under the same seed.
    let fit_out = dir.path().join("m3.json");
    let mut args = vec![
        "fit", "--data", data_path.to_str().unwrap(), "--model", "m3", "--quiet", "--output",
        fit_out.to_str().unwrap(),
    ];
    args.extend(tuning);
    assert_eq!(run(&args), EXIT_OK);
    let fit: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&fit_out).unwrap()).unwrap();

    let cmp_bic = cmp["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == "m3")
        .unwrap()["fit"]["bic"]
        .as_f64()
        .unwrap();
    assert!((cmp_bic - fit["bic"].as_f64().unwrap()).abs() < 1e-9);
    assert_eq!(cmp["winner"], "m3");
}

#[test]
fn predict_missing_and_xmin_and_pair_emit_valid_json() {
    let dir = tempfile::tempdir().unwrap();
    let d1 = dir.path().join("a.txt");
    let d2 = dir.path().join("b.txt");
    for (path, seed) in [(&d1, "21"), (&d2, "22")] {
        assert_eq!(
            run(&[
                "simulate", "--tail", "powerlaw", "--theta", "2.3", "--dev", "uexp", "--phi",
                "0.4,0.2,0", "--n", "700", "--seed", seed, "--quiet", "--output",
                path.to_str().unwrap(),
            ]),
            EXIT_OK
        );
    }
    let quick = ["--iters", "2000", "--burnin", "600", "--pilot", "500", "--seed", "8", "--quiet"];

    let xmin_out = dir.path().join("xmin.json");
    let mut args = vec!["xmin", "--data", d1.to_str().unwrap(), "--model", "m1", "--output", xmin_out.to_str().unwrap()];
    args.extend(quick);
    assert_eq!(run(&args), EXIT_OK);
    let x: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&xmin_out).unwrap()).unwrap();
    assert_eq!(x["tau"], 0.95);
    assert!(x["median"].as_u64().unwrap() >= 1);

    let miss_out = dir.path().join("miss.json");
    let mut args = vec![
        "predict-missing", "--data", d1.to_str().unwrap(), "--model", "m1", "--draws-per-sample",
        "2", "--output", miss_out.to_str().unwrap(),
    ];
    args.extend(quick);
    assert_eq!(run(&args), EXIT_OK);
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&miss_out).unwrap()).unwrap();
    assert_eq!(m["observed_events"], 700);
    assert!(m["mean_events"].as_f64().unwrap() >= 700.0);
    assert!(m["event_quantiles"]["q05"].as_f64().unwrap() >= 700.0);

    let pair_out = dir.path().join("pair.json");
    let mut args = vec![
        "compare-datasets", "--data-a", d1.to_str().unwrap(), "--data-b", d2.to_str().unwrap(),
        "--model", "m1", "--output", pair_out.to_str().unwrap(),
    ];
    args.extend(quick);
    assert_eq!(run(&args), EXIT_OK);
    let p: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&pair_out).unwrap()).unwrap();
    let names: Vec<&str> =
        p["posterior"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"theta_u"));
    assert!(names.contains(&"phi2_u"));
}

#[test]
fn output_dir_env_var_supplies_default_location() {
    let dir = tempfile::tempdir().unwrap();
    let data_path = dir.path().join("d.txt");
    std::fs::write(&data_path, "1\n2\n3\n").unwrap();
    // Env vars are process-global; keep this the only test touching it.
    std::env::set_var("HEAVYTAIL_OUTPUT_DIR", dir.path().join("outputs").to_str().unwrap());
    let code = run(&["ecdf", "--data", data_path.to_str().unwrap(), "--quiet"]);
    std::env::remove_var("HEAVYTAIL_OUTPUT_DIR");
    assert_eq!(code, EXIT_OK);
    assert!(dir.path().join("outputs/ecdf.csv").exists());
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["frobnicate"]), EXIT_USAGE);
    assert_eq!(run(&["simulate", "--unknown-flag"]), EXIT_USAGE);
    assert_eq!(run(&["simulate", "--tail", "powerlaw", "--n", "10"]), EXIT_USAGE); // no theta
    assert_eq!(
        run(&["simulate", "--tail", "powerlaw", "--theta", "0.5", "--n", "10"]),
        EXIT_USAGE
    );
    assert_eq!(
        run(&["simulate", "--tail", "powerlaw", "--theta", "2.0", "--dev", "uexp", "--n", "10"]),
        EXIT_USAGE
    ); // uexp without phi
    let dir = tempfile::tempdir().unwrap();
    let data_path = dir.path().join("d.txt");
    std::fs::write(&data_path, "1\n2\n").unwrap();
    assert_eq!(
        run(&["fit", "--data", data_path.to_str().unwrap(), "--model", "m7", "--quiet"]),
        EXIT_USAGE
    );
    assert_eq!(
        run(&["compare-models", "--data", data_path.to_str().unwrap(), "--models", "m1", "--quiet"]),
        EXIT_USAGE
    );
}

#[test]
fn data_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // Missing file.
    assert_eq!(
        run(&["ecdf", "--data", dir.path().join("absent.txt").to_str().unwrap(), "--quiet"]),
        EXIT_DATA
    );
    // Value below support.
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3\n0\n").unwrap();
    assert_eq!(run(&["ecdf", "--data", bad.to_str().unwrap(), "--quiet"]), EXIT_DATA);
    // Garbage token.
    let worse = dir.path().join("worse.txt");
    std::fs::write(&worse, "1\ntwo\n").unwrap();
    assert_eq!(run(&["ecdf", "--data", worse.to_str().unwrap(), "--quiet"]), EXIT_DATA);
    // Too few distinct values for the cut-off scan.
    let tiny = dir.path().join("tiny.txt");
    std::fs::write(&tiny, "5\n5\n5\n").unwrap();
    assert_eq!(run(&["csn", "--data", tiny.to_str().unwrap(), "--quiet"]), EXIT_DATA);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(run(&["--help"]), EXIT_OK);
    assert_eq!(run(&["--version"]), EXIT_OK);
    assert_eq!(run(&["fit", "--help"]), EXIT_OK);
}
