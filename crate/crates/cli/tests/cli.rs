use std::path::Path;
use std::process::Command;

use edcs_cli::{parse_seeds, run_experiment, Config, Experiment};
use edcs_core::io::{read_graph_full, read_graph_path};

const GOLDEN: [(&str, &str); 10] = [
    (
        "edcs-validate",
        "instance,seed,n,m,beta,beta_minus,edcs_edges,steps,p1_fixes,p2_fixes,step_bound,potential_increasing,violations",
    ),
    ("ddl-gap", "instance,seed,n,m,beta,beta_minus,gap,bound,within_bound,violations"),
    (
        "coreset-matching",
        "instance,seed,n,m,k,beta,beta_minus,union_edges,max_part_edges,matching,oracle_mm,ratio,fitted_lambda,violations",
    ),
    (
        "coreset-vc",
        "instance,seed,n,m,k,beta,beta_minus,union_edges,fixed,cover,vc_lower_bound,oracle_vc,cover_to_lower_bound,cover_ratio,violations",
    ),
    ("maxmatching-coreset", "instance,seed,n,m,k,union_edges,matching,oracle_mm,ratio,violations"),
    ("lowerbound-demo", "instance,seed,n,k,maxmatching_ratio,edcs_ratio,flagged_parts,violations"),
    (
        "mpc-full",
        "instance,seed,n,m,delta,depth,rounds,matching,cover,cover_over_matching,peak_load,budget,messages,repair_edges,stalled,deltas,violations",
    ),
    (
        "mpc-iterate",
        "instance,seed,n,m,epsilon,alpha,planned_passes,passes,rounds,matching,oracle_mm,ratio,violations",
    ),
    (
        "stream",
        "instance,seed,n,m,k,s_target,peak_space,space_bound,union_edges,matching,oracle_mm,ratio,violations",
    ),
    ("concentration-demo", "instance,seed,n,m,p,mm_full,mm_sample,scale,violations"),
];

/// Small instances so every experiment runs in well under a second.
fn small_config(e: Experiment) -> &'static str {
    match e {
        Experiment::EdcsValidate => "family = er\nn = 24\np = 0.2\nbeta = 6\nbeta_minus = 4\nstart = random:0.3\npolicy = random\n",
        Experiment::DdlGap => "n = 60\np = 0.3\nbeta = 8\n",
        Experiment::CoresetMatching | Experiment::CoresetVc => "n_left = 40\nn_right = 40\np = 0.2\nk = 2\nbeta = 8\nbeta_minus = 6\n",
        Experiment::MaxmatchingCoreset => "n_left = 40\nn_right = 40\nk = 3\n",
        Experiment::LowerboundDemo => "n = 40\nk = 4\nbeta = 8\nbeta_minus = 6\n",
        Experiment::MpcFull => "n = 200\nd = 30\nbase_threshold = 4\n",
        Experiment::MpcIterate => "n_left = 60\nn_right = 60\np = 0.1\n",
        Experiment::Stream => "n_left = 60\nn_right = 60\np = 0.3\nbeta = 8\nbeta_minus = 6\ns_target = 120\n",
        Experiment::ConcentrationDemo => "n_left = 50\nn_right = 50\np = 0.1\n",
    }
}

fn csv_of(e: Experiment, seeds: &str) -> String {
    let t = run_experiment(e, Config::parse(small_config(e)).unwrap(), parse_seeds(seeds).unwrap()).unwrap();
    let mut buf = Vec::new();
    t.write_csv(&mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn golden_headers() {
    for (name, header) in GOLDEN {
        let e: Experiment = name.parse().unwrap();
        assert_eq!(e.header().join(","), header);
        assert_eq!(csv_of(e, "0..1").lines().next().unwrap(), header);
    }
    assert_eq!(Experiment::ALL.len(), GOLDEN.len());
}

#[test]
fn csv_is_byte_deterministic_and_sorted() {
    for e in Experiment::ALL {
        let a = csv_of(e, "0..6");
        assert_eq!(a, csv_of(e, "0..6"), "{e}");
        let mut r = csv::Reader::from_reader(a.as_bytes());
        let got: Vec<u64> = r.records().map(|rec| rec.unwrap()[1].parse().unwrap()).collect();
        assert_eq!(got, (0..6).collect::<Vec<_>>(), "{e}");
    }
}

#[test]
fn triangle_fixture_validates() {
    let t = run_experiment(Experiment::EdcsValidate, Config::default(), 0..1).unwrap();
    assert_eq!(t.violations(), 0);
    assert_eq!(t.rows[0].cells[4], "1");
}

#[test]
fn seed_ranges() {
    assert_eq!(parse_seeds("0..50").unwrap(), 0..50);
    assert_eq!(parse_seeds("3..=5").unwrap(), 3..6);
    assert_eq!(parse_seeds("7").unwrap(), 7..8);
    assert!(parse_seeds("a..b").is_err());
    assert!(parse_seeds("5..2").is_err());
}

#[test]
fn config_errors() {
    assert!("nope".parse::<Experiment>().is_err());
    let bad_key = Config::parse("n_left = 10\nbogus = 1\n").unwrap();
    assert!(run_experiment(Experiment::MaxmatchingCoreset, bad_key, 0..1).is_err());
    let bad_value = Config::parse("k = many\n").unwrap();
    assert!(run_experiment(Experiment::MaxmatchingCoreset, bad_value, 0..1).is_err());
    // Switching family leaves the stock bipartite keys unread; that is fine.
    let other_family = Config::parse("family = er\nn = 24\np = 0.2\n").unwrap();
    let t = run_experiment(Experiment::MaxmatchingCoreset, other_family, 0..1).unwrap();
    assert!(t.rows[0].instance.starts_with("er("));
}

fn edcs() -> Command {
    Command::new(env!("CARGO_BIN_EXE_edcs"))
}

fn gen(dir: &Path, args: &[&str]) -> edcs_core::Graph {
    let out = dir.join("g.txt");
    let st = edcs().arg("gen").args(args).arg("--out").arg(&out).status().unwrap();
    assert!(st.success(), "{args:?}");
    read_graph_path(&out).unwrap()
}

#[test]
fn gen_examples() {
    let dir = tempfile::tempdir().unwrap();
    let g = gen(dir.path(), &["lowerbound", "n=8", "k=4"]);
    assert_eq!((g.n(), g.m()), (18, 32));
    let g = gen(dir.path(), &["bipartite", "3", "3", "1.0"]);
    assert_eq!(g.m(), 9);
    let g = gen(dir.path(), &["er", "5", "0.0"]);
    assert_eq!((g.n(), g.m()), (5, 0));
    let g = gen(dir.path(), &["regular", "50", "6"]);
    assert!(g.degrees().iter().all(|&d| (4..=6).contains(&d)));

    let file = std::fs::File::open(dir.path().join("g.txt")).unwrap();
    assert!(read_graph_full(file).unwrap().comments[0].starts_with("regular"));
    let st = edcs().args(["gen", "er", "5"]).arg("--out").arg(dir.path().join("x")).status().unwrap();
    assert_eq!(st.code(), Some(2));
}

#[test]
fn run_exit_codes_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    std::fs::write(&cfg, small_config(Experiment::CoresetVc)).unwrap();
    let out = dir.path().join("o.csv");
    let st = edcs()
        .args(["run", "--experiment", "coreset-vc", "--seeds", "0..3", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 4);

    let st = edcs().args(["run", "--experiment", "unknown"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
    std::fs::write(&cfg, "this is not a config\n").unwrap();
    let st = edcs().args(["run", "--experiment", "stream", "--config"]).arg(&cfg).status().unwrap();
    assert_eq!(st.code(), Some(2));
}

#[test]
fn mpc_command_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), &["regular", "300", "40"]);
    let trace = dir.path().join("trace.json");
    let out = edcs()
        .args(["mpc", "--base-threshold", "8", "--seed", "3", "--input"])
        .arg(dir.path().join("g.txt"))
        .arg("--trace-out")
        .arg(&trace)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["matching_feasible"], true);
    assert_eq!(report["cover_feasible"], true);
    let t: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    let rounds = t["rounds"].as_u64().unwrap();
    assert_eq!(rounds as usize, t["per_round"].as_array().unwrap().len());
    assert_eq!(rounds, report["resources"]["rounds"].as_f64().unwrap() as u64);
    assert!(t["per_round"][0]["machine_loads"].is_array());
    assert!(t["violations"].as_array().unwrap().is_empty());
}

#[test]
fn memory_violations_fail_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    std::fs::write(&cfg, "n = 200\nd = 30\nbase_threshold = 4\nmemory_c = 0.001\n").unwrap();
    let out = edcs()
        .args(["run", "--experiment", "mpc-full", "--seeds", "0..2", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let mut r = csv::Reader::from_reader(out.stdout.as_slice());
    assert!(r.records().all(|rec| rec.unwrap()[16].parse::<usize>().unwrap() > 0));
}
