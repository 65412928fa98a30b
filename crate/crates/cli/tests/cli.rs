use std::path::PathBuf;

use jsonschema::JSONSchema;
use proptest::prelude::*;
use serde_json::Value;

use pythagorean_cli::csv_io::{
    read_basket, read_distribution, read_points, read_weighted, write_basket, write_distribution, write_points,
    write_weighted,
};
use pythagorean_cli::main_with_args;
use pythagorean_core::ellipse::PointCloud2D;
use pythagorean_core::index::{BasketEntry, IndexBasket};
use pythagorean_core::predictor::EmpiricalDistribution;
use pythagorean_core::WeightedSample;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn pythag(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("pythag").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = pythag(&full);
    assert_eq!(o.code, 0, "stderr: {}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

fn schema() -> JSONSchema {
    let text = std::fs::read_to_string(root().join("schemas/report.schema.json")).unwrap();
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn mean_of(report: &Value, key: &str, mean: &str) -> f64 {
    report[key]
        .as_array()
        .unwrap()
        .iter()
        .find(|m| m["mean"] == mean)
        .unwrap()["value"]
        .as_f64()
        .unwrap()
}

fn all_invocations() -> Vec<Vec<String>> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        s(&["means", "--input", &fixture("temps.csv")]),
        s(&["means", "--input", &fixture("grades.csv"), "--mean", "gm,hm"]),
        s(&["hyperrect", "--input", &fixture("temps.csv")]),
        s(&["hyperrect", "--input", &fixture("temps.csv"), "--mean", "am"]),
        s(&["attraction"]),
        s(&["attraction", "--start", "0.1", "--end", "10", "--step", "0.1"]),
        s(&["attraction", "--input", &fixture("grades.csv"), "--weighted", "gaussian"]),
        s(&["attraction", "--input", &fixture("temps.csv"), "--weighted", "cauchy"]),
        s(&["velocity", "--x", "0.1"]),
        s(&["predict", "--input", &fixture("noshows.csv")]),
        s(&["predict", "--input", &fixture("noshows.csv"), "--transform", "log", "--base", "500", "--penalty", "5"]),
        s(&["index", "--input", &fixture("cpi2017.csv")]),
        s(&["ellipse", "--input", &fixture("cloud.csv")]),
        s(&["ellipse", "--input", &fixture("cloud.csv"), "--scale", "1", "--mean", "am,hm"]),
    ]
}

#[test]
fn every_json_report_matches_the_schema() {
    let schema = schema();
    for args in all_invocations() {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let report = json(&refs);
        let msgs: Vec<String> = match schema.validate(&report) {
            Ok(()) => Vec::new(),
            Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
        };
        assert!(msgs.is_empty(), "{:?}: {}", args, msgs.join("; "));
    }
}

#[test]
fn output_is_deterministic_in_every_format() {
    for args in all_invocations() {
        for format in ["text", "json", "csv"] {
            let mut refs: Vec<&str> = args.iter().map(String::as_str).collect();
            refs.extend(["--format", format]);
            let (a, b) = (pythag(&refs), pythag(&refs));
            assert_eq!(a.code, 0, "{:?}: {}", refs, a.stderr);
            assert!(!a.stdout.is_empty());
            assert_eq!(a.stdout, b.stdout, "{:?}", refs);
        }
    }
}

#[test]
fn means_of_the_temperature_fixture() {
    let r = json(&["means", "--input", &fixture("temps.csv")]);
    assert_eq!(r["command"], "means");
    assert_eq!(mean_of(&r, "means", "arithmetic"), 209.0);
    assert!((mean_of(&r, "means", "geometric") - 27.0790).abs() < 1e-4);
    assert!((mean_of(&r, "means", "harmonic") - 13.3564).abs() < 1e-4);

    let text = pythag(&["means", "--input", &fixture("temps.csv")]);
    assert!(text.stdout.contains("209.00"));
    assert!(text.stdout.contains("13.36"));
}

#[test]
fn mean_filter_restricts_the_report() {
    let r = json(&["means", "--input", &fixture("temps.csv"), "--mean", "hm"]);
    let means = r["means"].as_array().unwrap();
    assert_eq!(means.len(), 1);
    assert_eq!(means[0]["mean"], "harmonic");
}

#[test]
fn predict_reciprocal_on_no_shows() {
    let r = json(&["predict", "--input", &fixture("noshows.csv"), "--transform", "reciprocal"]);
    let rows = r["predictions"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!((rows[0]["x_star"].as_f64().unwrap() - 1.83).abs() <= 0.01);
    assert!((rows[0]["return_star"].as_f64().unwrap() - 996.27).abs() <= 0.01);
}

#[test]
fn predict_accepts_probabilities_and_counts_alike() {
    let dir = tempfile::tempdir().unwrap();
    let probs = dir.path().join("p.csv");
    std::fs::write(&probs, "value,probability\n1,0.35\n2,0.2\n3,0.05\n4,0.1\n5,0.1\n6,0.2\n").unwrap();
    let a = json(&["predict", "--input", probs.to_str().unwrap()]);
    let b = json(&["predict", "--input", &fixture("noshows.csv")]);
    for (x, y) in a["predictions"].as_array().unwrap().iter().zip(b["predictions"].as_array().unwrap()) {
        assert!((x["x_star"].as_f64().unwrap() - y["x_star"].as_f64().unwrap()).abs() < 1e-12);
    }
}

#[test]
fn index_of_the_basket_fixture() {
    let r = json(&["index", "--input", &fixture("cpi2017.csv")]);
    assert_eq!(r["categories"], 8);
    for (key, expected) in [("arithmetic", 130.20), ("geometric", 129.40), ("harmonic", 128.50)] {
        let v = r[key].as_f64().unwrap();
        assert!((v - expected).abs() <= 0.01, "{key} = {v}");
    }
}

#[test]
fn ellipse_centers_are_ordered() {
    let r = json(&["ellipse", "--input", &fixture("cloud.csv")]);
    let fits = r["fits"].as_array().unwrap();
    let center = |kind: &str| -> Vec<f64> {
        let fit = fits.iter().find(|f| f["mean_kind"] == kind).unwrap();
        fit["center_original"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect()
    };
    let (am, gm, hm) = (center("arithmetic"), center("geometric"), center("harmonic"));
    for i in 0..2 {
        assert!(hm[i] < gm[i] && gm[i] < am[i]);
    }
}

#[test]
fn plots_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.csv");
    std::fs::write(&two, "value\n1\n4\n").unwrap();
    let cases: Vec<(&str, Vec<String>)> = vec![
        ("hyper.svg", vec!["hyperrect".into(), "--input".into(), two.to_string_lossy().into_owned()]),
        ("attr.svg", vec!["attraction".into()]),
        ("vel.svg", vec!["velocity".into(), "--x".into(), "0.1".into()]),
        ("pred.svg", vec!["predict".into(), "--input".into(), fixture("noshows.csv")]),
        ("ell.svg", vec!["ellipse".into(), "--input".into(), fixture("cloud.csv")]),
    ];
    for (name, mut args) in cases {
        let path = dir.path().join(name);
        args.extend(["--plot".into(), path.to_string_lossy().into_owned()]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = pythag(&refs);
        assert_eq!(o.code, 0, "{name}: {}", o.stderr);
        let svg = std::fs::read_to_string(&path).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"), "{name}");
    }
}

#[test]
fn two_edge_hyperrect_carries_the_circle_and_agm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.csv");
    std::fs::write(&path, "value\n1\n4\n").unwrap();
    let r = json(&["hyperrect", "--input", path.to_str().unwrap()]);
    assert_eq!(r["circle"]["chord_hg"].as_f64().unwrap(), 2.0);
    let agm = r["agm"]["value"].as_f64().unwrap();
    assert!(agm > 2.0 && agm < 2.5);
}

#[test]
fn exit_codes() {
    assert_eq!(pythag(&["--help"]).code, 0);
    assert_eq!(pythag(&["--version"]).code, 0);
    assert_eq!(pythag(&[]).code, 1);
    assert_eq!(pythag(&["means"]).code, 1);
    assert_eq!(pythag(&["means", "--input", &fixture("temps.csv"), "--format", "xml"]).code, 1);
    assert_eq!(pythag(&["velocity", "--x", "1.5"]).code, 1);
    assert_eq!(pythag(&["means", "--input", &fixture("temps.csv"), "--plot", "x.svg"]).code, 1);
    assert_eq!(pythag(&["hyperrect", "--input", &fixture("temps.csv"), "--plot", "x.svg"]).code, 1);

    let missing = pythag(&["means", "--input", "/nonexistent/data.csv"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("/nonexistent/data.csv"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "value,weight\n1,1\n2,-1\n").unwrap();
    let o = pythag(&["means", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains(":3:"), "{}", o.stderr);

    let neg = dir.path().join("neg.csv");
    std::fs::write(&neg, "value\n1\n-2\n").unwrap();
    assert_eq!(pythag(&["means", "--input", neg.to_str().unwrap(), "--mean", "gm"]).code, 2);

    let dup = dir.path().join("dup.csv");
    std::fs::write(&dup, "value,count\n1,3\n1,4\n").unwrap();
    let o = pythag(&["predict", "--input", dup.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weighted_csv_round_trip(p in prop::collection::vec((-1e6f64..1e6, 0.0f64..10.0), 1..20)) {
        let (mut v, mut w): (Vec<f64>, Vec<f64>) = p.into_iter().unzip();
        w[0] += 1.0;
        v[0] = v[0].abs() + 1.0;
        let s = WeightedSample::new(v, w).unwrap();
        let mut buf = Vec::new();
        write_weighted(&mut buf, &s).unwrap();
        let back = read_weighted(buf.as_slice(), "mem").unwrap();
        prop_assert_eq!(back.values(), s.values());
        prop_assert_eq!(back.weights(), s.weights());
    }

    #[test]
    fn distribution_csv_round_trip(counts in prop::collection::vec(0.1f64..100.0, 1..10)) {
        let d = EmpiricalDistribution::from_counts(
            counts.iter().enumerate().map(|(i, &c)| (0.5 + i as f64, c)).collect(),
        ).unwrap();
        let mut buf = Vec::new();
        write_distribution(&mut buf, &d).unwrap();
        let back = read_distribution(buf.as_slice(), "mem").unwrap();
        prop_assert_eq!(back.outcomes(), d.outcomes());
    }

    #[test]
    fn basket_csv_round_trip(idx in prop::collection::vec(50.0f64..200.0, 1..8)) {
        let n = idx.len() as f64;
        let b = IndexBasket::new(
            idx.iter().enumerate().map(|(i, &v)| BasketEntry {
                category: format!("cat, \"{i}\""),
                weight: 1.0 / n,
                sub_index: v,
            }).collect(),
        ).unwrap();
        let mut buf = Vec::new();
        write_basket(&mut buf, &b).unwrap();
        let back = read_basket(buf.as_slice(), "mem").unwrap();
        prop_assert_eq!(back.entries(), b.entries());
    }

    #[test]
    fn points_csv_round_trip(pts in prop::collection::vec((0.1f64..100.0, 0.1f64..100.0), 3..30)) {
        let Ok(cloud) = PointCloud2D::new(pts.iter().map(|&(x, y)| [x, y]).collect()) else {
            return Ok(());
        };
        let mut buf = Vec::new();
        write_points(&mut buf, &cloud).unwrap();
        let back = read_points(buf.as_slice(), "mem").unwrap();
        prop_assert_eq!(back.points(), cloud.points());
    }
}
