use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use splice_rank::cfk::{corpus, random_complex, ComplexFile};
use splice_rank::duality::{geometric_package, relation_failures, TauMaps};
use splice_rank::gf2::Gf2Matrix;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_splice-rank"));
    c.env_remove("SPLICE_RANK_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), v)
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn unknot_splice_is_one() {
    let (code, v) = json(&["splice", "unknot", "unknot"]);
    assert_eq!(code, 0);
    assert_eq!(v["pairs"][0]["analysis"]["rank"]["h"], 1);
    assert_eq!(v["passed"], true);
}

#[test]
fn trefoil_with_unknot_recovers_the_ambient_rank() {
    let (code, v) = json(&["splice", "trefoil_staircase", "unknot"]);
    assert_eq!(code, 0);
    assert_eq!(v["pairs"][0]["analysis"]["rank"]["h"], v["knots"][0]["ambient_rank"]);
    assert_eq!(v["knots"][0]["ambient_rank"], 1);
}

#[test]
fn trefoil_pair_matches_the_known_rank() {
    let (code, v) = json(&["splice", "trefoil_staircase", "trefoil_staircase"]);
    assert_eq!(code, 0);
    let rank = &v["pairs"][0]["analysis"]["rank"];
    assert_eq!(
        (rank["h"].as_u64(), rank["ker"].as_u64(), rank["coker"].as_u64()),
        (Some(7), Some(3), Some(4))
    );
    assert_eq!(v["pairs"][0]["odd"], true);
}

#[test]
fn json_output_is_byte_stable() {
    for args in [
        &["--json", "splice", "torus_2_5", "fig8_box"][..],
        &["--json", "fuzz", "--seed", "3", "--count", "12", "--max-gen", "6"][..],
    ] {
        let a = run(args);
        let b = bin().args(args).env("SPLICE_RANK_THREADS", "3").output().unwrap();
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(a.status.success());
    }
}

#[test]
fn every_subcommand_passes_on_the_corpus() {
    for cmd in ["validate", "hfk", "package", "profile", "lemmas"] {
        for name in ["unknot", "trefoil_staircase", "fig8_box", "mirror:torus_3_4"] {
            let out = run(&[cmd, name]);
            assert!(
                out.status.success(),
                "{cmd} {name}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            assert!(String::from_utf8_lossy(&out.stdout).ends_with("result: pass\n"));
        }
    }
}

#[test]
fn hfk_report_lists_ranks() {
    let (code, v) = json(&["hfk", "trefoil_staircase"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["hfk"], serde_json::json!({"-1": 1, "0": 1, "1": 1}));
}

#[test]
fn corpus_list_names_every_entry() {
    let (code, v) = json(&["corpus", "list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["details"]["names"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n.as_str().unwrap())
        .collect();
    assert!(names.contains(&"unknot") && names.contains(&"torus_3_5"));
}

#[test]
fn files_are_read_like_corpus_names() {
    let f = temp_json(&corpus("torus_2_5").unwrap().to_json());
    let path = f.path().to_str().unwrap();
    let (code, v) = json(&["splice", path, "unknot"]);
    assert_eq!(code, 0);
    assert_eq!(v["pairs"][0]["analysis"]["rank"]["h"], 1);
}

#[test]
fn malformed_input_exits_two() {
    let f = temp_json("{ \"name\": \"x\", \"generators\": [ ");
    let out = run(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("input error"));
}

#[test]
fn unknown_fields_are_reported_with_their_path() {
    let f = temp_json(r#"{"name": "x", "generators": [{"id": "e", "alexander": 0, "colour": 1}]}"#);
    let out = run(&["hfk", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/generators/0/colour"));
}

#[test]
fn unknown_name_exits_two() {
    let out = run(&["package", "no_such_knot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn asymmetric_complex_exits_two() {
    let f = temp_json(r#"{"name": "lopsided", "generators": [{"id": "e", "alexander": 1}]}"#);
    let out = run(&["package", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

/// A complex that is valid but models no knot fails the checks that hold
/// for knots.
#[test]
fn non_knot_complex_exits_one() {
    let c = (0..500)
        .map(|s| random_complex(s, 6))
        .find(|c| geometric_package(c).is_ok_and(|p| !p.parity_holds()))
        .expect("a random complex without knot parity");
    let f = temp_json(&c.to_json());
    let (code, v) = json(&["package", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
    assert!(v["suite"]["rank parity"]["failed"].as_u64() == Some(1));
}

/// The input supplied the duality maps, so a broken relation rejects the input.
#[test]
fn inconsistent_override_exits_two() {
    let k = corpus("trefoil_staircase").unwrap();
    let p = geometric_package(&k).unwrap();
    let n = p.tau.tau1.rows();
    let broken = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let swap = Gf2Matrix::from_fn(n, n, |r, c| {
                let r = if r == i {
                    j
                } else if r == j {
                    i
                } else {
                    r
                };
                r == c
            });
            &swap * &p.tau.tau1
        })
        .find(|t1| {
            let tau = TauMaps {
                tau1: t1.clone(),
                ..p.tau.clone()
            };
            !relation_failures(&p.maps, &tau).is_empty()
        })
        .expect("some swap breaks a relation");
    let mut file = ComplexFile::from_complex(&k);
    file.tau_override = Some(splice_rank::cfk::TauOverride {
        tau0: p.tau.tau0.clone(),
        tau1: broken,
        tau_inf: p.tau.tau_inf.clone(),
    });
    let f = temp_json(&file.to_json());
    for args in [
        &["package", f.path().to_str().unwrap()][..],
        &["splice", f.path().to_str().unwrap(), "unknot"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stderr).contains("tau_override rejected"));
    }
}

#[test]
fn bad_thread_count_exits_two() {
    for v in ["0", "-1", "many"] {
        let out = bin()
            .args(["corpus", "list"])
            .env("SPLICE_RANK_THREADS", v)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2), "{v}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("SPLICE_RANK_THREADS"));
    }
}

#[test]
fn fuzz_reports_seed_and_passes() {
    let (code, v) = json(&["fuzz", "--seed", "5", "--count", "16", "--max-gen", "6"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["seed"], 5);
    assert_eq!(v["details"]["config"]["count"], 16);
    assert!(v["suite"]["cancel keeps kernel and cokernel"]["passed"].as_u64() == Some(16));
}
