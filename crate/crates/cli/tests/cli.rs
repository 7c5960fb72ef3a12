use std::process::{Command, Output};

fn bnchain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnchain"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bounds_for_nets_at_genus_34() {
    let o = bnchain(&["bounds", "--g", "34", "--r", "2", "--d", "24", "--g1", "16", "--g2", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("existence range: [5, 12]"), "{s}");
    assert!(s.contains("nonexistence threshold: 13"), "{s}");
}

#[test]
fn bounds_json_fields() {
    let o = bnchain(&[
        "bounds", "--g", "34", "--r", "2", "--d", "24", "--g1", "17", "--g2", "15", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["nonexistence_threshold"], 14);
    assert_eq!(v["existence_range"]["min"], 7);
}

#[test]
fn necessary_search_reports_not_exists() {
    let o = bnchain(&[
        "search", "--tcbe", "g1=2,g2=2,t=5", "--r", "1", "--d", "3", "--mode", "crude", "--criterion", "necessary",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: NotExists"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("elapsed"));
}

#[test]
fn witness_json_round_trips_through_the_grammar() {
    let o = bnchain(&["search", "--chain", "tail:2,ell:3,ell:3,tail:2", "--r", "1", "--d", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "Exists");
    let comps = v["witness"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 4);
    assert_eq!(comps[1]["class_k"], 0);
    assert_eq!(comps[1]["seq_left"], serde_json::json!([0, 3]));
}

#[test]
fn candidate_cap_gives_undetermined() {
    let o = bnchain(&[
        "search", "--tcbe", "g1=16,g2=16,t=12", "--r", "2", "--d", "24", "--candidate-cap", "10",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("Undetermined"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    for args in [
        &["search", "--chain", "tail:1,ell:3,tail:2", "--r", "1", "--d", "3"][..],
        &["search", "--chain", "tail:2,ell:3,ell:4,tail:2", "--r", "1", "--d", "3"],
        &["search", "--tcbe", "g1=2,g2=2,t=3", "--chain", "tail:2,ell:3,tail:2", "--r", "1", "--d", "3"],
        &["search", "--tcbe", "g1=2,g2=2,t=3", "--r", "1", "--d", "3", "--jobs", "0"],
        &["frobnicate"],
    ] {
        let o = bnchain(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn table_matches_golden() {
    let md = bnchain(&["table34", "--format", "md"]);
    assert_eq!(stdout(&md), include_str!("golden/table34.md"));
    let csv = bnchain(&["table34", "--format", "csv"]);
    assert_eq!(stdout(&csv), include_str!("golden/table34.csv"));
}

#[test]
fn sweep_csv_has_no_existence_past_threshold() {
    let o = bnchain(&["sweep", "--g-max", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let (t, th, verdict) = (col("t"), col("threshold"), col("verdict"));
    let mut rows = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (tv, thv): (u32, u32) = (f[t].parse().unwrap(), f[th].parse().unwrap());
        if tv >= 4 && tv >= thv {
            assert_ne!(f[verdict], "Exists", "{line}");
        }
        rows += 1;
    }
    assert!(rows > 0);
}

#[test]
fn oracle_checks_a_small_curve() {
    let o = bnchain(&["oracle", "--t", "3", "--d", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
