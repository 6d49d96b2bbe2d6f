use std::process::{Command, Output};

fn medial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_medial")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["key", "s", "t", "group_order", "N", "verdict", "aut_order", "seconds"]
    );
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn table1_rows() {
    let o = medial(&["table1", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    let got: Vec<(&str, &str, &str)> = rows.iter().map(|r| (r[3].as_str(), r[4].as_str(), r[5].as_str())).collect();
    assert_eq!(
        got,
        [
            ("108", "18", "3+"),
            ("324", "54", "ss-(4,3)"),
            ("240", "40", "3+"),
            ("720", "120", "ss-(3,3)"),
            ("2916", "486", "3+"),
            ("41472", "6912", "undecided"),
            ("241920", "40320", "undecided"),
        ]
    );
    assert!(rows.iter().all(|r| r[7].is_empty()));
}

#[test]
fn table1_extended_decides_row_six() {
    let o = medial(&["table1", "--extended", "--timing", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row6 = text.lines().find(|l| l.contains("6912")).unwrap();
    assert!(row6.contains("ss-(3,3)") && row6.contains("41472"), "{row6}");
    assert!(text.starts_with("| key | s | t |"));
}

#[test]
fn gray_verify_reports_the_index() {
    let o = medial(&["gray-verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("isomorphic to the cubelet/column graph: true"));
    assert!(text.contains("|Aut|: 1296"));
    assert!(text.contains("index of the polytope group in Aut: 4"));
    let digest = text.lines().find_map(|l| l.strip_prefix("witness sha256: ")).unwrap();
    assert_eq!(digest.len(), 64);
}

#[test]
fn classify_key_and_graph_file() {
    let o = medial(&["classify", "universal:3,6:1,1:3,0"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0][5], "ss-(4,3)");
    assert!(stderr(&o).contains("vertex orbits: 2"));

    let dir = std::env::temp_dir().join(format!("medial-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (format, name) in [("adj", "g.adj"), ("graph6", "g.g6")] {
        let path = dir.join(name);
        let path = path.to_str().unwrap();
        let o = medial(&["build", "universal:3,6:1,1:1,1", "--format", format, "-o", path]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let o = medial(&["classify", "--graph", path]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let rows = csv_rows(&stdout(&o));
        assert_eq!((rows[0][4].as_str(), rows[0][5].as_str(), rows[0][6].as_str()), ("18", "3+", "216"));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn dot_export() {
    let o = medial(&["build", "eisenstein:m=3:A=", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches(" -- ").count(), 81);
}

#[test]
fn build_summaries() {
    let o = medial(&["build", "toroidal:3,6:2,0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("vertices: 4, edges: 12, faces: 8"));
    assert!(text.contains("enumerated group order: 48"));

    let o = medial(&["build", "eisenstein:m=(1-w)*(1+3w):A="]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).to_lowercase().contains("chiral"));
}

#[test]
fn exit_codes() {
    let undecided = medial(&["classify", "universal:3,6:3,0:4,0"]);
    assert_eq!(undecided.status.code(), Some(2));
    assert!(csv_rows(&stdout(&undecided))[0][5].starts_with("undecided"));

    let overflow = medial(&["build", "universal:3,6:3,0:2,2", "--max-cosets", "1000"]);
    assert_eq!(overflow.status.code(), Some(2));
    assert!(stderr(&overflow).contains("1000"));

    let open_case = medial(&["build", "universal:3,6:9,9:9,0", "--max-cosets", "100000"]);
    assert_eq!(open_case.status.code(), Some(2));

    let bad_key = medial(&["build", "bogus"]);
    assert_eq!(bad_key.status.code(), Some(4));
    assert!(stderr(&bad_key).contains("bogus"));

    assert_eq!(medial(&["build", "eisenstein:m=1+w:A="]).status.code(), Some(4));
    assert_eq!(medial(&["table1", "--jobs", "0"]).status.code(), Some(4));
    assert_eq!(medial(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(medial(&["classify", "--graph", "/nonexistent/graph.adj"]).status.code(), Some(4));
}

#[test]
fn config_file_sets_limits() {
    let path = std::env::temp_dir().join(format!("medial-config-{}.conf", std::process::id()));
    std::fs::write(&path, "# tight\nmax_vertices = 20\n").unwrap();
    let o = medial(&["classify", "universal:3,6:1,1:3,0", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    // flags override the file
    let o = medial(&["classify", "universal:3,6:1,1:3,0", "--config", path.to_str().unwrap(), "--max-vertices", "100"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&path, "colour = red\n").unwrap();
    assert_eq!(medial(&["table1", "--config", path.to_str().unwrap()]).status.code(), Some(4));
    std::fs::remove_file(&path).unwrap();
}
