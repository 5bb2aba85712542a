use pathwork::cli::{run_command, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use pathwork::corpus;

fn fixture_path(name: &str) -> String {
    format!("{}/corpus/{name}.cat", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn on_disk_fixtures_match_bundled_copies() {
    for (name, text) in corpus::FILES {
        let disk = std::fs::read_to_string(fixture_path(name)).unwrap();
        assert_eq!(disk, text, "{name}");
    }
}

#[test]
fn every_expectation_matches_the_exit_code() {
    let mut checked = 0;
    for (name, model) in corpus::all() {
        for (check, &pass) in &model.expect {
            let words = corpus::command_for(check).unwrap_or_else(|| panic!("{name}: unknown check {check}"));
            let mut argv = vec!["pathwork".to_string()];
            argv.extend(words.iter().map(|w| w.to_string()));
            argv.push(fixture_path(name));
            let out = run_command(argv);
            let want = if pass { EXIT_PASS } else { EXIT_FAIL };
            assert_eq!(out.code, want, "{name} {check}\n{}{}", out.stdout, out.stderr);
            checked += 1;
        }
    }
    assert_eq!(checked, 88, "expectation count changed");
}

#[test]
fn corrupted_fixtures_name_their_culprit() {
    for (name, culprit) in [("arrow-alleq", "a_b"), ("diamond-bigeq", "bot_l"), ("chain3-nofib", "c0_c2")] {
        let out = run_command(["pathwork", "check", "path-axioms", &fixture_path(name)]);
        assert_eq!(out.code, EXIT_FAIL, "{name}");
        assert!(out.stdout.contains(culprit), "{name}: {}", out.stdout);
    }
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = run_command(["pathwork", "validate", "/nonexistent/x.cat"]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("/nonexistent/x.cat"));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(run_command(["pathwork", "frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run_command(["pathwork", "check"]).code, EXIT_USAGE);
}

#[test]
fn parse_errors_carry_positions() {
    let dir = std::env::temp_dir().join(format!("pathwork-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dangling = dir.join("dangling.cat");
    std::fs::write(&dangling, "[objects]\na\n[morphisms]\nid_a : a -> a\n[identities]\na = id_a\n[classes]\nfibration = f\n").unwrap();
    let out = run_command(["pathwork", "validate", dangling.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains(":8:13: unknown identifier `f`"), "{}", out.stderr);

    let empty = dir.join("empty.cat");
    std::fs::write(&empty, "").unwrap();
    let out = run_command(["pathwork", "validate", empty.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains(":1:1: missing objects section"), "{}", out.stderr);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn report_file_is_written() {
    let dir = std::env::temp_dir().join(format!("pathwork-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = run_command([
        "pathwork",
        "--report",
        path.to_str().unwrap(),
        "check",
        "dmpc",
        &fixture_path("diamond"),
    ]);
    assert_eq!(out.code, EXIT_PASS);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["verdict"]["pass"], serde_json::Value::Bool(true));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn factorize_lift_and_synthesize_run() {
    let out = run_command(["pathwork", "factorize", &fixture_path("chain3"), "c0_c2"]);
    assert_eq!(out.code, EXIT_PASS, "{}{}", out.stdout, out.stderr);
    let out = run_command(["pathwork", "factorize", &fixture_path("chain3"), "nope"]);
    assert_eq!(out.code, EXIT_USAGE);
    let out = run_command(["pathwork", "lift", &fixture_path("arrow"), "nope,a,b,c"]);
    assert_eq!(out.code, EXIT_USAGE);
    let out = run_command(["pathwork", "synthesize", "pf", &fixture_path("chain3"), "c0_c2"]);
    assert!(out.code == EXIT_PASS || out.code == EXIT_FAIL, "{}", out.stderr);
}
