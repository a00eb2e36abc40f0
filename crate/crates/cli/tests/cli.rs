use std::io::Write;
use std::process::{Command, Output};

fn gf2bell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gf2bell"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_all_matches_golden() {
    let first = gf2bell(&["verify-all"]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert_eq!(stdout(&first), include_str!("golden/verify_all.txt"));
    let second = gf2bell(&["verify-all"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_all_json_matches_golden() {
    let o = gf2bell(&["--json", "verify-all"]);
    assert_eq!(stdout(&o), include_str!("golden/verify_all.json"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e["status"] != "fail"));
    assert!(entries.iter().any(|e| e["status"] == "known_typo"));
}

#[test]
fn factor_prints_product_form() {
    let o = gf2bell(&["factor", "x^2+x"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "x * (x+1)\n"));
    let o = gf2bell(&["factor", "x^2+1"]);
    assert_eq!(stdout(&o), "(x+1)^2\n");
    let o = gf2bell(&["--json", "factor", "x^3+x+1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["irreducible"], true);
}

#[test]
fn chsh_standard_settings() {
    let o = gf2bell(&["--json", "chsh", "--state", "phi+", "--angles", "0,90,45,-45"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let s = v["report"]["s"].as_f64().unwrap();
    assert!((s - 2.828427).abs() < 1e-6);
    let o = gf2bell(&["chsh", "--box", "pr"]);
    assert!(stdout(&o).contains("S                 4.000000"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gf2bell(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gf2bell(&["factor", "--bogus"]).status.code(), Some(2));
    assert_eq!(gf2bell(&["factor", "x^"]).status.code(), Some(2));
    assert_eq!(gf2bell(&["chsh", "--angles", "0,90"]).status.code(), Some(2));
    assert_eq!(gf2bell(&["sat", "--expand", "3", "--delete", "8"]).status.code(), Some(2));
}

#[test]
fn sat_round_trips_dimacs() {
    let o = gf2bell(&["sat", "--expand", "3", "--dimacs"]);
    let text = stdout(&o);
    assert!(text.starts_with("p cnf 3 8\n"));
    let dir = std::env::temp_dir().join(format!("gf2bell-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("deleted.cnf");
    let o = gf2bell(&["sat", "--expand", "3", "--delete", "7", "--dimacs"]);
    std::fs::write(&path, &o.stdout).unwrap();
    let o = gf2bell(&["sat", "--file", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("s SATISFIABLE\nv 1 2 3 0\n"), "{}", stdout(&o));
    assert!(stdout(&gf2bell(&["sat"])).contains("s UNSATISFIABLE"));
}

#[test]
fn config_caps_are_enforced() {
    let dir = std::env::temp_dir().join(format!("gf2bell-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("caps.conf");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# tight limits\nsat_variables = 2\ntruth_table_width=2").unwrap();
    let cfg = path.to_str().unwrap();
    assert_eq!(gf2bell(&["--config", cfg, "sat", "--expand", "3"]).status.code(), Some(1));
    assert_eq!(gf2bell(&["--config", cfg, "permute", "-n", "3"]).status.code(), Some(1));
    assert_eq!(gf2bell(&["--config", cfg, "verify-all"]).status.code(), Some(1));
    std::fs::write(&path, "colour = on\n").unwrap();
    assert_eq!(gf2bell(&["--config", cfg, "factor", "x"]).status.code(), Some(2));
}

#[test]
fn poset_outputs() {
    let csv = stdout(&gf2bell(&["poset"]));
    assert_eq!(csv.lines().count(), 9);
    assert!(csv.contains("\n101,x^2+1,010,x\n"));
    let dot = stdout(&gf2bell(&["poset", "--dot"]));
    assert!(dot.starts_with("digraph") && dot.matches(" -> ").count() == 12);
}

#[test]
fn permute_and_tables() {
    let o = gf2bell(&["permute", "-n", "1", "-f", "identity"]);
    assert_eq!(stdout(&o), "a,x,a',x'\n0,0,0,0\n0,1,0,1\n1,0,1,1\n1,1,1,0\n");
    let o = gf2bell(&["permute", "--matrix"]);
    assert_eq!(stdout(&o), "[[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]]\n");
    // the literal AND reading is not a permutation
    assert_eq!(gf2bell(&["permute", "--mode", "and", "--matrix"]).status.code(), Some(2));
    let o = gf2bell(&["tables", "--op", "and"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("known_typo").count(), 2);
    let o = gf2bell(&["tables", "--modulus", "x^4+x+1", "--op", "xor", "--csv"]);
    assert_eq!(stdout(&o).lines().count(), 17);
}

#[test]
fn bell_and_cauchy() {
    let o = gf2bell(&["bell", "--state", "psi-"]);
    assert!(stdout(&o).starts_with("psi-  1/√2 (|01⟩ - |10⟩)"));
    let o = gf2bell(&["--json", "cauchy", "--t", "1000", "--steps", "100000"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["normalized"].as_f64().unwrap() - 1.0).abs() < 1e-3);
    assert_eq!(gf2bell(&["cauchy", "--t", "5"]).status.code(), Some(2));
}

#[test]
fn color_is_opt_in() {
    let run = |color| {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = gf2bell_cli::run(["gf2bell", "verify-all"], &mut out, &mut err, gf2bell_cli::Output { color });
        (code, String::from_utf8(out).unwrap())
    };
    let (plain_code, plain) = run(false);
    let (color_code, colored) = run(true);
    assert_eq!((plain_code, color_code), (0, 0));
    assert!(!plain.contains('\x1b'));
    assert!(colored.contains("\x1b[32mpass"));
    assert!(!stdout(&gf2bell(&["verify-all"])).contains('\x1b'));
}
