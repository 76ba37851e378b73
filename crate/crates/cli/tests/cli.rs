use std::path::Path;
use std::process::{Command, Output};

use hexbubble::find_alpha0;
use serde_json::Value;

fn hexbubble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexbubble"))
        .args(args)
        .env_remove("HEXBUBBLE_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output_record.schema.json");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&doc).unwrap()
}

fn solve_json(alpha: &str) -> Value {
    let o = hexbubble(&["solve", "--alpha", alpha]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    v
}

fn num(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn solve_cases() {
    assert_eq!(solve_json("0.05")["case"], "embedded");
    let k = solve_json("1");
    assert_eq!(k["case"], "kissing");
    assert_eq!(k["L1"], k["L2"]);
    assert!((num(&k["perimeter"]) - 6.624_09).abs() < 1e-5);

    let bad = hexbubble(&["solve", "--alpha", "1.5"]);
    assert_eq!(code(&bad), 2);
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
    assert_eq!(code(&hexbubble(&["solve", "--alpha", "-1"])), 2);
    assert_eq!(code(&hexbubble(&["solve"])), 2);
}

#[test]
fn record_numbers_keep_twelve_digits() {
    let v = solve_json("0.3");
    let r = hexbubble::solve(0.3).unwrap();
    for (field, exact) in [("perimeter", r.perimeter), ("kissing_perimeter", r.kissing_perimeter)] {
        let s = v[field].as_str().unwrap();
        assert_eq!(s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count(), 12);
        assert!((num(&v[field]) - exact).abs() <= 5e-12 * exact);
    }
    let sol = &v["solutions"][0];
    let area = |b: &Value| {
        let pts: Vec<(f64, f64)> =
            b["vertices"].as_array().unwrap().iter().map(|p| (num(&p[0]), num(&p[1]))).collect();
        let n = pts.len();
        (0..n).map(|i| pts[i].0 * pts[(i + 1) % n].1 - pts[(i + 1) % n].0 * pts[i].1).sum::<f64>() / 2.0
    };
    assert!((area(&sol["bubble_a"]) - 1.0).abs() < 1e-9);
    assert!((area(&sol["bubble_b"]) - 0.3).abs() < 1e-9);
}

#[test]
fn transition_reports_both() {
    let a0 = format!("{}", find_alpha0().unwrap());
    let v = solve_json(&a0);
    assert_eq!(v["case"], "both");
    assert_eq!(v["solutions"].as_array().unwrap().len(), 2);
    let text = stdout(&hexbubble(&["solve", "--alpha", &a0, "--format", "text"]));
    assert!(text.contains("[embedded]") && text.contains("[kissing]"));
}

#[test]
fn sweep_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let p = path.to_str().unwrap();
    let o = hexbubble(&["sweep", "--from", "0.01", "--to", "1", "--steps", "100", "--out", p]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 101);
    assert!(csv.starts_with("alpha,case,perimeter,L1,L2\n"));
    assert!(csv.lines().last().unwrap().starts_with("1.00000000000,kissing,"));

    let missing = dir.path().join("no/such/dir/sweep.csv");
    let o = hexbubble(&["sweep", "--from", "0.1", "--to", "1", "--steps", "3", "--out", missing.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&hexbubble(&["sweep", "--from", "0.5", "--to", "0.1", "--steps", "3"])), 2);
    assert_eq!(code(&hexbubble(&["sweep", "--from", "0", "--to", "1", "--steps", "3"])), 2);
}

#[test]
fn verify_quick() {
    let o = hexbubble(&["verify", "--suite", "quick", "--seed", "9"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let report = stdout(&o);
    assert!(report.starts_with("verify suite=quick seed=9\n"));
    assert!(report.contains("PASS p3-dominance"));
    assert!(!report.contains("FAIL"));

    let env = Command::new(env!("CARGO_BIN_EXE_hexbubble"))
        .args(["verify", "--seed", "9"])
        .env("HEXBUBBLE_SEED", "4")
        .output()
        .unwrap();
    assert_eq!(code(&env), 0);
    assert!(stdout(&env).starts_with("verify suite=quick seed=4\n"));

    let bad = Command::new(env!("CARGO_BIN_EXE_hexbubble"))
        .args(["verify"])
        .env("HEXBUBBLE_SEED", "many")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 2);
    assert_eq!(code(&hexbubble(&["verify", "--suite", "huge"])), 2);
}

#[test]
fn flipped_p3_fails_verification() {
    use hexbubble_cli::commands::cmd_verify;
    use hexbubble_cli::verify::{p3_sign_flipped, Hooks, Suite};
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let r = cmd_verify(Suite::Quick, 1, &Hooks { p3: p3_sign_flipped }, &mut out, &mut err);
    assert_eq!(hexbubble_cli::exit_code(&r), 1);
    let err = String::from_utf8(err).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("failed check p3-dominance: alpha="), "{err}");
    assert!(String::from_utf8(out).unwrap().contains("FAIL p3-dominance"));
}

fn render(alpha: &str) -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.svg");
    let o = hexbubble(&["render", "--alpha", alpha, "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    std::fs::read_to_string(path).unwrap()
}

fn polygon_points(svg: &str) -> Vec<Vec<(f64, f64)>> {
    svg.match_indices("<polygon")
        .map(|(i, _)| {
            let start = i + svg[i..].find("points=\"").unwrap() + 8;
            let end = start + svg[start..].find('"').unwrap();
            svg[start..end]
                .split(' ')
                .map(|xy| {
                    let (x, y) = xy.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect()
        })
        .collect()
}

#[test]
fn render_figures() {
    let kiss = render("1");
    assert!(kiss.starts_with("<?xml") && kiss.contains("<svg") && kiss.trim_end().ends_with("</svg>"));
    let polys = polygon_points(&kiss);
    assert_eq!(polys.len(), 2);
    // congruent: one is the other reflected across the shared side
    let mut ys: Vec<Vec<f64>> = polys.iter().map(|p| p.iter().map(|v| v.1).collect()).collect();
    for y in &mut ys {
        y.sort_by(f64::total_cmp);
    }
    let span = |y: &Vec<f64>| y[y.len() - 1] - y[0];
    assert!((span(&ys[0]) - span(&ys[1])).abs() < 1e-3);

    let notch = render("0.05");
    let polys = polygon_points(&notch);
    assert_eq!(polys.len(), 2);
    assert_eq!(polys[0].len(), 8);
    assert_eq!(polys[1].len(), 6);

    let both = render(&format!("{}", find_alpha0().unwrap()));
    assert_eq!(polygon_points(&both).len(), 4);
    assert!(both.contains("embedded") && both.contains("kissing"));

    let o = hexbubble(&["render", "--alpha", "0.5", "--out", "/nonexistent/dir/fig.svg"]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&hexbubble(&["render", "--alpha", "2", "--out", "x.svg"])), 2);
}

#[test]
fn iso() {
    let one = stdout(&hexbubble(&["iso", "--volume", "1"]));
    let four = stdout(&hexbubble(&["iso", "--volume", "4"]));
    let parse = |s: &str| -> Vec<f64> { s.lines().map(|l| l.split(' ').nth(1).unwrap().parse().unwrap()).collect() };
    let (a, b) = (parse(&one), parse(&four));
    assert!((a[1] - 2.0 * 2f64.sqrt() * 3f64.powf(0.25)).abs() < 1e-10);
    assert!((b[0] - 2.0 * a[0]).abs() < 1e-10 && (b[1] - 2.0 * a[1]).abs() < 1e-10);
    assert_eq!(code(&hexbubble(&["iso", "--volume", "0"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hex.svg");
    let o = hexbubble(&["iso", "--volume", "1", "--svg", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let svg = std::fs::read_to_string(path).unwrap();
    assert_eq!(polygon_points(&svg)[0].len(), 6);
}
