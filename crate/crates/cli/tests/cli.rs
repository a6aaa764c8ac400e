//! End-to-end tests against the built binary.

use std::path::PathBuf;
use std::process::{Command, Output};

const REFERENCE_SCENE: &str = r#"
[hyperboloid]
a = 1.5
c = 1.6

[sphere]
center = [2.1, 2.2, 0.3]
r = 1.4

[sweep]
waypoints = [[4.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
n_steps = 200
"#;

const AXIS_TANGENT_SCENE: &str = r#"
# a^2 = 2, c^2 = 4, r^2 = 5: tangent along a circle
[hyperboloid]
a = 1.4142135623730951
c = 2.0

[sphere]
center = [0.0, 0.0, 3.0]
r = 2.23606797749979
"#;

fn write_scene(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn relpos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relpos"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_reference_scene() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(&dir, "ref.toml", REFERENCE_SCENE);
    let out = relpos(&["classify", scene.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("type: E"), "{text}");
    for root in ["1.23656", "2.09451", "4.35893"] {
        assert!(text.contains(root), "missing {root} in {text}");
    }
    assert!(text.contains("delta: -0.340702"), "{text}");
}

#[test]
fn classify_axis_tangency_scene() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(&dir, "axis.toml", AXIS_TANGENT_SCENE);
    let out = relpos(&["classify", scene.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("type: TIc"), "{text}");
    assert!(text.contains("-2.00000 (x3)"), "{text}");
}

#[test]
fn invalid_scene_exits_1_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(
        &dir,
        "bad.toml",
        &REFERENCE_SCENE.replace("r = 1.4", "r = -1.0"),
    );
    let out = relpos(&["classify", scene.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("sphere.r"), "{err}");
}

#[test]
fn parse_error_exits_1_with_line_info() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(&dir, "broken.toml", "[hyperboloid]\na = \"oops\"\n");
    let out = relpos(&["classify", scene.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn json_output_round_trips_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(&dir, "ref.toml", REFERENCE_SCENE);
    for sub in ["classify", "contact"] {
        let out = relpos(&[sub, scene.to_str().unwrap(), "--json"]);
        assert!(out.status.success());
        let text = stdout(&out);
        let trimmed = text.trim_end();
        let re_serialized = match sub {
            "classify" => {
                let report: relpos_cli::report::ClassifyReport =
                    serde_json::from_str(trimmed).unwrap();
                serde_json::to_string_pretty(&report).unwrap()
            }
            _ => {
                let report: relpos_cli::report::ContactReport =
                    serde_json::from_str(trimmed).unwrap();
                serde_json::to_string_pretty(&report).unwrap()
            }
        };
        assert_eq!(trimmed, re_serialized, "{sub} JSON is not stable");
    }
}

#[test]
fn classify_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(&dir, "ref.toml", REFERENCE_SCENE);
    let a = relpos(&["classify", scene.to_str().unwrap()]);
    let b = relpos(&["classify", scene.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_and_verify_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(&dir, "ref.toml", REFERENCE_SCENE);

    let out = relpos(&["sweep", scene.to_str().unwrap(), "--json", "--steps", "50"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let report: relpos_cli::report::SweepReportJson =
        serde_json::from_str(text.trim_end()).unwrap();
    assert_eq!(
        text.trim_end(),
        serde_json::to_string_pretty(&report).unwrap()
    );

    let out = relpos(&["verify", scene.to_str().unwrap(), "--json", "--grid", "64"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let report: relpos_cli::report::VerifyReport = serde_json::from_str(text.trim_end()).unwrap();
    assert_eq!(
        text.trim_end(),
        serde_json::to_string_pretty(&report).unwrap()
    );
}

#[test]
fn sweep_reports_the_wall_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(&dir, "ref.toml", REFERENCE_SCENE);
    let out = relpos(&["sweep", scene.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let seq: Vec<&str> = text
        .lines()
        .filter(|l| l.trim_start().starts_with('['))
        .map(|l| l.rsplit(' ').next().unwrap())
        .collect();
    assert_eq!(seq, vec!["E", "TE", "C", "TI", "I"], "{text}");
}

#[test]
fn sweep_without_section_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(&dir, "axis.toml", AXIS_TANGENT_SCENE);
    let out = relpos(&["sweep", scene.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn plot_is_deterministic_and_contains_the_section() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(&dir, "ref.toml", REFERENCE_SCENE);
    let out_a = dir.path().join("a.svg");
    let out_b = dir.path().join("b.svg");
    for out in [&out_a, &out_b] {
        let run = relpos(&["plot", scene.to_str().unwrap(), "-o", out.to_str().unwrap()]);
        assert!(run.status.success());
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "plot bytes are not deterministic");
    let text = String::from_utf8(a).unwrap();
    // circle center at (rho_c, -z_c) with rho_c = sqrt(2.1^2 + 2.2^2)
    assert!(
        text.contains(r#"cx="3.0414" cy="-0.3000" r="1.4000""#),
        "{text}"
    );
    assert!(text.contains("type: E"), "{text}");

    // axis-tangency scene: same determinism, labeled TIc
    let scene = write_scene(&dir, "axis.toml", AXIS_TANGENT_SCENE);
    let out_c = dir.path().join("c.svg");
    let out_d = dir.path().join("d.svg");
    for out in [&out_c, &out_d] {
        let run = relpos(&["plot", scene.to_str().unwrap(), "-o", out.to_str().unwrap()]);
        assert!(run.status.success());
    }
    let c = std::fs::read(&out_c).unwrap();
    assert_eq!(c, std::fs::read(&out_d).unwrap());
    assert!(String::from_utf8(c).unwrap().contains("type: TIc"));
}

#[test]
fn verify_agrees_on_reference_scene() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write_scene(&dir, "ref.toml", REFERENCE_SCENE);
    let out = relpos(&["verify", scene.to_str().unwrap(), "--grid", "256"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("agreement: yes"), "{text}");
    assert!(text.contains("exterior"), "{text}");
}

#[test]
fn posed_scene_matches_standard_scene() {
    let dir = tempfile::tempdir().unwrap();
    // rotate pi/2 about OZ and translate; the world sphere center is the
    // posed image of (2.1, 2.2, 0.3)
    let posed = r#"
[hyperboloid]
a = 1.5
c = 1.6

[hyperboloid.pose]
rotation = [0.0, 0.0, 0.7071067811865476, 0.7071067811865476]
translation = [1.0, -2.0, 0.5]

[sphere]
center = [-1.2, 0.1, 0.8]
r = 1.4
"#;
    let scene_std = write_scene(&dir, "std.toml", REFERENCE_SCENE);
    let scene_posed = write_scene(&dir, "posed.toml", posed);
    let out_std = stdout(&relpos(&["classify", scene_std.to_str().unwrap()]));
    let out_posed = stdout(&relpos(&["classify", scene_posed.to_str().unwrap()]));
    let grab = |s: &str, key: &str| -> String {
        s.lines()
            .find(|l| l.starts_with(key))
            .unwrap_or_default()
            .to_string()
    };
    assert_eq!(grab(&out_std, "type:"), grab(&out_posed, "type:"));
    assert_eq!(grab(&out_std, "roots:"), grab(&out_posed, "roots:"));
}

#[test]
fn tol_flag_widens_the_tangency_band() {
    let dir = tempfile::tempdir().unwrap();
    // interior tangency nudged off by 1e-6: the default band reports I,
    // a widened band reports the tangent type
    let nudged = r#"
[hyperboloid]
a = 1.5
c = 1.6

[sphere]
center = [0.099999, 0.0, 0.0]
r = 1.4
"#;
    let scene = write_scene(&dir, "nudged.toml", nudged);
    let strict = stdout(&relpos(&["classify", scene.to_str().unwrap()]));
    assert!(strict.contains("type: I"), "{strict}");
    let loose = stdout(&relpos(&[
        "classify",
        scene.to_str().unwrap(),
        "--tol",
        "1e-3",
    ]));
    assert!(loose.contains("type: TI"), "{loose}");
}
