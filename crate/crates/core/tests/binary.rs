use std::process::Command;

fn zb(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_zeta-brownian")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn sample_plot_and_verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();

    let (code, _) = zb(&["sample", "--T", "1e5", "--n", "4", "--grid", "32", "--out", out, "--plot"]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(dir.path().join("paths.csv")).unwrap();
    assert!(csv.starts_with("# zeta-brownian paths v1\ntau,alpha,re_z,im_z,model\n"));
    assert_eq!(csv.lines().count(), 2 + 4 * 32);

    let svg = dir.path().join("again.svg");
    let (code, _) = zb(&["plot", dir.path().join("paths.csv").to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&svg).unwrap(), std::fs::read_to_string(dir.path().join("paths.svg")).unwrap().replace("sampled paths: Re Z", "paths"));

    let (code, stdout) = zb(&["verify", "--experiment", "mv", "--out", out]);
    assert_eq!(code, 0, "{stdout}");
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("mv.json")).unwrap()).unwrap();
    for key in ["config", "results", "thresholds", "pass"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }

    // a handful of desk-scale paths cannot match Brownian sign changes
    let (code, stdout) = zb(&["verify", "--T", "1e5", "--n", "50", "--experiment", "signchanges", "--out", out]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("FAIL"));

    let (code, _) = zb(&["verify", "--grid", "1", "--out", out]);
    assert_eq!(code, 2);
}
