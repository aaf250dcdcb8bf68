use std::path::PathBuf;
use std::process::{Command, Output};

fn floquet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floquet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn free_particle_series() {
    let o = floquet(&["expand", "--potential", "trig: theta=[]", "--order", "1"]);
    assert_eq!(code(&o), 0);
    assert!(
        stdout(&o).lines().any(|l| l == "lambda = -nu^2"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn two_harmonic_series_structured() {
    let o = floquet(&[
        "expand",
        "--potential",
        "trig: theta=[t1,t2]",
        "--order",
        "3",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for line in [
        "series\tlambda",
        "variable\tnu",
        "coeff[2]\t-1",
        "coeff[-2]\t-1/2*t1^2 - 1/2*t2^2",
        "coeff[-4]\t-3/4*t1^2*t2 - 1/2*t1^2 - 2*t2^2",
        "truncation\t-6",
    ] {
        assert!(
            text.lines().any(|l| l == line),
            "missing {line:?} in\n{text}"
        );
    }
}

#[test]
fn lame_series_text() {
    let o = floquet(&["expand", "--potential", "lame: delta=D", "--order", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(
        text.contains("lambda = -nu^2 + zeta1*D + (1/4*zeta1^2*D^2 - 1/48*g2*D^2)*nu^-2"),
        "{text}"
    );
    assert!(text.contains("O(nu^(-4))"), "{text}");
}

#[test]
fn small_energy_expansion_has_both_series() {
    let o = floquet(&[
        "expand",
        "--potential",
        "ellipsoidal-j: delta=Delta, omega=1",
        "--regime",
        "small-energy-sn",
        "--order",
        "5",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("mu = "), "{text}");
    assert!(text.contains("Lambda = -2*mu*k*I*Delta^(1/2)"), "{text}");
}

#[test]
fn structured_output_is_byte_stable() {
    let args = [
        "expand",
        "--potential",
        "dtv: b=[b0,b1,b2,b3]",
        "--order",
        "3",
        "--format",
        "structured",
    ];
    assert_eq!(floquet(&args).stdout, floquet(&args).stdout);
    let args = [
        "verify",
        "--potential",
        "trig: theta=[1]",
        "--order",
        "2",
        "--format",
        "structured",
    ];
    assert_eq!(floquet(&args).stdout, floquet(&args).stdout);
}

#[test]
fn mathieu_verification_passes() {
    let o = floquet(&[
        "verify",
        "--potential",
        "trig: theta=[1]",
        "--order",
        "2",
        "--at",
        "-2500",
        "--tolerance",
        "1e-6",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("[pass]")).count(),
        2,
        "{text}"
    );
    assert!(text.contains("check det-M"), "{text}");
}

#[test]
fn elliptic_large_energy_verifications_pass() {
    for pot in [
        "lame: delta=2, k2=0.3",
        "ellipsoidal-w: alpha1=2, alpha2=1, k2=0.3",
        "dtv: b=[2,1,6,3], k2=0.3",
    ] {
        let o = floquet(&[
            "verify",
            "--potential",
            pot,
            "--order",
            "3",
            "--at",
            "-2500",
        ]);
        assert_eq!(code(&o), 0, "{pot}: {}", stdout(&o));
    }
}

#[test]
fn ellipsoidal_sn_verification_passes() {
    let o = floquet(&[
        "verify",
        "--potential",
        "ellipsoidal-j: delta=400, omega=1, k2=0.3",
        "--regime",
        "small-energy-sn",
        "--tolerance",
        "1e-5",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(
        text.lines()
            .any(|l| l.starts_with("row[0]\tcheck=det-M") && l.ends_with("status=pass")),
        "{text}"
    );
    assert!(
        text.lines()
            .any(|l| l.starts_with("row[1]\tDelta=4.000e2") && l.ends_with("status=pass")),
        "{text}"
    );
}

#[test]
fn failed_row_exits_3() {
    let o = floquet(&[
        "verify",
        "--potential",
        "trig: theta=[1]",
        "--order",
        "1",
        "--at",
        "-2500",
        "--tolerance",
        "1e-12",
    ]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert!(stdout(&o).contains("[FAIL] lambda"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["expand", "--potential", "square: a=1"][..],
        &[
            "expand",
            "--potential",
            "trig: theta=[1]",
            "--regime",
            "small-energy-sn",
        ],
        &[
            "expand",
            "--potential",
            "trig: theta=[1]",
            "--format",
            "xml",
        ],
        &["expand"],
        &["verify", "--potential", "lame: delta=2"],
        &["verify", "--potential", "trig: theta=[t1]"],
        &["constants"],
    ] {
        let o = floquet(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(
            String::from_utf8_lossy(&o.stderr).starts_with("error:"),
            "{args:?}"
        );
    }
}

#[test]
fn constants_report_residuals() {
    let o = floquet(&[
        "constants",
        "--q",
        "0.05",
        "--tolerance",
        "1e-12",
        "--format",
        "structured",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    for name in ["e1+e2+e3", "zeta1 = (e1-e2)E/K - e1"] {
        let line = text
            .lines()
            .find(|l| l.starts_with(&format!("residual[{name}]\t")))
            .unwrap_or_else(|| panic!("no residual {name} in\n{text}"));
        assert!(line.ends_with(" pass"), "{line}");
    }
}

#[test]
fn constants_from_modulus_and_k_series() {
    let o = floquet(&["constants", "--k2", "0.3", "--order", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("k2: 3.000000000000e-1"), "{text}");
    assert!(text.contains("e2 = -1/2*k^2 - 1/3"), "{text}");
}

#[test]
fn config_file_supplies_options_and_flags_override() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("mathieu.conf");
    std::fs::write(&path, "# Mathieu check\npotential = trig: theta=[1]\norder = 2\nat = -2500\nformat = structured\n")
        .unwrap();
    let config = path.to_str().unwrap();
    let o = floquet(&["verify", "--config", config]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("potential\ttrig: theta=[1]\n"));
    let o = floquet(&["verify", "--config", config, "--format", "text"]);
    assert!(stdout(&o).starts_with("potential: trig: theta=[1]\n"));

    std::fs::write(&path, "potentail = trig: theta=[1]\n").unwrap();
    assert_eq!(code(&floquet(&["expand", "--config", config])), 2);
}
