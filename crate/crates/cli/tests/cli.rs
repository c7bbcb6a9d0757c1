use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn nbqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = nbqc(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn gf4_class1(dir: &Path) -> PathBuf {
    code(
        dir,
        "gf4_class1.nbqc",
        &[
            "--class", "1", "--m", "2", "--c", "1", "--n", "3", "--gamma", "2", "--rho", "3",
        ],
    )
}

fn gf4_class2(dir: &Path) -> PathBuf {
    code(
        dir,
        "gf4_class2.nbqc",
        &[
            "--class", "2", "--m", "2", "--t", "1", "--gamma", "2", "--rho", "4",
        ],
    )
}

#[test]
fn construct_reports_dimensions() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a.nbqc");
    let o = nbqc(&[
        "construct",
        "--class",
        "1",
        "--m",
        "2",
        "--c",
        "1",
        "--n",
        "3",
        "--gamma",
        "2",
        "--rho",
        "3",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("6x9"), "{}", stdout(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("NBQC v1 1 2 1 3 - 2 3 0x7\n"));

    let big = dir.path().join("b.nbqc");
    let o = nbqc(&[
        "construct",
        "--class",
        "2",
        "--m",
        "5",
        "--t",
        "2",
        "--gamma",
        "16",
        "--rho",
        "32",
        "-o",
        big.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("496x992"));
}

#[test]
fn construct_rejects_bad_factorization() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.nbqc");
    let o = nbqc(&[
        "construct",
        "--class",
        "1",
        "--m",
        "2",
        "--c",
        "2",
        "--n",
        "2",
        "--gamma",
        "1",
        "--rho",
        "1",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("step 1"));
    assert!(!out.exists());
}

#[test]
fn verify_passes_and_fails() {
    let dir = TempDir::new().unwrap();
    for p in [gf4_class1(dir.path()), gf4_class2(dir.path())] {
        let o = nbqc(&["verify", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("all checks passed"));
    }
    let failing = (0..64u64).find_map(|seed| {
        let p = code(
            dir.path(),
            &format!("r{seed}.nbqc"),
            &[
                "--class",
                "2",
                "--m",
                "5",
                "--t",
                "2",
                "--gamma",
                "4",
                "--rho",
                "8",
                "--random-surjective",
                &seed.to_string(),
            ],
        );
        let o = nbqc(&["verify", p.to_str().unwrap()]);
        (o.status.code() == Some(1)).then_some(o)
    });
    let o = failing.expect("a seed that breaks a symmetry");
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn simulate_is_reproducible_across_worker_counts() {
    let dir = TempDir::new().unwrap();
    let p = gf4_class2(dir.path());
    let run = |workers: &str| {
        nbqc(&[
            "--format",
            "csv",
            "simulate",
            "--code",
            p.to_str().unwrap(),
            "--snr-list",
            "1,3",
            "--trials",
            "200",
            "--seed",
            "9",
            "--workers",
            workers,
        ])
    };
    let (a, b) = (run("1"), run("3"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("snr_db,trials,frame_errors,symbol_errors,fer,ber,avg_iters\n"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn schedule_and_route_reports() {
    let dir = TempDir::new().unwrap();
    let p3 = gf4_class1(dir.path());
    let o = nbqc(&["schedule", "--code", p3.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("7 -> 3"), "{}", stdout(&o));

    let o = nbqc(&["route", "--code", p3.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("control_bits=0"));

    let big = code(
        dir.path(),
        "c32.nbqc",
        &[
            "--class", "2", "--m", "5", "--t", "2", "--gamma", "16", "--rho", "32",
        ],
    );
    let o = nbqc(&["route", "--code", big.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("stages=9 switches=144"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn cost_report() {
    let o = nbqc(&[
        "cost", "--bq", "5", "--nm", "16", "--dc", "32", "--q", "32", "--gamma", "16", "--rho",
        "32",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("(k-1)/k = 15/16 = 0.9375"), "{text}");
    assert!(text.contains("P1 vs Ref5: 0.6667"), "{text}");

    let o = nbqc(&[
        "--format", "csv", "cost", "--bq", "5", "--nm", "16", "--dc", "32", "--q", "32", "--gamma",
        "16", "--rho", "32",
    ]);
    let text = stdout(&o);
    let wires = |design: &str| -> u64 {
        text.lines()
            .find(|l| l.starts_with(&format!("{design},gsn_wires,")))
            .and_then(|l| l.rsplit(',').next())
            .unwrap()
            .parse()
            .unwrap()
    };
    assert_eq!(wires("Ref5"), 3 * wires("P1"));

    let o = nbqc(&[
        "cost",
        "--bq",
        "5",
        "--nm",
        "16",
        "--dc",
        "32",
        "--q",
        "32",
        "--gamma",
        "16",
        "--rho",
        "32",
        "--weights",
        "bogus=1",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.nbqc");
    assert_eq!(
        nbqc(&["verify", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let junk = dir.path().join("junk.nbqc");
    std::fs::write(&junk, "hello\n").unwrap();
    assert_eq!(
        nbqc(&["verify", junk.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        nbqc(&["route", "--code", junk.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(nbqc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn config_file_supplies_flags_and_command_line_wins() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cfg.nbqc");
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        format!(
            "# small Class-I code\nclass=1\nm=2\nc=1\nn=3\ngamma=2\nrho=3\noutput={}\n",
            out.display()
        ),
    )
    .unwrap();
    let o = nbqc(&["--config", cfg.to_str().unwrap(), "construct"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("6x9"));

    let o = nbqc(&[
        "--config",
        cfg.to_str().unwrap(),
        "construct",
        "--gamma",
        "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("3x9"), "{}", stdout(&o));
}
