use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_circulant"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn circulant");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn polymul_examples() {
    assert_eq!(
        stdout(&run(&["polymul", "--engine", "circulant"], "1 1\n1 1\n")),
        "1 2 1"
    );
    assert_eq!(
        stdout(&run(&["polymul", "--engine", "schoolbook"], "1 2 3\n4 5\n")),
        "4 13 22 15"
    );
}

#[test]
fn engines_print_identical_output() {
    let input = "3 -1 4 1 -5 9 2 6 5 3 5\n-2 7 1 8 2 8 1 8\n";
    let outs: Vec<String> = ["circulant", "classic", "schoolbook"]
        .iter()
        .map(|e| stdout(&run(&["polymul", "--engine", e], input)))
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[1], outs[2]);
}

#[test]
fn polymul_reads_file() {
    let dir = std::env::temp_dir().join(format!("circulant-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("in.txt");
    std::fs::write(&path, "1 2 3\n4 5\n").unwrap();
    let out = run(
        &[
            "polymul",
            "--engine",
            "classic",
            "--in",
            path.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(stdout(&out), "4 13 22 15");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_errors_carry_position() {
    let out = run(&["polymul"], "1 2\n3 x4\n");
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 3"), "{err}");
}

#[test]
fn wrong_line_count_fails() {
    let out = run(&["polymul"], "1 2\n");
    assert!(!out.status.success());
}

#[test]
fn mersenne_overflow_is_reported() {
    let out = run(&["polymul", "--ring", "mersenne"], "4294967296\n1\n");
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exact"), "{err}");
    // Without the check the result is the residue modulo 2^31 - 1.
    let out = run(
        &["polymul", "--ring", "mersenne", "--no-exact-check"],
        "4294967296\n1\n",
    );
    assert_eq!(stdout(&out), "2");
    // The default ring switches to an exact backend.
    assert_eq!(stdout(&run(&["polymul"], "4294967296\n1\n")), "4294967296");
}

#[test]
fn bigmul_examples() {
    assert_eq!(stdout(&run(&["bigmul", "999", "999"], "")), "998001");
    assert_eq!(stdout(&run(&["bigmul", "0", "123456789"], "")), "0");
    let x = "9".repeat(3000);
    let out = stdout(&run(&["bigmul", &x, &x], ""));
    // (10^k - 1)^2 = 10^{2k} - 2·10^k + 1
    let want = format!("{}8{}1", "9".repeat(2999), "0".repeat(2999));
    assert_eq!(out, want);
}

#[test]
fn bigmul_rejects_non_digits() {
    let out = run(&["bigmul", "12a", "3"], "");
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 3"));
}

#[test]
fn bench_writes_csv() {
    let dir = std::env::temp_dir().join(format!("circulant-bench-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.csv");
    let out = run(
        &[
            "bench",
            "--sizes",
            "8,16",
            "--batch",
            "1",
            "--reps",
            "1",
            "--seed",
            "3",
            "--csv",
            path.to_str().unwrap(),
        ],
        "",
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "n,classic_ms,circulant_ms,ratio,classic_mults,circulant_mults,mult_ratio"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("8,") && lines[2].starts_with("16,"));
    std::fs::remove_dir_all(&dir).unwrap();

    let out = run(
        &["bench", "--sizes", "12", "--batch", "1", "--reps", "1"],
        "",
    );
    assert!(!out.status.success());
}
