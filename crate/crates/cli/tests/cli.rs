use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use msis::{save_image, synthetic, Image, Mode};
use tempfile::TempDir;

fn msis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msis"))
        .args(args)
        .output()
        .expect("spawn msis")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn assert_failure(out: &Output, code: i32, needle: &str) {
    assert_eq!(out.status.code(), Some(code), "stderr: {}", stderr(out));
    let err = stderr(out);
    assert!(err.starts_with("error: "), "{err}");
    assert!(err.contains(needle), "{err:?} lacks {needle:?}");
}

fn ext(mode: Mode) -> &'static str {
    match mode {
        Mode::Binary => "pbm",
        Mode::Grayscale => "pgm",
        Mode::Color => "png",
    }
}

fn write_secrets(dir: &Path, n: usize, h: u32, w: u32, mode: Mode) -> Vec<PathBuf> {
    (0..n)
        .map(|i| {
            let path = dir.join(format!("secret_{i}.{}", ext(mode)));
            save_image(&synthetic::natural_image(h, w, mode, i as u64), &path).unwrap();
            path
        })
        .collect()
}

fn strs(paths: &[PathBuf]) -> Vec<&str> {
    paths.iter().map(|p| p.to_str().unwrap()).collect()
}

fn encode(secrets: &[PathBuf], out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["encode"];
    args.extend(strs(secrets));
    args.extend(["--out", out.to_str().unwrap()]);
    args.extend(extra);
    msis(&args)
}

fn share_paths(dir: &Path, count: usize) -> Vec<PathBuf> {
    (1..=count)
        .map(|i| dir.join(format!("share_{i:02}.msis")))
        .collect()
}

#[test]
fn encode_decode_matrix() {
    let tmp = TempDir::new().unwrap();
    for mode in [Mode::Binary, Mode::Grayscale, Mode::Color] {
        for n in 2..=20usize {
            let case = tmp.path().join(format!("{mode}_{n}"));
            fs::create_dir_all(&case).unwrap();
            let secrets = write_secrets(&case, n, 5, 7, mode);
            let shares_dir = case.join("shares");
            let out = encode(&secrets, &shares_dir, &["--seed", "9"]);
            assert!(out.status.success(), "{mode} n={n}: {}", stderr(&out));
            assert_eq!(stdout(&out).trim().len(), 32);
            assert!(shares_dir.join("manifest.txt").is_file());

            let shares = share_paths(&shares_dir, n + 1);
            let rec_dir = case.join("rec");
            let mut args = vec!["decode"];
            args.extend(strs(&shares));
            args.extend(["--out", rec_dir.to_str().unwrap()]);
            let out = msis(&args);
            assert!(out.status.success(), "{mode} n={n}: {}", stderr(&out));

            for (i, secret) in secrets.iter().enumerate() {
                let rec =
                    msis::load_image(rec_dir.join(format!("recovered_{:02}.{}", i + 1, ext(mode))))
                        .unwrap();
                let orig = msis::load_image(secret).unwrap();
                assert!(rec.same_shape(&orig));
                let share = msis::load_share(&shares[i]).unwrap();
                assert!(share.image.same_shape(&orig));
                if mode == Mode::Binary {
                    assert_eq!(rec, orig);
                } else {
                    let worst = orig
                        .pixels()
                        .iter()
                        .zip(rec.pixels())
                        .map(|(&a, &b)| (i32::from(a) - i32::from(b)).abs())
                        .max()
                        .unwrap();
                    assert!(worst <= n as i32, "{mode} n={n}: error {worst}");
                }
            }
        }
    }
}

#[test]
fn single_secret_is_usage_error() {
    let tmp = TempDir::new().unwrap();
    let secrets = write_secrets(tmp.path(), 1, 4, 4, Mode::Grayscale);
    let out = encode(&secrets, &tmp.path().join("s"), &[]);
    assert_failure(&out, 1, "error: usage:");
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_failure(&msis(&["encode", "--bogus"]), 1, "error: usage:");
    assert_failure(&msis(&["frobnicate"]), 1, "error: usage:");
}

#[test]
fn seeded_encode_is_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let secrets = write_secrets(tmp.path(), 3, 6, 6, Mode::Grayscale);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert!(encode(&secrets, &a, &["--seed", "42"]).status.success());
    assert!(encode(&secrets, &b, &["--seed", "42"]).status.success());
    for (pa, pb) in share_paths(&a, 4).iter().zip(share_paths(&b, 4)) {
        assert_eq!(fs::read(pa).unwrap(), fs::read(pb).unwrap());
    }
    assert_eq!(
        fs::read(a.join("manifest.txt")).unwrap(),
        fs::read(b.join("manifest.txt")).unwrap()
    );
}

#[test]
fn missing_share_is_reported() {
    let tmp = TempDir::new().unwrap();
    let secrets = write_secrets(tmp.path(), 5, 4, 4, Mode::Grayscale);
    let dir = tmp.path().join("s");
    assert!(encode(&secrets, &dir, &["--seed", "1"]).status.success());
    let shares = share_paths(&dir, 5);
    let mut args = vec!["decode"];
    args.extend(strs(&shares));
    args.extend(["--out", "unused"]);
    assert_failure(&msis(&args), 2, "missing share index 6");
}

#[test]
fn mixed_sessions_are_rejected() {
    let tmp = TempDir::new().unwrap();
    let secrets = write_secrets(tmp.path(), 2, 4, 4, Mode::Grayscale);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert!(encode(&secrets, &a, &["--seed", "1"]).status.success());
    assert!(encode(&secrets, &b, &["--seed", "2"]).status.success());
    let shares = [
        a.join("share_01.msis"),
        a.join("share_02.msis"),
        b.join("share_03.msis"),
    ];
    let rec = tmp.path().join("r");
    let mut args = vec!["decode"];
    args.extend(strs(&shares));
    args.extend(["--out", rec.to_str().unwrap()]);
    assert_failure(&msis(&args), 2, "error: manifest-mismatch:");
}

#[test]
fn corrupt_share_is_data_error() {
    let tmp = TempDir::new().unwrap();
    let secrets = write_secrets(tmp.path(), 2, 4, 4, Mode::Grayscale);
    let dir = tmp.path().join("s");
    assert!(encode(&secrets, &dir, &[]).status.success());
    let victim = dir.join("share_02.msis");
    let mut bytes = fs::read(&victim).unwrap();
    bytes[0] = b'X';
    fs::write(&victim, bytes).unwrap();
    let shares = share_paths(&dir, 3);
    let rec = tmp.path().join("r");
    let mut args = vec!["decode"];
    args.extend(strs(&shares));
    args.extend(["--out", rec.to_str().unwrap()]);
    assert_failure(&msis(&args), 2, "share_02.msis");
}

#[test]
fn missing_input_file_is_io_error() {
    let tmp = TempDir::new().unwrap();
    let absent = tmp.path().join("absent.pgm");
    let out = msis(&[
        "metrics",
        absent.to_str().unwrap(),
        absent.to_str().unwrap(),
    ]);
    assert_failure(&out, 3, "error: io:");
}

#[test]
fn metrics_on_identical_files() {
    let tmp = TempDir::new().unwrap();
    let path = &write_secrets(tmp.path(), 1, 16, 16, Mode::Grayscale)[0];
    let p = path.to_str().unwrap();
    let out = msis(&["metrics", p, p]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("correlation=1.000000"), "{text}");
    assert!(text.contains("rmse=0.000000"), "{text}");
    assert!(text.contains("psnr_db=inf"), "{text}");
}

#[test]
fn attack_row_shape() {
    let tmp = TempDir::new().unwrap();
    let secrets = write_secrets(tmp.path(), 5, 32, 32, Mode::Grayscale);
    let dir = tmp.path().join("s");
    assert!(encode(&secrets, &dir, &["--seed", "3"]).status.success());
    let mut args = vec!["attack", "--shares"];
    let shares = share_paths(&dir, 6);
    args.extend(strs(&shares));
    args.push("--secrets");
    args.extend(strs(&secrets));
    let csv = tmp.path().join("attack.csv");
    args.extend(["--k", "3", "--csv", csv.to_str().unwrap()]);
    let out = msis(&args);
    assert!(out.status.success(), "{}", stderr(&out));

    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,secret,correlation"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r[0] == "3"));
    let na = rows.iter().filter(|r| r[2] == "NA").count();
    assert_eq!(na, 3);
    for r in rows.iter().filter(|r| r[2] != "NA") {
        let v: f64 = r[2].parse().unwrap();
        assert!(v.abs() < 0.2, "{r:?}");
    }
}

#[test]
fn attack_rejects_out_of_range_k() {
    let tmp = TempDir::new().unwrap();
    let secrets = write_secrets(tmp.path(), 2, 4, 4, Mode::Grayscale);
    let dir = tmp.path().join("s");
    assert!(encode(&secrets, &dir, &[]).status.success());
    let mut args = vec!["attack", "--shares"];
    let shares = share_paths(&dir, 3);
    args.extend(strs(&shares));
    args.push("--secrets");
    args.extend(strs(&secrets));
    args.extend(["--k", "5"]);
    assert_failure(&msis(&args), 1, "error: usage:");
}

#[test]
fn bench_emits_one_row_per_cell() {
    let out = msis(&[
        "bench", "--n", "2,3,5,7", "--size", "16,8x12", "--reps", "3",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,mode,height,width,encode_seconds,decode_seconds")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 6);
        assert_eq!(fields[1], "grayscale");
        assert!(fields[4].parse::<f64>().unwrap() >= 0.0);
    }
}

#[test]
fn bench_rejects_too_few_reps() {
    assert_failure(
        &msis(&["bench", "--size", "8", "--reps", "2"]),
        1,
        "error: usage:",
    );
}

#[test]
fn dimension_mismatch_names_the_file() {
    let tmp = TempDir::new().unwrap();
    let a = tmp.path().join("a.pgm");
    let b = tmp.path().join("odd.pgm");
    save_image(&Image::filled(4, 4, Mode::Grayscale, 10).unwrap(), &a).unwrap();
    save_image(&Image::filled(4, 5, Mode::Grayscale, 10).unwrap(), &b).unwrap();
    let out = encode(&[a, b], &tmp.path().join("s"), &[]);
    assert_failure(&out, 2, "odd.pgm");
    assert!(stderr(&out).starts_with("error: dimension-mismatch:"));
}

#[test]
fn help_exits_zero() {
    let out = msis(&["--help"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("encode"));
}
