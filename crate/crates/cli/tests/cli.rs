use std::path::Path;
use std::process::{Command, Output};

fn hzoom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hzoom")).args(args).output().expect("spawn hzoom")
}

fn write_pgm(path: &Path, w: usize, h: usize, f: impl Fn(usize, usize) -> u8) {
    let mut bytes = format!("P5\n{w} {h}\n255\n").into_bytes();
    for r in 0..h {
        for c in 0..w {
            bytes.push(f(r, c));
        }
    }
    std::fs::write(path, bytes).unwrap();
}

fn read_pgm_pixels(path: &Path) -> Vec<u8> {
    let bytes = std::fs::read(path).unwrap();
    // header is three whitespace-terminated tokens after the magic
    let mut fields = 0;
    let mut i = 0;
    while fields < 4 {
        while bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        while !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        fields += 1;
    }
    bytes[i + 1..].to_vec()
}

#[test]
fn kernel_dump_header() {
    let out = hzoom(&["kernel", "--offset", "0.5,0.5", "--size", "5", "--nu", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("HKT 2 5 5 4 0 0.5 0.5\n"), "{}", &text[..40.min(text.len())]);
}

#[test]
fn fused_kernel_sums_to_one() {
    let out = hzoom(&["kernel", "--offset", "0.5,0", "--fuse", "fir5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
    assert_eq!(header[..2], ["HKT", "2"]);
    assert_eq!(header[4], "1");
    let sum: f64 = lines.flat_map(|l| l.split_whitespace()).map(|v| v.parse::<f64>().unwrap()).sum();
    assert!((sum - 1.0).abs() < 1e-10);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(hzoom(&["kernel", "--offset", "0.5,0.5", "--nu", "0"]).status.code(), Some(2));
    assert_eq!(hzoom(&["kernel", "--offset", "1.5,0.5"]).status.code(), Some(2));
    assert_eq!(hzoom(&["zoom", "-i", "x.pgm", "-o", "y.pgm", "--method", "sinc"]).status.code(), Some(2));
    assert_eq!(hzoom(&["kernel", "--offset", "0.5,0.5", "--fuse", "iir"]).status.code(), Some(2));
}

#[test]
fn missing_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = hzoom(&["zoom", "-i", "/nonexistent/in.pgm", "-o", dir.path().join("o.pgm").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn zoom_keeps_constants_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let flat = dir.path().join("flat.pgm");
    write_pgm(&flat, 20, 16, |_, _| 90);
    let out = dir.path().join("flat2.pgm");
    assert!(hzoom(&["zoom", "-i", flat.to_str().unwrap(), "-o", out.to_str().unwrap()]).status.success());
    let px = read_pgm_pixels(&out);
    assert_eq!(px.len(), 40 * 32);
    assert!(px.iter().all(|&v| v == 90));

    let tex = dir.path().join("tex.pgm");
    write_pgm(&tex, 24, 24, |r, c| ((r * 37 + c * 11) % 256) as u8);
    let (a, b) = (dir.path().join("a.pgm"), dir.path().join("b.pgm"));
    for o in [&a, &b] {
        let s = hzoom(&["zoom", "-i", tex.to_str().unwrap(), "-o", o.to_str().unwrap(), "--method", "hermite-iir"]);
        assert!(s.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn decimate_halves_size() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("src.pgm");
    write_pgm(&src, 21, 14, |r, c| (r * 3 + c) as u8);
    let dst = dir.path().join("dst.pgm");
    assert!(hzoom(&["decimate", "-i", src.to_str().unwrap(), "-o", dst.to_str().unwrap()]).status.success());
    assert_eq!(read_pgm_pixels(&dst).len(), 11 * 7);
}

#[test]
fn derivs_writes_taps_and_planes() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("src.pgm");
    write_pgm(&src, 16, 16, |r, c| (r * 5 + c * 2) as u8);
    let out = dir.path().join("d");
    let s = hzoom(&["derivs", "-i", src.to_str().unwrap(), "--nu", "2", "--out-dir", out.to_str().unwrap()]);
    assert!(s.status.success());
    assert!(std::fs::read_to_string(out.join("taps.txt")).unwrap().starts_with("fir5 d=1:"));
    for k in ["0_0", "0_1", "1_0", "1_1"] {
        assert!(out.join(format!("d{k}.pgm")).exists(), "{k}");
    }
}

#[test]
fn eval_on_constant_image_is_perfect_and_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("flat.pgm");
    write_pgm(&img, 32, 32, |_, _| 128);
    let run = || {
        let out = hzoom(&["eval", img.to_str().unwrap(), "--methods", "bilinear,hermite-fir5", "--reps", "1"]);
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    let csv = run();
    let lines: Vec<&str> = csv.split("\r\n").filter(|l| !l.is_empty()).collect();
    assert_eq!(lines[0], "image,method,rep,psnr,ssim");
    assert_eq!(lines[1], "flat,bilinear,1,inf,1.00000000");
    assert_eq!(lines[2], "flat,hermite-fir5,1,inf,1.00000000");
    assert_eq!(lines[3], "__mean__,bilinear,1,inf,1.00000000");
    assert_eq!(csv, run());
}

#[test]
fn eval_reports_unreadable_images() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("ok.pgm");
    write_pgm(&img, 32, 32, |r, c| (r * c % 200) as u8);
    let bad = dir.path().join("bad.pgm");
    std::fs::write(&bad, b"not an image").unwrap();
    let out = hzoom(&["eval", img.to_str().unwrap(), bad.to_str().unwrap(), "--methods", "nearest", "--reps", "2"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.ends_with("bad,error,,,\r\n"));
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_hzoom"))
        .args(["kernel", "--offset", "0.5"])
        .env("HZ_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
