use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use craftgen_core::pruning::{GbmHyperparams, GbmModel, MODEL_FORMAT, MODEL_VERSION};
use image::{Rgb, RgbImage};
use tempfile::TempDir;

fn craftgen(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_craftgen"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let motif = RgbImage::from_fn(128, 128, |x, y| {
        if (x + y) % 32 < 2 || (x + 128 - y) % 32 < 2 || x < 2 || y < 2 {
            Rgb([0, 0, 0])
        } else {
            Rgb([255, 255, 255])
        }
    });
    motif.save(dir.path().join("motif.png")).unwrap();
    let insp = RgbImage::from_fn(64, 64, |x, y| Rgb([(150 + x) as u8, (60 + y) as u8, (40 + (x * y) % 50) as u8]));
    insp.save(dir.path().join("insp.png")).unwrap();
    let swatches = RgbImage::from_fn(60, 20, |x, _| match x / 15 {
        0 => Rgb([220, 40, 30]),
        1 => Rgb([30, 60, 190]),
        2 => Rgb([240, 210, 60]),
        _ => Rgb([30, 140, 70]),
    });
    swatches.save(dir.path().join("swatches.png")).unwrap();
    RgbImage::from_pixel(16, 16, Rgb([90, 120, 200])).save(dir.path().join("uniform.png")).unwrap();
    dir
}

fn files_with_ext(dir: &Path, ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    v.sort();
    v
}

fn constant_model(dir: &Path) -> PathBuf {
    let model = GbmModel {
        format: MODEL_FORMAT.into(),
        version: MODEL_VERSION,
        hyperparams: GbmHyperparams::default(),
        n_features: 20,
        base_score: 0.0,
        seed: 0,
        trees: vec![],
    };
    let path = dir.join("model.json");
    fs::write(&path, model.to_json().unwrap()).unwrap();
    path
}

#[test]
fn ikat_runs_are_byte_identical() {
    let dir = fixtures();
    let d = dir.path();
    for out in ["a", "b"] {
        let o = craftgen(d, &["generate-ikat", "--motif", "motif.png", "--inspiration", "insp.png", "--seed", "7", "--out-dir", out]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("seed 7"));
        assert!(stdout(&o).contains("clipped"));
    }
    for name in ["ikat_7.csv", "ikat_7.png"] {
        assert_eq!(fs::read(d.join("a").join(name)).unwrap(), fs::read(d.join("b").join(name)).unwrap());
    }
    let csv = fs::read_to_string(d.join("a/ikat_7.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 128 * 128);
}

#[test]
fn missing_motif_fails_cleanly() {
    let dir = fixtures();
    let o = craftgen(dir.path(), &["generate-ikat", "--motif", "absent.png", "--inspiration", "insp.png", "--out-dir", "out"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("absent.png"));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn ikat_batch_gives_distinct_designs() {
    let dir = fixtures();
    let o = craftgen(dir.path(), &["generate-ikat", "--motif", "motif.png", "--inspiration", "insp.png", "--count", "5", "--grid", "32", "--out-dir", "out"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csvs = files_with_ext(&dir.path().join("out"), "csv");
    assert_eq!(csvs.len(), 5);
    assert_eq!(files_with_ext(&dir.path().join("out"), "png").len(), 5);
    let distinct: BTreeSet<Vec<u8>> = csvs.iter().map(|p| fs::read(p).unwrap()).collect();
    assert_eq!(distinct.len(), 5);
}

#[test]
fn blockprint_writes_requested_count_and_replays() {
    let dir = fixtures();
    let d = dir.path();
    for out in ["a", "b"] {
        let o = craftgen(d, &["generate-blockprint", "--inspiration", "swatches.png", "--count", "10", "--px", "96", "--out-dir", out]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let a = files_with_ext(&d.join("a"), "json");
    let designs: Vec<_> = a.iter().filter(|p| p.file_name().unwrap().to_string_lossy().starts_with("design_")).collect();
    assert_eq!(designs.len(), 10);
    assert_eq!(files_with_ext(&d.join("a"), "png").len(), 10);
    for p in a.iter().filter(|p| !p.ends_with("run_config.json")) {
        let twin = d.join("b").join(p.file_name().unwrap());
        assert_eq!(fs::read(p).unwrap(), fs::read(twin).unwrap());
    }
    let palette = fs::read_to_string(d.join("a/palette.json")).unwrap();
    assert!(palette.contains("#dc281e"));
}

#[test]
fn pruning_with_an_unreachable_threshold_discards_all() {
    let dir = fixtures();
    let d = dir.path();
    let model = constant_model(d);
    let o = craftgen(
        d,
        &["generate-blockprint", "--inspiration", "swatches.png", "--count", "10", "--px", "64", "--model",
          model.to_str().unwrap(), "--threshold", "0.999999", "--out-dir", "out"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let written = files_with_ext(&d.join("out"), "png");
    assert!(written.len() <= 10);
    let log = fs::read_to_string(d.join("out/prune_log.csv")).unwrap();
    assert_eq!(log.lines().count(), 11);
    assert_eq!(log.lines().filter(|l| l.ends_with(",false")).count(), 10 - written.len());
    assert!(stdout(&o).contains("discarded"));
}

#[test]
fn pruning_without_model_is_an_error() {
    let dir = fixtures();
    let o = craftgen(dir.path(), &["generate-blockprint", "--inspiration", "insp.png", "--prune", "--out-dir", "out"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("without --model"));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn config_file_is_layered_under_flags() {
    let dir = fixtures();
    let d = dir.path();
    fs::write(
        d.join("run.json"),
        r#"{"inspiration": "swatches.png", "count": 3, "px": 64, "shape": "hexagon", "style": "recursive", "depth": 2, "seed": 5}"#,
    )
    .unwrap();
    let o = craftgen(d, &["generate-blockprint", "--config", "run.json", "--count", "2", "--out-dir", "out"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(files_with_ext(&d.join("out"), "png").len(), 2);
    let doc = fs::read_to_string(d.join("out/design_0000.json")).unwrap();
    assert!(doc.contains("hexagon") && doc.contains("recursive_divide"));

    // the echoed config replays the run
    let echo = d.join("out/run_config.json");
    let o = craftgen(d, &["generate-blockprint", "--config", echo.to_str().unwrap(), "--out-dir", "replay"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read(d.join("out/design_0001.json")).unwrap(), fs::read(d.join("replay/design_0001.json")).unwrap());

    fs::write(d.join("bad.json"), r#"{"inspiration": "insp.png", "colour": 3}"#).unwrap();
    let o = craftgen(d, &["generate-blockprint", "--config", "bad.json", "--out-dir", "bad"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("colour"));
}

#[test]
fn entropy_seed_is_echoed() {
    let dir = fixtures();
    let d = dir.path();
    let o = craftgen(d, &["extract-palette", "--inspiration", "insp.png", "--random-seed", "--out-dir", "out"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let echo: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("out/run_config.json")).unwrap()).unwrap();
    assert!(echo["seed"].is_u64());
}

#[test]
fn uniform_image_palette_has_one_color() {
    let dir = fixtures();
    let o = craftgen(dir.path(), &["extract-palette", "--inspiration", "uniform.png", "--out-dir", "out"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("out/palette.json")).unwrap()).unwrap();
    assert_eq!(json["colors"], serde_json::json!(["#5a78c8"]));
}

fn write_dataset(d: &Path, n: usize, votes: impl Fn(usize) -> [u8; 3]) -> PathBuf {
    let o = craftgen(
        d,
        &["generate-blockprint", "--inspiration", "swatches.png", "--count", &n.to_string(), "--px", "64",
          "--rows", "2", "--cols", "2", "--out-dir", "designs"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let mut csv = String::from("design,vote1,vote2,vote3,split\n");
    for i in 0..n {
        let [a, b, c] = votes(i);
        let split = if i + n / 11 >= n { "test" } else { "train" };
        csv.push_str(&format!("design_{i:04}.json,{a},{b},{c},{split}\n"));
    }
    let path = d.join("designs/dataset.csv");
    fs::write(&path, csv).unwrap();
    path
}

#[test]
fn training_on_one_class_fails() {
    let dir = fixtures();
    let d = dir.path();
    let dataset = write_dataset(d, 12, |_| [1, 1, 0]);
    let o = craftgen(d, &["train-pruner", "--dataset", dataset.to_str().unwrap(), "--min-samples-leaf", "2", "--out-dir", "model"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("degenerate labels"));
    assert!(!d.join("model").exists());
}

#[test]
fn train_then_prune() {
    let dir = fixtures();
    let d = dir.path();
    let dataset = write_dataset(d, 24, |i| if i % 2 == 0 { [1, 1, 0] } else { [0, 0, 1] });
    let o = craftgen(
        d,
        &["train-pruner", "--dataset", dataset.to_str().unwrap(), "--min-samples-leaf", "2", "--n-trees", "5",
          "--out-dir", "model"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("22 train / 2 test"), "{text}");
    assert!(text.contains("train: log-loss") && text.contains("test: log-loss"));
    let model = GbmModel::from_json(&fs::read_to_string(d.join("model/model.json")).unwrap()).unwrap();
    assert_eq!(model.trees.len(), 5);

    let o = craftgen(
        d,
        &["prune", "--model", "model/model.json", "designs/design_0000.json", "designs/design_0001.json", "--out-dir", "pruned"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let report = fs::read_to_string(d.join("pruned/prune_report.csv")).unwrap();
    assert_eq!(report.lines().count(), 3);
    assert!(stdout(&o).contains("of 2"));
}

#[test]
fn evaluate_staircase_prints_fifty() {
    let dir = fixtures();
    let d = dir.path();
    let mut csv = String::from("design");
    for j in 0..10 {
        csv.push_str(&format!(",j{j}"));
    }
    csv.push('\n');
    for i in 1..=10 {
        csv.push_str(&format!("d{i}"));
        for j in 0..10 {
            csv.push_str(if j < i { ",1" } else { ",0" });
        }
        csv.push('\n');
    }
    fs::write(d.join("stairs.csv"), csv).unwrap();
    let o = craftgen(d, &["evaluate", "stairs.csv", "--out-dir", "eval"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("likeability-index 50"));
    assert_eq!(fs::read_to_string(d.join("eval/likeability.csv")).unwrap(), "method,likeability_index\nstairs,50\n");
}

#[test]
fn thread_cap_is_validated() {
    let dir = fixtures();
    let o = Command::new(env!("CARGO_BIN_EXE_craftgen"))
        .current_dir(dir.path())
        .env("CRAFTGEN_THREADS", "0")
        .args(["extract-palette", "--inspiration", "insp.png"])
        .output()
        .unwrap();
    assert!(!o.status.success());
    assert!(stderr(&o).contains("CRAFTGEN_THREADS"));
    let o = Command::new(env!("CARGO_BIN_EXE_craftgen"))
        .current_dir(dir.path())
        .env("CRAFTGEN_THREADS", "2")
        .args(["extract-palette", "--inspiration", "insp.png"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
}
