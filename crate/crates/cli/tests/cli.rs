use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexvec")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const PAIRS: &str = "love\tPOL.POS\nlove\tCOLOR.PINK\nlove\tSS.NOUN.FEELING\nlove\tPTB.VERB\nlove\tCON.NOUN.POS\n\
hate\tSS.NOUN.FEELING\nhate\tPTB.VERB\nugly\tANTO.FAIR\nbeauty\tPOL.POS\nbeauty\tCOLOR.PINK\nbeauty\tCON.NOUN.POS\n\
refundable\tCON.NOUN.POS\n";

fn matrix(dir: &Path) -> PathBuf {
    let src = write(dir, "pairs.tsv", PAIRS);
    let out = dir.join("m.lvs");
    stdout(&["build", "--out", s(&out), s(&src)]);
    out
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["stats", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["svd", "--matrix", "m", "--k", "2", "--out", "x"]).status.code(), Some(1));
    assert_eq!(run(&["stats", "--matrix", "/nonexistent/m.lvs"]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.lvs", "LEXVEC-SPARSE 1 1 1 2\nF 0 A.B\nW x 0\n");
    assert_eq!(run(&["stats", "--matrix", s(&bad)]).status.code(), Some(2));
    let m = matrix(dir.path());
    let ds = write(dir.path(), "ws.tsv", "love\tbeauty\t3\nlove\thate\t1\n");
    assert_eq!(run(&["simeval", "--dataset", s(&ds)]).status.code(), Some(1));
    assert_eq!(run(&["vector", "--matrix", s(&m), "nothing"]).status.code(), Some(2));
}

#[test]
fn inspect_commands() {
    let dir = tempfile::tempdir().unwrap();
    let m = matrix(dir.path());
    let stats = stdout(&["stats", "--matrix", s(&m)]);
    assert!(stats.starts_with("n_words\t5\nn_features\t6\nnnz\t12\n"));
    assert_eq!(stdout(&["vector", "--matrix", s(&m), "ugly"]), "ANTO.FAIR\n");
    let nb = stdout(&["neighbors", "--matrix", s(&m), "love", "--top", "2"]);
    assert_eq!(nb, "beauty\t0.774597\nhate\t0.632456\n");
}

#[test]
fn simeval_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let m = matrix(dir.path());
    let ds = write(dir.path(), "ws.tsv", "love\tbeauty\t9\nlove\thate\t5\nlove\tugly\t1\nlove\tzebra\t4\n");
    let args = ["simeval", "--matrix", s(&m), "--dataset", s(&ds), "--oov", "skip"];
    assert_eq!(stdout(&args), "rho 1.000000 coverage 0.750000\n");
    assert_eq!(stdout(&args), stdout(&args));
    let zero = stdout(&["simeval", "--matrix", s(&m), "--dataset", s(&ds), "--oov", "zero"]);
    assert!(zero.ends_with("coverage 1.000000\n"));
}

#[test]
fn svd_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let m = matrix(dir.path());
    let mut files = Vec::new();
    for t in ["1", "3"] {
        let out = dir.path().join(format!("d{t}.txt"));
        assert_eq!(
            stdout(&["--threads", t, "svd", "--matrix", s(&m), "--k", "3", "--seed", "11", "--out", s(&out)]),
            "words 5 dim 3\n"
        );
        files.push(std::fs::read_to_string(out).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert!(files[0].starts_with("5 3\n"));
}

#[test]
fn concat_reports_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let m = matrix(dir.path());
    let dense = write(dir.path(), "dense.txt", "love 0.5 -1 2\nzebra 1 1 1\n");
    let out = dir.path().join("c.txt");
    assert_eq!(stdout(&["concat", "--dense", s(&dense), "--sparse", s(&m), "--out", s(&out)]), "dim 9 words 6\n");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("6 9\n"));
    assert!(text.contains("\nlove 0.5 -1.0 2.0 0.0 1.0 1.0 1.0 1.0 1.0\n"));
    assert!(text.contains("\nzebra 1.0 1.0 1.0 0.0 0.0 0.0 0.0 0.0 0.0\n"));
}

#[test]
fn classifiers_and_significance() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let words: Vec<String> = (0..8).map(|i| format!("t{i}")).collect();
    let mut dense = String::from("8 8\n");
    for (i, w) in words.iter().enumerate() {
        let row: Vec<&str> = (0..8).map(|j| if i == j { "1" } else { "0" }).collect();
        dense.push_str(&format!("{w} {}\n", row.join(" ")));
    }
    let dense = write(d, "onehot.txt", &dense);
    let split: String = words.iter().enumerate().map(|(i, w)| format!("{}\t{w}\n", u8::from(i < 4))).collect();
    let (tr, dv, te) = (write(d, "tr", &split), write(d, "dv", &split), write(d, "te", &split));
    let preds = d.join("preds");
    let line = stdout(&[
        "sentiment",
        "--dense",
        s(&dense),
        "--train",
        s(&tr),
        "--dev",
        s(&dv),
        "--test",
        s(&te),
        "--predictions",
        s(&preds),
    ]);
    assert!(line.starts_with("accuracy 1.000000 "), "{line}");
    assert_eq!(std::fs::read_to_string(&preds).unwrap(), "1\n1\n1\n1\n0\n0\n0\n0\n");

    let mut np = String::new();
    for fold in 0..10 {
        for rep in 0..if fold == 0 { 2 } else { 1 } {
            for (i, w) in words.iter().enumerate() {
                let label = if i % 2 == 0 { "L" } else { "R" };
                np.push_str(&format!("{w} {} {}\t{label}\t{fold}\n", words[(i + rep + fold) % 8], words[(i * 3) % 8]));
            }
        }
    }
    let np = write(d, "np.tsv", &np);
    let (p, g) = (d.join("np.pred"), d.join("np.gold"));
    let line =
        stdout(&["npbracket", "--dense", s(&dense), "--dataset", s(&np), "--predictions", s(&p), "--gold-out", s(&g)]);
    assert!(line.starts_with("accuracy 1.000000 "), "{line}");
    let m = stdout(&["mcnemar", "--a", s(&p), "--b", s(&g), "--gold", s(&g)]);
    assert_eq!(m, "b 0 c 0 statistic 0 p 1 method exact\n");
}
