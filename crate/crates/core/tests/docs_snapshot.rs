use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn docs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

#[test]
fn generated_n2_matches_docs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("instance-n2.json");
    let status = Command::new(env!("CARGO_BIN_EXE_pi-lowerbound"))
        .args(["generate", "--n", "2", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    for file in ["instance-n2.json", "instance-n2.names.json"] {
        let fresh = fs::read(dir.path().join(file)).unwrap();
        let committed = fs::read(docs().join(file)).unwrap();
        assert!(fresh == committed, "{file} differs from the generator output");
    }
}
