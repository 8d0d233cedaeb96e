//! Driving the command line from code and replaying its manifest.
//!
//! `cargo run --example run_manifest`

use pdeficiency::cli::{run, RunManifest};

fn main() {
    let dir = std::env::temp_dir().join("pdef-manifest-example");
    std::fs::create_dir_all(&dir).unwrap();
    let d = dir.display();
    let mut out = Vec::new();
    let mut err = Vec::new();
    run(["pdef", "corpus", "emit", "dihedral_inf", "--out-dir", &d.to_string(), "--stem", "dinf"], &mut out, &mut err);
    let pres = format!("{d}/dinf.pres");
    let manifest = format!("{d}/manifest.json");
    out.clear();
    let code = run(["pdef", "pdef", &pres, "--prime", "2", "--manifest", &manifest], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    let m: RunManifest = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    println!("exit {code}; manifest replays: {}", m.replay());
}
