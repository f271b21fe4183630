//! Regenerates the bundled miniature suite.
//!
//! Usage: cargo run -p kgprof-testkit --example write_fixtures -- <dir>

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures/mini".to_string()));
    let suite = kgprof_testkit::miniature::miniature_suite(2019);
    for (name, body) in suite.files() {
        let path = dir.join(name);
        std::fs::create_dir_all(path.parent().unwrap())?;
        std::fs::write(&path, body)?;
    }
    println!("wrote {}", dir.display());
    Ok(())
}
