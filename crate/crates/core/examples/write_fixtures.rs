//! Regenerates the PGM fixtures shipped in `crates/core/fixtures/`.

use std::path::Path;

use scancrypt::{fixtures, write_pgm};

fn main() -> scancrypt::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir)?;
    write_pgm(&fixtures::gradient(256, 256), dir.join("gradient.pgm"))?;
    write_pgm(&fixtures::scene(256, 256), dir.join("scene.pgm"))?;
    Ok(())
}
