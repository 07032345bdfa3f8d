//! Writes the bundled synthetic corpus: `cargo run --example make_corpus -- <dir>`.

use std::path::PathBuf;

use tierblur::fixtures::{bundled_corpus_specs, write_corpus, CORPUS_SIZE};

fn main() -> tierblur::Result<()> {
    let root = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("corpus"));
    write_corpus(&root, &bundled_corpus_specs(), CORPUS_SIZE)?;
    println!("{}", root.display());
    Ok(())
}
