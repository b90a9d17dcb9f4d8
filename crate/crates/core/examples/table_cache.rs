// Storing tables on disk and reading them back.
//
// `cargo run --release --example table_cache`

use hecke::coset_enum::{CosetLabel, TableCache, DEFAULT_BUDGET};

fn run() -> hecke::Result<()> {
    let dir = tempfile::tempdir()?;
    let cache = TableCache::new(dir.path())?;
    let label = CosetLabel::new(3, vec![0, 1, 2])?;
    let computed = cache.load_or_compute(&label, DEFAULT_BUDGET)?;
    println!("stored {} representatives at {}", computed.reps.len(), cache.path_for(&label).display());
    let reloaded = cache.load(&label)?.expect("just stored");
    println!("reloaded table identical: {}", reloaded == computed);
    println!("{}", computed.to_csv().lines().next().unwrap_or(""));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
