// Right-coset representatives of a double coset.
//
// `cargo run --release --example enumerate_cosets`

use hecke::coset_enum::{degree, enumerate_right_cosets, CosetLabel, DEFAULT_BUDGET};

fn run() -> hecke::Result<()> {
    let label = CosetLabel::new(2, vec![0, 1, 1, 2])?;
    let table = enumerate_right_cosets(&label, DEFAULT_BUDGET)?;
    println!("{label}: {} representatives, degree {}", table.reps.len(), degree(&label));
    for m in table.reps.iter().take(3) {
        println!("{m}\n");
    }
    println!("...");

    // shifting every exponent only rescales the representatives
    let shifted = enumerate_right_cosets(&label.shifted(1), DEFAULT_BUDGET)?;
    println!("{}: {} representatives", shifted.label, shifted.reps.len());

    // tables larger than the budget are refused before any work is done
    let big = CosetLabel::new(5, vec![0, 2, 2, 2, 4])?;
    match enumerate_right_cosets(&big, DEFAULT_BUDGET) {
        Err(e) => println!("{big}: {e}"),
        Ok(t) => println!("{big}: {} representatives", t.reps.len()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
