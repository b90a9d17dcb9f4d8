// The six-term square of diag(1,p,...,p,p^2).
//
// `cargo run --release --example fundamental_square`

use hecke::coset_enum::DEFAULT_BUDGET;
use hecke::hecke_algebra::{fundamental_square, verify_theorem_a};

fn run() -> hecke::Result<()> {
    let d = fundamental_square(4, 2, DEFAULT_BUDGET)?;
    for (label, m) in d.element.terms() {
        println!("{m:>5} x {label}   (degree {})", d.degrees[label]);
    }
    println!();
    print!("{}", verify_theorem_a(4, 3)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
