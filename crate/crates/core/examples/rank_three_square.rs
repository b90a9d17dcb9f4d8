// The square of diag(1,p,p^2) at n = 3, computed and printed without reference values.
//
// `cargo run --release --example rank_three_square`

use hecke::coset_enum::CosetLabel;
use hecke::hecke_algebra::{multiply, multiply_bruteforce};

fn run() -> hecke::Result<()> {
    for p in [2, 3, 5] {
        let d = CosetLabel::new(p, vec![0, 1, 2])?;
        let prod = multiply(&d, &d)?;
        println!("p={p}: {}", prod.element);
        println!("  pairwise oracle agrees: {}", multiply_bruteforce(&d, &d)? == prod);
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
