// Structure constants of a product, with the pairwise oracle for comparison.
//
// `cargo run --release --example multiply`

use hecke::coset_enum::CosetLabel;
use hecke::hecke_algebra::{multiply, multiply_bruteforce};

fn run() -> hecke::Result<()> {
    let a = CosetLabel::new(3, vec![0, 1, 1])?;
    let b = CosetLabel::new(3, vec![0, 0, 1])?;
    let d = multiply(&a, &b)?;
    println!("{} * {} = {}", a, b, d.element);
    println!("mass check: {}", d.mass_check);
    println!("{}", d.to_json_pretty()?);
    println!("{}", d.to_csv());
    println!("pairwise oracle agrees: {}", multiply_bruteforce(&a, &b)? == d);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
