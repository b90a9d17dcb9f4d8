// Products of the operators used by the amplifier, for distinct and equal primes.
//
// `cargo run --release --example linearization`

use hecke::amplifier::linearization_table;
use hecke::hecke_algebra::verify_corollary;

fn run() -> hecke::Result<()> {
    for (p, q) in [(2, 3), (2, 2)] {
        let t = linearization_table(4, p, q)?;
        println!("{}", t.first);
        println!("{}", t.second);
        println!("normalized first product:");
        for (m, c) in t.normalized_first() {
            println!("  {c} x T_{m}");
        }
        println!();
    }
    print!("{}", verify_corollary(4, 3, 3)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
