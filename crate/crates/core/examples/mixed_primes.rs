// Products of double cosets at two different primes.
//
// `cargo run --release --example mixed_primes`

use hecke::coset_enum::CosetLabel;
use hecke::hecke_algebra::{coprime_product, verify_coprime_bruteforce, PAIRWISE_BUDGET};

fn run() -> hecke::Result<()> {
    let a = CosetLabel::new(2, vec![0, 1, 1, 2])?;
    let b = CosetLabel::new(3, vec![0, 0, 0, 1])?;
    let prod = coprime_product(&a, &b)?;
    println!("{a} * {b} = {prod}, degree {}", prod.degree());
    let check = verify_coprime_bruteforce(&a, &b, PAIRWISE_BUDGET)?;
    println!(
        "{} pairs, {} distinct cosets, all in one double coset: {}",
        check.pairs, check.distinct_cosets, check.all_in_product
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
