// The ring map dropping a leading zero exponent.
//
// `cargo run --release --example psi_morphism`

use hecke::coset_enum::CosetLabel;
use hecke::hecke_algebra::{psi, HeckeElement};

fn run() -> hecke::Result<()> {
    let d = HeckeElement::basis(&CosetLabel::new(3, vec![0, 1, 1, 2])?);
    let square = d.mul(&d)?;
    println!("D * D = {square}");
    println!("psi(D * D) = {}", psi(&square)?);
    let image = psi(&d)?;
    println!("psi(D) * psi(D) = {}", image.mul(&image)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
