// Degrees from closed forms, enumeration and the general formula.
//
// `cargo run --release --example degrees`

use hecke::coset_enum::{degree_with_source, index_formula_degree, CosetLabel, TheoremAShape};

fn run() -> hecke::Result<()> {
    let (n, p) = (5, 3);
    for shape in [
        TheoremAShape::Fundamental,
        TheoremAShape::TwoCubes,
        TheoremAShape::Fourth,
        TheoremAShape::UnitPairCube,
        TheoremAShape::UnitPairSquarePair,
    ] {
        let label = shape.label(n, p)?;
        let (d, source) = degree_with_source(&label);
        println!("{label:<24} {d:>12}  {source:?}");
    }

    let odd = CosetLabel::new(2, vec![0, 1, 3, 4])?;
    let (d, source) = degree_with_source(&odd);
    println!("{odd:<24} {d:>12}  {source:?}");
    println!("general formula agrees: {}", index_formula_degree(&odd) == d);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
