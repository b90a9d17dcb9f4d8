// Build the amplifier from synthetic eigenvalues and evaluate it.
//
// `cargo run --example amplifier`

use hecke::amplifier::{build_amplifier, dichotomy, evaluate, EigenvalueData};
use num_complex::Complex;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn run() -> hecke::Result<()> {
    let data = EigenvalueData::satisfying_identity([
        (2, Complex::new(q(3, 2), q(1, 4))),
        (3, Complex::new(q(0, 1), q(1, 3))),
        (5, Complex::new(q(-1, 1), q(1, 1))),
        (7, Complex::new(q(2, 5), q(0, 1))),
    ])?;
    let v = build_amplifier(60.0, &data)?;
    println!("{}", v.to_json()?);
    let m = evaluate(&v, &data)?;
    println!("M = {} + {}i", m.re, m.im);
    for (p, holds) in dichotomy(&v, &data)? {
        let r = data.get(p).unwrap();
        println!("p={p}: |a_p|^2 = {}, a_p2 = {}, dichotomy {holds}", r.norm_sqr(), r.a_p2);
    }
    println!("{}", data.to_json()?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
