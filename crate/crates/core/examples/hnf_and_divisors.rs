// Canonical right-coset forms and determinantal divisors.
//
// `cargo run --example hnf_and_divisors`

use hecke::exact_linalg::{determinantal_vector, hnf, invariant_factors, same_double_coset, IntMatrix};

fn run() -> hecke::Result<()> {
    let g = IntMatrix::from_rows(&[vec![4, 6, 1], vec![2, 3, 5], vec![0, 8, 2]])?;
    println!("g =\n{g}\n");
    println!("hnf(g) =\n{}\n", hnf(&g)?);

    let dv = determinantal_vector(&g);
    println!("d_k(g): {:?}", dv.values);
    println!("invariant factors: {:?}", invariant_factors(&g));

    // u g v has the same divisors for unimodular u, v
    let u = IntMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 0], vec![3, 7, 1]])?;
    let v = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, -4, 1]])?;
    let ugv = u.checked_mul(&g)?.checked_mul(&v)?;
    println!("same double coset as u g v: {}", same_double_coset(&g, &ugv)?);
    println!("hnf(u g) = hnf(g): {}", hnf(&u.checked_mul(&g)?)? == hnf(&g)?);

    let d = IntMatrix::diag(&[1, 2, 4]);
    println!("same double coset as diag(1,2,4): {}", same_double_coset(&g, &d)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
