// The two explicit representative sets of diag(1,p,...,p,p^2) and the split of the first.
//
// `cargo run --release --example representative_sets`

use hecke::coset_enum::{r0_cardinality, r0_set, r1_cardinality, r1_set, R0Split};

fn run() -> hecke::Result<()> {
    for (n, p) in [(3, 2), (4, 2), (4, 3)] {
        let r0 = r0_set(n, p)?;
        let r1 = r1_set(n, p)?;
        println!(
            "n={n} p={p}: |R0| = {} (formula {}), |R1| = {} (formula {})",
            r0.len(),
            r0_cardinality(n, p),
            r1.len(),
            r1_cardinality(n, p)
        );
    }

    let split = R0Split::compute(4, 2)?;
    println!(
        "\nsplit at n=4 p=2: {} with vanishing interior, {} without",
        split.interior_zero.len(),
        split.interior_nonzero.len()
    );
    for (c, class) in split.interior_nonzero.iter().take(2) {
        println!("{c}\n  C0 D lies in {class}\n");
    }
    println!("targets match: {}", split.targets_match()?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
