//! Computes the M-triangle of `Shuf(2, 2)` by all five methods and checks
//! that they agree.

use shuffle_lattice::triangles::{compute, Method, TriangleKind, BRUTE_SIZE_CAP};
use shuffle_lattice::{Result, ShuffleParams};

pub fn run_example() -> Result<()> {
    let params = ShuffleParams::new(2, 2);
    let mut values = Vec::new();
    for &method in Method::supported(TriangleKind::MTriangle) {
        let result = compute(TriangleKind::MTriangle, method, params, BRUTE_SIZE_CAP)?;
        println!("{:<9} {}", method.name(), result.value);
        values.push(result.value);
    }
    assert!(values.windows(2).all(|w| w[0] == w[1]));
    println!("all methods agree on M{params}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
