//! Factors an upper interval `[u, top]` of a shuffle lattice into a product
//! of smaller shuffle lattices and checks the explicit isomorphism.

use shuffle_lattice::lattices::{build_shuffle_lattice, check_interval_decomposition, interval_factor_map};
use shuffle_lattice::triangles::BRUTE_SIZE_CAP;
use shuffle_lattice::words::interval_shape;
use shuffle_lattice::{Result, ShuffleParams, ShuffleWord};

pub fn run_example() -> Result<()> {
    let params = ShuffleParams::new(3, 3);
    let u = ShuffleWord::parse("x1y2x3", params)?;
    let shape = interval_shape(&u, params);
    println!("u = {u}: k = {}, eta = {:?}, lambda = {:?}", shape.k, shape.eta, shape.lambda);
    let factors: Vec<String> = shape.factors().map(|p| format!("Shuf{p}")).collect();
    println!("[u, top] = {}", factors.join(" x "));

    let v = ShuffleWord::parse("y1x1y2x3y3", params)?;
    let image = interval_factor_map(&u, params, &v).expect("v lies above u");
    let image: Vec<String> = image.iter().map(ToString::to_string).collect();
    println!("{v} -> ({})", image.join(", "));

    let lattice = build_shuffle_lattice(params, BRUTE_SIZE_CAP)?;
    println!("isomorphism holds: {}", check_interval_decomposition(&lattice, params, &u, BRUTE_SIZE_CAP)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
