//! Reverse characteristic polynomials: brute-force Möbius sums against the
//! closed form, and an upper interval against its product factorization.

use shuffle_lattice::lattices::build_shuffle_lattice;
use shuffle_lattice::triangles::{
    char_poly_brute, char_poly_formula, char_poly_of, interval_char_poly, BRUTE_SIZE_CAP,
};
use shuffle_lattice::{Result, ShuffleParams, ShuffleWord};

pub fn run_example() -> Result<()> {
    for (m, n) in [(1, 1), (2, 1), (3, 2)] {
        let params = ShuffleParams::new(m, n);
        let brute = char_poly_brute(params, BRUTE_SIZE_CAP)?;
        println!("ch~{params} = {brute}");
        assert_eq!(brute, char_poly_formula(params));
    }

    let params = ShuffleParams::new(3, 2);
    let lattice = build_shuffle_lattice(params, BRUTE_SIZE_CAP)?;
    let u = ShuffleWord::parse("x1y1x3", params)?;
    let (lower, top) = (lattice.index_of(&u).expect("u is a shuffle word"), lattice.top().expect("top"));
    let from_interval = char_poly_of(&lattice.interval(lower, top)?)?;
    println!("ch~[{u}, top] = {from_interval}");
    assert_eq!(from_interval, interval_char_poly(&u, params));
    println!("mu(bottom, top) = {}", lattice.mobius_value(lattice.bottom().expect("bottom"), top)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
