//! Expands the bivariate generating function of the M-triangles and reports
//! which rendering of its denominator reproduces brute force.

use shuffle_lattice::triangles::{adjudicate_denominators, m_series, m_triangle_formula, BRUTE_SIZE_CAP};
use shuffle_lattice::{Result, ShuffleParams};

pub fn run_example() -> Result<()> {
    let series = m_series(6, 6);
    for (m, n) in [(0, 3), (1, 1), (2, 1)] {
        println!("[x^{m} y^{n}] = {}", series.get(m, n));
    }
    let agree = (0..=6).all(|m| (0..=6).all(|n| series.get(m, n) == m_triangle_formula(ShuffleParams::new(m, n))));
    println!("series matches the closed form up to (6, 6): {agree}");
    println!("{}", adjudicate_denominators(3, 3, BRUTE_SIZE_CAP)?.summary());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
