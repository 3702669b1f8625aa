//! Bubble-lattice in-degree census, the H-triangle, and the substitutions
//! recovering the M-triangle and the characteristic polynomial from it.

use shuffle_lattice::identities::{verify_char_from_h, verify_h_to_m};
use shuffle_lattice::lattices::degree_statistics;
use shuffle_lattice::triangles::{h_triangle_brute, h_triangle_formula, BRUTE_SIZE_CAP};
use shuffle_lattice::{Result, ShuffleParams};

pub fn run_example() -> Result<()> {
    let params = ShuffleParams::new(1, 1);
    for (word, d) in degree_statistics(params, BRUTE_SIZE_CAP)? {
        println!("{:<5} in={} indel={} transpose={}", word.to_string(), d.in_total, d.in_indel, d.in_transpose);
    }
    for (m, n) in [(1, 1), (2, 2), (3, 1)] {
        let params = ShuffleParams::new(m, n);
        let brute = h_triangle_brute(params, BRUTE_SIZE_CAP)?;
        assert_eq!(brute, h_triangle_formula(params));
        println!("H{params} = {brute}");
        for verdict in [verify_h_to_m(params)?, verify_char_from_h(params)?] {
            println!("  {}: {}", verdict.name, if verdict.passed { "pass" } else { "FAIL" });
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
