//! Prints the Hasse diagram of `Shuf(1, 2)` and the cover graph of
//! `Bub(1, 1)` in DOT format.

use shuffle_lattice::lattices::{bubble_covers, hasse_diagram};
use shuffle_lattice::words::DEFAULT_SIZE_CAP;
use shuffle_lattice::{Result, ShuffleParams};

pub fn run_example() -> Result<()> {
    print!("{}", hasse_diagram(ShuffleParams::new(1, 2), false, DEFAULT_SIZE_CAP)?);
    print!("{}", hasse_diagram(ShuffleParams::new(1, 1), true, DEFAULT_SIZE_CAP)?);
    for cover in bubble_covers(ShuffleParams::new(1, 1), DEFAULT_SIZE_CAP)? {
        println!("{} < {} ({})", cover.lower, cover.upper, cover.kind.dot_name());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
