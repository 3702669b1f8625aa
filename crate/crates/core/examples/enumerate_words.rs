//! Enumerates the shuffle words of `Shuf(m, n)` and compares the count with
//! the closed-form cardinality.

use shuffle_lattice::words::{enumerate_shuffle_words, rank, DEFAULT_SIZE_CAP};
use shuffle_lattice::{Result, ShuffleParams, ShuffleWord};

pub fn run_example() -> Result<()> {
    let params = ShuffleParams::new(2, 1);
    println!("Shuf{params}:");
    for word in enumerate_shuffle_words(params, DEFAULT_SIZE_CAP)? {
        println!("  {:<8} rank {}", word.to_string(), rank(&word, params));
    }

    for (m, n) in [(1, 1), (1, 2), (4, 4), (7, 3)] {
        let params = ShuffleParams::new(m, n);
        let listed = enumerate_shuffle_words(params, DEFAULT_SIZE_CAP)?.len();
        println!("|Shuf({m},{n})| = {listed} (closed form {})", params.cardinality());
    }

    let word = ShuffleWord::parse("y1y2x2y3x5x6", ShuffleParams::new(6, 3))?;
    println!("parsed {word}: {} x-letters, {} y-letters", word.count_x(), word.count_y());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
