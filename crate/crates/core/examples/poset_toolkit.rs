//! The generic poset layer: building a poset from covers, Möbius values,
//! direct products and checking an explicit order isomorphism.

use shuffle_lattice::poset::{build_poset, check_order_isomorphism, direct_product};
use shuffle_lattice::Result;

pub fn run_example() -> Result<()> {
    let chain = build_poset(vec!['a', 'b', 'c'], &[(0, 1), (1, 2)])?;
    let two = build_poset(vec![0u8, 1], &[(0, 1)])?;
    let grid = direct_product(&chain, &two);
    println!("{} elements, height {}", grid.len(), grid.height());
    let (bottom, top) = (grid.bottom().expect("bottom"), grid.top().expect("top"));
    println!("mu(bottom, top) = {}", grid.mobius_value(bottom, top)?);

    let swapped = direct_product(&two, &chain);
    let map: Vec<usize> =
        grid.labels().iter().map(|&(c, b)| swapped.index_of(&(b, c)).expect("same elements")).collect();
    println!("coordinate swap is an isomorphism: {}", check_order_isomorphism(&grid, &swapped, &map));
    print!("{}", chain.to_dot("chain"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
