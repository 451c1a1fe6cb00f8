//! The three products on index words, expanded back into indices.

use fmzv::words::{index_product, Product};
use fmzv::Index;

fn main() -> fmzv::Result<()> {
    let k = Index::new(vec![2])?;
    let l = Index::new(vec![3])?;
    for prod in [Product::Harmonic, Product::Shuffle, Product::Muneta] {
        let x = index_product(prod, &k, &l);
        println!("{prod:>9}: e{k} * e{l} = {}", x.render_indices()?);
    }

    // Depth grows quickly: a depth-2 by depth-1 shuffle already has
    // every interleaving with its multiplicity.
    let k = Index::new(vec![1, 2])?;
    let x = index_product(Product::Shuffle, &k, &l);
    println!("  shuffle: e{k} * e{l} = {}", x.render_indices()?);
    Ok(())
}
