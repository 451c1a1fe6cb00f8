//! Regularization of divergent words: strip trailing ones into a
//! polynomial in e1, then read off the constant term.

use fmzv::numeric::Ctx;
use fmzv::reg;
use fmzv::words::{LinComb, Product};
use fmzv::Index;

fn main() -> fmzv::Result<()> {
    // e(2,1) diverges as a series; its decomposition over each product
    // writes it as a polynomial in e1 with convergent coefficients.
    let idx = Index::new(vec![2, 1])?;
    let x = LinComb::from_index(&idx);
    for prod in [Product::Harmonic, Product::Shuffle] {
        let p = reg::decompose(&x, prod)?;
        println!("{prod} decomposition of e{idx}:");
        for i in 0..=p.degree().unwrap_or(0) {
            let c = p.coeff(i);
            if !c.is_zero() {
                println!("  e1^{i} * ({})", c.render_indices()?);
            }
        }
        println!("  reg = {}", reg::reg(&x, prod)?.render_indices()?);
    }

    // For a single trailing one the two constant terms happen to agree
    // (Euler: z(1,2) = z(3)); from two trailing ones on they differ.
    let ctx = Ctx::new(30)?;
    for parts in [vec![2, 1], vec![2, 1, 1]] {
        let idx = Index::new(parts)?;
        for prod in [Product::Harmonic, Product::Shuffle] {
            let v = ctx.mzv_reg(&idx, prod)?;
            println!("{prod} reg of z{idx} = {}", v.to_string_radix(10, Some(30)));
        }
    }
    Ok(())
}
