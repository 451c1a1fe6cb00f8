//! Coefficients of the symmetric series attached to an index: the t-adic
//! expansion whose constant term is the symmetrized value.

use fmzv::numeric::Ctx;
use fmzv::sside::symmetric_hat;
use fmzv::words::Product;
use fmzv::Index;

fn main() -> fmzv::Result<()> {
    let ctx = Ctx::new(40)?;

    // With a run of ones the two regularizations no longer agree; the
    // series differ coefficientwise by multiples of z(2).
    let idx = Index::new(vec![1, 1, 2])?;
    let har = symmetric_hat(&ctx, &idx, Product::Harmonic, 3)?;
    let sh = symmetric_hat(&ctx, &idx, Product::Shuffle, 3)?;
    println!("series for z{idx}:");
    println!("     harmonic                           shuffle");
    for (j, (h, s)) in har.iter().zip(&sh).enumerate() {
        println!(
            "t^{j}: {:<34} {}",
            h.to_string_radix(10, Some(25)),
            s.to_string_radix(10, Some(25))
        );
    }
    let gap = (sh[0].clone() - har[0].clone()) / ctx.zeta(2)?;
    println!(
        "(shuffle - harmonic) at t^0, over z(2): {}",
        gap.to_string_radix(10, Some(25))
    );
    Ok(())
}
