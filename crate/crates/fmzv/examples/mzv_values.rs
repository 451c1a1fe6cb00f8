//! High-precision multiple zeta values and a stuffle sanity check.

use fmzv::numeric::Ctx;
use fmzv::Index;

fn main() -> fmzv::Result<()> {
    let ctx = Ctx::new(40)?;
    let digits = Some(40);

    for parts in [
        vec![2],
        vec![3],
        vec![1, 2],
        vec![2, 3],
        vec![3, 2],
        vec![1, 1, 3],
    ] {
        let k = Index::new(parts)?;
        println!("z{k} = {}", ctx.mzv(&k)?.to_string_radix(10, digits));
    }

    // z(2) z(3) = z(2,3) + z(3,2) + z(5): the product of two series
    // splits over the orderings of their summation variables.
    let lhs = ctx.zeta(2)? * ctx.zeta(3)?;
    let rhs =
        ctx.mzv(&Index::new(vec![2, 3])?)? + ctx.mzv(&Index::new(vec![3, 2])?)? + ctx.zeta(5)?;
    println!(
        "stuffle residual = {:.3e}",
        fmzv::numeric::abs_f64(&(lhs - rhs))
    );
    Ok(())
}
