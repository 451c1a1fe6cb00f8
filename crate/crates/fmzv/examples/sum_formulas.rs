//! Weighted sum formulas over all indices of a fixed weight, checked
//! across a window of primes at level two.

use fmzv::modular::Window;
use fmzv::theorems;

fn main() -> fmzv::Result<()> {
    let w = Window::new(2, 7, 97)?;
    let mut cases = Vec::new();
    cases.extend(theorems::sweep_sum_f2(&w, 8)?);
    cases.extend(theorems::sweep_symsum(&w, 6)?);
    for c in &cases {
        println!(
            "{:<10} {:<26} {} primes",
            format!("{:?}", c.status),
            c.case,
            c.primes_compared.len()
        );
    }
    let fails = cases.iter().filter(|c| !c.passed()).count();
    println!("{} cases, {} not passing", cases.len(), fails);
    Ok(())
}
