//! Double shuffle on the modular side: both products give linear
//! relations between truncated sums that hold at every prime.

use fmzv::modular::Window;
use fmzv::theorems;
use fmzv::Index;

fn main() -> fmzv::Result<()> {
    let w = Window::new(2, 7, 97)?;
    let k = Index::new(vec![2])?;
    let l = Index::new(vec![1, 2])?;

    let har = theorems::verify_dsr_harmonic(&w, &k, &l)?;
    let sh = theorems::verify_dsr_shuffle(&w, &k, &l)?;
    for c in [har, sh] {
        println!(
            "{:<28} {:?} on {} primes",
            c.case,
            c.status,
            c.primes_compared.len()
        );
    }
    Ok(())
}
