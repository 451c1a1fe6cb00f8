//! Bernoulli numbers from the tangent-number recurrence, and the divided
//! values that drive every congruence on the modular side.

use num_traits::Zero;

use fmzv::bernoulli::{bernoulli, bernoulli_hat};

fn main() -> fmzv::Result<()> {
    for n in 0..=16u64 {
        let b = bernoulli(n);
        if !b.is_zero() {
            println!("B_{n:<2} = {b}");
        }
    }
    // Divided Bernoulli numbers B_m / m, the coefficients that appear in
    // depth-one evaluations.
    for m in [1u64, 2, 4, 6, 12] {
        println!("B_{m}/{m} = {}", bernoulli_hat(m)?);
    }
    Ok(())
}
