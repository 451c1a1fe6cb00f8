//! Truncated harmonic sums mod p^2: Wolstenholme's theorem and what
//! replaces it at higher depth.

use fmzv::modular::{mhs, mhs_star, Window};
use fmzv::Index;

fn main() -> fmzv::Result<()> {
    let w = Window::new(2, 7, 61)?;

    // H_{p-1} = 1 + 1/2 + ... + 1/(p-1) vanishes mod p^2 for p >= 5.
    let one = Index::new(vec![1])?;
    println!("p      H_(p-1) mod p^2");
    for &p in &w.primes {
        let m = w.modulus(p);
        println!("{p:<6} {}", mhs(&m, &one));
    }

    // Depth two: the harmonic relation e1 * e2 = e(1,2) + e(2,1) + e(3)
    // forces the first column to vanish with H_(p-1), and the star sum
    // expands over contractions, so the second column vanishes identically.
    let k12 = Index::new(vec![1, 2])?;
    let k21 = Index::new(vec![2, 1])?;
    let k3 = Index::new(vec![3])?;
    println!("\np      A(1,2)+A(2,1)+A(3) mod p^2   A*(1,2)-A(1,2)-A(3) mod p^2");
    for &p in &w.primes {
        let m = w.modulus(p);
        let lhs = m.add(m.add(mhs(&m, &k12), mhs(&m, &k21)), mhs(&m, &k3));
        let star = m.sub(m.sub(mhs_star(&m, &k12), mhs(&m, &k12)), mhs(&m, &k3));
        println!("{p:<6} {lhs:<29} {star}");
    }
    Ok(())
}
