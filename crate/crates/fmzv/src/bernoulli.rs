//! Seki–Bernoulli numbers and divided-Bernoulli residues mod prime powers.
//!
//! Convention: `B_1 = +1/2` (Seki). [`bernoulli_minus`] flips only that
//! entry, which is the convention the Euler–Maclaurin tails want.
//!
//! Even-index values come from the tangent-number triangle (Brent–Harvey):
//! an all-integer double sweep computing `T_1..T_N` with
//! `tan x = sum T_k x^{2k-1}/(2k-1)!`, followed by
//! `B_{2m} = (-1)^{m-1} T_m (2m) / (4^m (4^m - 1))`. This reaches index ~10^3
//! (needed by the direct depth-one residues below) in well under a second,
//! where a rational-arithmetic recurrence crawls.
//!
//! The depth-one building block `zfrak(k)` of the finite-MZV world is a
//! Bernoulli quotient per prime:
//!
//! * [`zfrak_direct`]: `zfrak(k) = B_{p^{n-1}(p-1)-k+1} / (k-1+p^{n-1})`
//!   mod `p^n` (supported for n <= 2; the Bernoulli index grows like `p^n`).
//! * [`zfrak_a`]: the Kummer-type congruence
//!   `zfrak(k+l) p^l = sum_{j=1}^{n-l} (-1)^j binom(n-l, j)
//!   Bhat_{j(p-1)-k-l+1} p^l  (mod p^n)`, `l >= 1`, with
//!   `Bhat_m = B_m / m`. This is the route theorem sweeps use; it stays
//!   valid down to much smaller primes than the direct definition.
//!
//! The two routes agree for `p >= k+3` (checked in tests); at boundary
//! primes they represent the same class of `A_n` by different residues,
//! which is why sweeps skip primes below their congruence threshold.

use crate::error::{Error, Result};
use crate::modular::Modulus;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::sync::RwLock;

/// Tangent numbers `T_1..T_n`: 1, 2, 16, 272, 7936, ...
pub fn tangent_numbers(n: usize) -> Vec<BigInt> {
    if n == 0 {
        return Vec::new();
    }
    let mut t = vec![BigInt::zero(); n + 1];
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k as u64 - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            let a = &t[j - 1] * BigInt::from((j - k) as u64);
            let b = &t[j] * BigInt::from((j - k + 2) as u64);
            t[j] = a + b;
        }
    }
    t.remove(0);
    t
}

// cache of B_{2m} for m = 0..len-1
static EVEN_BERNOULLI: Lazy<RwLock<Vec<BigRational>>> =
    Lazy::new(|| RwLock::new(vec![BigRational::one()]));

fn ensure_even(m: usize) {
    {
        let cache = EVEN_BERNOULLI.read().unwrap();
        if cache.len() > m {
            return;
        }
    }
    let mut cache = EVEN_BERNOULLI.write().unwrap();
    if cache.len() > m {
        return;
    }
    let target = (m + 1).next_power_of_two().max(64);
    let tangents = tangent_numbers(target);
    let mut values = Vec::with_capacity(target + 1);
    values.push(BigRational::one());
    for i in 1..=target {
        // B_{2i} = (-1)^{i-1} T_i (2i) / (4^i (4^i - 1))
        let four_i = BigInt::one() << (2 * i);
        let denom = &four_i * (&four_i - BigInt::one());
        let mut num = &tangents[i - 1] * BigInt::from(2 * i as u64);
        if i % 2 == 0 {
            num = -num;
        }
        values.push(BigRational::new(num, denom));
    }
    *cache = values;
}

/// The n-th Seki–Bernoulli number (`B_1 = +1/2`).
pub fn bernoulli(n: u64) -> BigRational {
    if n == 1 {
        return BigRational::new(1.into(), 2.into());
    }
    if n % 2 == 1 {
        return BigRational::zero();
    }
    let m = (n / 2) as usize;
    ensure_even(m);
    EVEN_BERNOULLI.read().unwrap()[m].clone()
}

/// The n-th Bernoulli number with `B_1 = -1/2`; all other entries agree.
pub fn bernoulli_minus(n: u64) -> BigRational {
    if n == 1 {
        return BigRational::new((-1).into(), 2.into());
    }
    bernoulli(n)
}

/// Divided Bernoulli number `Bhat_m = B_m / m` (Seki convention), `m >= 1`.
pub fn bernoulli_hat(m: u64) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::domain("divided Bernoulli number needs m >= 1"));
    }
    Ok(bernoulli(m) / BigRational::from_integer(m.into()))
}

/// One depth-one residue: the value of `zfrak(k+shift) * x^shift` at a
/// single prime, `residue` taken mod `p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZfrakTerm {
    pub p: u64,
    pub n: u32,
    pub shift: u32,
    pub residue: u64,
}

/// `zfrak(k)` mod `p^n` from the defining Bernoulli quotient. Supported for
/// `n <= 2`, and for `n = 2` only `p <= 31` (the Bernoulli index is about
/// `p^2`). `None` means the prime is skipped (denominator collision).
pub fn zfrak_direct(m: &Modulus, k: u32) -> Result<Option<ZfrakTerm>> {
    if m.n > 2 {
        return Err(Error::Capability(
            "direct zfrak values are limited to n <= 2".into(),
        ));
    }
    if m.n == 2 && m.p > 31 {
        return Err(Error::Capability(format!(
            "direct zfrak at n=2 needs Bernoulli index ~p^2; p={} > 31",
            m.p
        )));
    }
    if k == 0 {
        return Err(Error::domain("zfrak needs k >= 1"));
    }
    let q = m.p.pow(m.n - 1);
    let index = (q * (m.p - 1)).checked_sub(k as u64 - 1);
    let Some(index) = index.filter(|&i| i >= 1) else {
        return Ok(None); // k too large for this prime
    };
    let value =
        bernoulli(index) / BigRational::from_integer(BigInt::from(k as u64 - 1) + BigInt::from(q));
    Ok(m.reduce_rational(&value).map(|residue| ZfrakTerm {
        p: m.p,
        n: m.n,
        shift: 0,
        residue,
    }))
}

/// `zfrak(k+l) * x^l` mod `p^n` via the Kummer-type congruence (see module
/// docs); requires `1 <= l < n` and `k >= 1`. `None` skips the prime: either
/// a Bernoulli index would be non-positive (`p <= k+l`) or a denominator
/// collides with `p`.
pub fn zfrak_a(m: &Modulus, k: u32, l: u32) -> Result<Option<ZfrakTerm>> {
    if l == 0 || l >= m.n {
        return Err(Error::domain(format!(
            "zfrak_a needs 1 <= l < n, got l={l}, n={}",
            m.n
        )));
    }
    if k == 0 {
        return Err(Error::domain("zfrak_a needs k >= 1"));
    }
    let mut total = BigRational::zero();
    for j in 1..=(m.n - l) as u64 {
        let index = (j as i64) * (m.p as i64 - 1) - k as i64 - l as i64 + 1;
        if index < 1 {
            return Ok(None); // prime below the congruence's reach
        }
        let mut term =
            bernoulli_hat(index as u64)? * crate::index::binom((m.n - l) as i64, j as i64);
        if j % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    total *= BigRational::from_integer(BigInt::from(m.p).pow(l));
    Ok(m.reduce_rational(&total).map(|residue| {
        debug_assert_eq!(residue % m.p.pow(l), 0, "residue must be divisible by p^l");
        ZfrakTerm {
            p: m.p,
            n: m.n,
            shift: l,
            residue,
        }
    }))
}

/// Residue of `zfrak(arg) * x^l` mod `p^n`, choosing the route by shape:
/// `l >= 1` goes through [`zfrak_a`] (with `k = arg - l`), `l = 0` through
/// [`zfrak_direct`].
pub fn zfrak_x(m: &Modulus, arg: u32, l: u32) -> Result<Option<u64>> {
    if l == 0 {
        return Ok(zfrak_direct(m, arg)?.map(|t| t.residue));
    }
    if arg <= l {
        return Err(Error::domain(format!(
            "zfrak argument {arg} must exceed the x-power {l}"
        )));
    }
    Ok(zfrak_a(m, arg - l, l)?.map(|t| t.residue))
}
