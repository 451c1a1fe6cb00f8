//! Exact binomial-sum bookkeeping behind the depth-(a+b+3) evaluation with
//! two interior entries of weight 2.
//!
//! The constant attached to `mathfrak{z}(a+b+3) x` there arrives as a triple
//! sum `C` of products of binomial coefficients.  That sum splits into six
//! double sums `I ..= VI`, each of which collapses to a closed form, and for
//! `a + b` even the total telescopes to `1 + (-1)^a binom(a+b+3, b+2)`.
//! Everything here is exact integer arithmetic; the two routes to `C`
//! (raw triple sum vs. the six-part split) must agree for every `(a, b)`,
//! parity aside, and the closed forms are asserted on the even-parity grid.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index::{binom_int, factorial};

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `I = (-1)^(a+1) sum_{l+m=b-1} sum_{r+s=a} (-1)^(s+m)
///      binom(r+l+1, r) binom(s+m+1, s) binom(a+b+3, s+m+2)`.
pub fn part_i(a: i64, b: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for l in 0..b {
        let m = b - 1 - l;
        for r in 0..=a {
            let s = a - r;
            acc += sign(s + m)
                * binom_int(r + l + 1, r)
                * binom_int(s + m + 1, s)
                * binom_int(a + b + 3, s + m + 2);
        }
    }
    sign(a + 1) * acc
}

/// `II = (-1)^(a+1) sum_{l+m=b-1} sum_{r+s=a} binom(r+l+1, r) binom(s+m+1, s)`.
pub fn part_ii(a: i64, b: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for l in 0..b {
        let m = b - 1 - l;
        for r in 0..=a {
            let s = a - r;
            acc += binom_int(r + l + 1, r) * binom_int(s + m + 1, s);
        }
    }
    sign(a + 1) * acc
}

/// `III = 2 (-1)^a sum_{r+s=a} (-1)^s binom(r+b+1, r) binom(a+b+3, s+1)`.
pub fn part_iii(a: i64, b: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for r in 0..=a {
        let s = a - r;
        acc += sign(s) * binom_int(r + b + 1, r) * binom_int(a + b + 3, s + 1);
    }
    BigInt::from(2) * sign(a) * acc
}

/// `IV = 2 (-1)^(a+1) sum_{r+s=a} binom(r+b+1, r)`.
pub fn part_iv(a: i64, b: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for r in 0..=a {
        acc += binom_int(r + b + 1, r);
    }
    BigInt::from(2) * sign(a + 1) * acc
}

/// `V = sum_{m+n=a-1} (-1)^n sum_{r+s=n} (-1)^(s+m+1)
///      binom(r+b+1, r) binom(s+m+1, s) binom(a+b+3, s+m+2)`.
pub fn part_v(a: i64, b: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for m in 0..a {
        let n = a - 1 - m;
        for r in 0..=n {
            let s = n - r;
            acc += sign(n)
                * sign(s + m + 1)
                * binom_int(r + b + 1, r)
                * binom_int(s + m + 1, s)
                * binom_int(a + b + 3, s + m + 2);
        }
    }
    acc
}

/// `VI = sum_{m+n=a-1} (-1)^(n+1) sum_{r+s=n} binom(r+b+1, r) binom(s+m+1, s)`.
pub fn part_vi(a: i64, b: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for m in 0..a {
        let n = a - 1 - m;
        let mut inner = BigInt::zero();
        for r in 0..=n {
            let s = n - r;
            inner += binom_int(r + b + 1, r) * binom_int(s + m + 1, s);
        }
        acc += sign(n + 1) * inner;
    }
    acc
}

/// The constant as it first appears: a sum of three double/triple sums, the
/// braces `{binom(a+b+3, .) + (-1)^.}` not yet expanded.
pub fn c_triple_sum(a: i64, b: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for l in 0..b {
        let m = b - 1 - l;
        for r in 0..=a {
            let s = a - r;
            acc += sign(a)
                * binom_int(r + l + 1, r)
                * binom_int(s + m + 1, s)
                * sign(s + m + 1)
                * (binom_int(a + b + 3, s + m + 2) + sign(s + m));
        }
    }
    for r in 0..=a {
        let s = a - r;
        acc += BigInt::from(2)
            * sign(a)
            * binom_int(r + b + 1, r)
            * sign(s)
            * (binom_int(a + b + 3, s + 1) + sign(s + 1));
    }
    for m in 0..a {
        let n = a - 1 - m;
        for r in 0..=n {
            let s = n - r;
            acc += sign(n)
                * binom_int(r + b + 1, r)
                * binom_int(s + m + 1, s)
                * sign(s + m + 1)
                * (binom_int(a + b + 3, s + m + 2) + sign(s + m));
        }
    }
    acc
}

/// Closed form of each part.  `I` vanishes only when `a + b` is even; the
/// other five hold for every `(a, b)` but are only relied upon on the
/// even-parity grid.
pub fn closed_i(_a: i64, _b: i64) -> BigInt {
    BigInt::zero()
}

pub fn closed_ii(a: i64, b: i64) -> BigInt {
    sign(a + 1) * b * binom_int(a + b + 2, a)
}

pub fn closed_iii(a: i64, b: i64) -> BigInt {
    BigInt::from(2) + BigInt::from(2) * sign(a) * binom_int(a + b + 2, a + 1)
}

pub fn closed_iv(a: i64, b: i64) -> BigInt {
    BigInt::from(2) * sign(a + 1) * binom_int(a + b + 2, a)
}

pub fn closed_v(a: i64, b: i64) -> BigInt {
    sign(a) * a * binom_int(a + b + 2, a + 1) + sign(a) * binom_int(a + b + 1, a) - BigInt::one()
}

pub fn closed_vi(a: i64, b: i64) -> BigInt {
    sign(a) * binom_int(a + b + 1, a - 1)
}

/// `C = 1 + (-1)^a binom(a+b+3, b+2)` for `a + b` even.
pub fn c_closed(a: i64, b: i64) -> BigInt {
    BigInt::one() + sign(a) * binom_int(a + b + 3, b + 2)
}

/// Both routes to `C` plus the six parts, computed from their defining sums.
#[derive(Debug, Clone)]
pub struct CDecomposition {
    pub a: i64,
    pub b: i64,
    /// Parts `I ..= VI` in order.
    pub parts: [BigInt; 6],
    /// The raw triple sum, braces unexpanded.
    pub c_bruteforce: BigInt,
}

impl CDecomposition {
    pub fn compute(a: i64, b: i64) -> Result<Self> {
        if a < 0 || b < 0 {
            return Err(Error::domain(format!(
                "decomposition needs a, b >= 0, got ({a}, {b})"
            )));
        }
        Ok(CDecomposition {
            a,
            b,
            parts: [
                part_i(a, b),
                part_ii(a, b),
                part_iii(a, b),
                part_iv(a, b),
                part_v(a, b),
                part_vi(a, b),
            ],
            c_bruteforce: c_triple_sum(a, b),
        })
    }

    pub fn parts_total(&self) -> BigInt {
        self.parts.iter().sum()
    }

    /// Splitting the braces is pure algebra, so the two routes must agree
    /// for every `(a, b)` regardless of parity.
    pub fn routes_agree(&self) -> bool {
        self.parts_total() == self.c_bruteforce
    }

    /// On the even-parity grid every part matches its closed form and the
    /// total matches `c_closed`.
    pub fn closed_forms_agree(&self) -> bool {
        debug_assert!((self.a + self.b) % 2 == 0);
        let closed = [
            closed_i(self.a, self.b),
            closed_ii(self.a, self.b),
            closed_iii(self.a, self.b),
            closed_iv(self.a, self.b),
            closed_v(self.a, self.b),
            closed_vi(self.a, self.b),
        ];
        self.parts == closed && self.c_bruteforce == c_closed(self.a, self.b)
    }
}

/// One row of the printable decomposition table: the six computed parts and
/// all three routes to the constant (raw triple sum, sum of closed-form
/// parts, final binomial).
#[derive(Debug, Clone)]
pub struct AppendixRow {
    pub a: i64,
    pub b: i64,
    pub parts: [BigInt; 6],
    pub c_bruteforce: BigInt,
    pub c_closed: BigInt,
    pub c_expected: BigInt,
    pub ok: bool,
}

/// Even-parity rows with `a + b <= wtcap`, ordered by `(a + b, a)`.
pub fn table_rows(wtcap: i64) -> Result<Vec<AppendixRow>> {
    let mut rows = Vec::new();
    for w in (0..=wtcap).step_by(2) {
        for a in 0..=w {
            let b = w - a;
            let d = CDecomposition::compute(a, b)?;
            let closed_parts: BigInt = [
                closed_i(a, b),
                closed_ii(a, b),
                closed_iii(a, b),
                closed_iv(a, b),
                closed_v(a, b),
                closed_vi(a, b),
            ]
            .iter()
            .sum();
            let expected = c_closed(a, b);
            let ok = d.routes_agree()
                && d.closed_forms_agree()
                && closed_parts == expected
                && d.c_bruteforce == expected;
            rows.push(AppendixRow {
                a,
                b,
                parts: d.parts,
                c_bruteforce: d.c_bruteforce,
                c_closed: closed_parts,
                c_expected: expected,
                ok,
            });
        }
    }
    Ok(rows)
}

/// Partial-fraction identity
/// `sum_{k=0}^n (-1)^k binom(n, k) / (x + k) = n! / (x (x+1) ... (x+n))`,
/// the engine behind the part-by-part collapses.  Returns both sides, exact;
/// errors at the poles `x in {0, -1, ..., -n}`.
pub fn pfd_sides(n: u32, x: &BigRational) -> Result<(BigRational, BigRational)> {
    for k in 0..=n as i64 {
        if (x + BigRational::from(BigInt::from(k))).is_zero() {
            return Err(Error::domain(format!("pole at x = {}", -k)));
        }
    }
    let mut lhs = BigRational::zero();
    let mut rhs_den = BigRational::one();
    for k in 0..=n as i64 {
        let shifted = x + BigRational::from(BigInt::from(k));
        lhs += BigRational::from(sign(k) * binom_int(n as i64, k)) / &shifted;
        rhs_den *= shifted;
    }
    let rhs = BigRational::from(factorial(n)) / rhs_den;
    Ok((lhs, rhs))
}

/// Convenience wrapper: checks the identity and reports only success.
pub fn pfd_identity_holds(n: u32, x: &BigRational) -> Result<bool> {
    let (lhs, rhs) = pfd_sides(n, x)?;
    Ok(lhs == rhs)
}
