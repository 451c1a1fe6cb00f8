//! Heuristic detection of membership in the ideal generated by `zeta(2)`.
//!
//! Real-side statements are equalities modulo `zeta(2)`, so the difference of
//! the two sides should be a rational combination of products
//! `zeta(2)^a * zeta(odd) * ...`.  This module searches for such a
//! combination by integer-relation finding (exact-rational LLL) over a
//! spanning set of those products at the given weight.
//!
//! A hit is strong numerical evidence, not a proof; a miss proves nothing.
//! Results are therefore labeled heuristic and never fail a verification on
//! their own.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::{abs_f64, Ctx};

/// Largest coefficient denominator accepted as a plausible identity.
pub const MAX_DEN: u64 = 1_000_000;

/// One spanning product `zeta(2)^a * prod zeta(o_j)` with its value.
#[derive(Debug, Clone)]
pub struct Generator {
    pub label: String,
    pub zeta2_power: u32,
    pub odd_parts: Vec<u32>,
    pub value: Float,
}

/// A detected representation `x = sum c_i g_i`, with the sup of the residual.
#[derive(Debug, Clone)]
pub struct Detection {
    pub coeffs: Vec<(String, BigRational)>,
    pub residual: f64,
}

/// Partitions of `n` into odd parts of size at least 3, nonincreasing.
fn odd_partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut p = if max.is_multiple_of(2) { max - 1 } else { max };
    while p >= 3 {
        if p <= n {
            for mut rest in odd_partitions(n - p, p) {
                let mut v = vec![p];
                v.append(&mut rest);
                out.push(v);
            }
        }
        p -= 2;
    }
    out
}

/// Spanning set of `zeta(2) * Z` at the given weight, as far as products of
/// single zeta values span (weights up to 9).
pub fn zeta2_span(ctx: &Ctx, weight: u32) -> Result<Vec<Generator>> {
    if !(2..=9).contains(&weight) {
        return Err(Error::domain("spanning set available for weights 2..=9"));
    }
    let mut gens = Vec::new();
    for a in 1..=(weight / 2) {
        for odd in odd_partitions(weight - 2 * a, weight) {
            let mut value = Float::with_val(ctx.prec(), 1);
            for _ in 0..a {
                value *= ctx.zeta(2)?;
            }
            let mut label = if a == 1 {
                "z(2)".to_string()
            } else {
                format!("z(2)^{a}")
            };
            for &o in &odd {
                value *= ctx.zeta(o)?;
                label.push_str(&format!("*z({o})"));
            }
            gens.push(Generator {
                label,
                zeta2_power: a,
                odd_parts: odd,
                value,
            });
        }
    }
    Ok(gens)
}

fn rat_round(x: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}

/// Exact-rational LLL reduction (delta = 99/100) of integer row vectors.
fn lll(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let m = b.len();
    if m < 2 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));

    // Gram-Schmidt data recomputed from scratch; the lattices here are tiny.
    let gso = |b: &[Vec<BigInt>]| -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let n = b[0].len();
        let mut mu = vec![vec![BigRational::zero(); m]; m];
        let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(m);
        let mut norms = vec![BigRational::zero(); m];
        for i in 0..m {
            let mut v: Vec<BigRational> = b[i]
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            for j in 0..i {
                if norms[j].is_zero() {
                    continue;
                }
                let dot: BigRational = (0..n)
                    .map(|t| BigRational::from_integer(b[i][t].clone()) * &star[j][t])
                    .sum();
                let m_ij = dot / &norms[j];
                for t in 0..n {
                    let sub = &star[j][t] * &m_ij;
                    v[t] -= sub;
                }
                mu[i][j] = m_ij;
            }
            norms[i] = v.iter().map(|x| x * x).sum();
            star.push(v);
        }
        (mu, norms)
    };

    let mut k = 1;
    while k < m {
        let (mu, _) = gso(&b);
        for j in (0..k).rev() {
            let q = rat_round(&mu[k][j]);
            if !q.is_zero() {
                let row_j = b[j].clone();
                for (t, x) in b[k].iter_mut().enumerate() {
                    *x -= &q * &row_j[t];
                }
            }
        }
        let (mu, norms) = gso(&b);
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = k.max(2) - 1;
        }
    }
    b
}

/// Search for rationals `c_i` with bounded denominators such that
/// `x = sum c_i v_i` within `tol`.  Returns `None` when no convincing
/// relation is found; that outcome is inconclusive, never a refutation.
pub fn find_rational_combination(
    ctx: &Ctx,
    x: &Float,
    values: &[Float],
    tol: f64,
) -> Option<Vec<BigRational>> {
    if abs_f64(x) <= tol {
        return Some(vec![BigRational::zero(); values.len()]);
    }
    if values.is_empty() {
        return None;
    }
    // scale well below working precision so roundoff stays in the slack
    let digits = ctx.digits().min(40);
    let scale = Float::with_val(ctx.prec(), 10).pow((digits - 8) as i32);
    let to_int = |f: &Float| -> BigInt {
        let scaled = Float::with_val(ctx.prec(), f * &scale);
        let s = scaled
            .to_integer()
            .map(|z| z.to_string())
            .unwrap_or_else(|| "0".to_string());
        s.parse().unwrap_or_else(|_| BigInt::zero())
    };
    let m = values.len() + 1;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![BigInt::zero(); m + 1];
        row[i] = BigInt::one();
        row[m] = if i == 0 {
            to_int(x)
        } else {
            to_int(&values[i - 1])
        };
        rows.push(row);
    }
    let reduced = lll(rows);

    for row in &reduced {
        let m0 = &row[0];
        if m0.is_zero() {
            continue;
        }
        let coeffs: Vec<BigRational> = (1..m)
            .map(|i| BigRational::new(-row[i].clone(), m0.clone()))
            .collect();
        if coeffs
            .iter()
            .any(|c| c.denom().magnitude() > &MAX_DEN.into())
        {
            continue;
        }
        if coeffs
            .iter()
            .any(|c| c.numer().magnitude() > &num_bigint::BigUint::from(10u64.pow(12)))
        {
            continue;
        }
        let mut resid = x.clone();
        for (c, v) in coeffs.iter().zip(values) {
            resid -= ctx.rational(c) * v;
        }
        if abs_f64(&resid) <= tol {
            return Some(coeffs);
        }
    }
    None
}

/// Decide (heuristically) whether `x` lies in the weight-`weight` piece of
/// the `zeta(2)` ideal, and if so return the detected representation.
pub fn detect_zeta2_multiple(ctx: &Ctx, x: &Float, weight: u32) -> Result<Option<Detection>> {
    let gens = zeta2_span(ctx, weight)?;
    let values: Vec<Float> = gens.iter().map(|g| g.value.clone()).collect();
    let tol = 1e-12;
    Ok(
        find_rational_combination(ctx, x, &values, tol).map(|coeffs| {
            let mut resid = x.clone();
            for (c, v) in coeffs.iter().zip(&values) {
                resid -= ctx.rational(c) * v;
            }
            Detection {
                coeffs: gens
                    .iter()
                    .zip(coeffs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(g, c)| (g.label.clone(), c))
                    .collect(),
                residual: abs_f64(&resid),
            }
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::Index;
    use crate::sside::symmetric_hat;
    use crate::words::Product;

    fn ctx() -> Ctx {
        Ctx::new(40).unwrap()
    }

    #[test]
    fn span_sizes() {
        let c = ctx();
        assert_eq!(zeta2_span(&c, 2).unwrap().len(), 1); // z(2)
        assert_eq!(zeta2_span(&c, 5).unwrap().len(), 1); // z(2)z(3)
        assert_eq!(zeta2_span(&c, 7).unwrap().len(), 2); // z(2)z(5), z(2)^2 z(3)
        assert_eq!(zeta2_span(&c, 8).unwrap().len(), 2); // z(2)z(3)^2, z(2)^4
        assert_eq!(zeta2_span(&c, 9).unwrap().len(), 3);
    }

    #[test]
    fn recovers_seeded_rational_combinations() {
        let c = ctx();
        let gens = zeta2_span(&c, 9).unwrap();
        let values: Vec<Float> = gens.iter().map(|g| g.value.clone()).collect();
        // twenty pseudo-random small-rational combinations
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..20 {
            let want: Vec<BigRational> = (0..values.len())
                .map(|_| {
                    let num = (next() % 41) as i64 - 20;
                    let den = (next() % 24 + 1) as i64;
                    BigRational::new(BigInt::from(num), BigInt::from(den))
                })
                .collect();
            let mut x = Float::with_val(c.prec(), 0);
            for (w, v) in want.iter().zip(&values) {
                x += c.rational(w) * v;
            }
            let got = find_rational_combination(&c, &x, &values, 1e-12)
                .unwrap_or_else(|| panic!("trial {trial}: no relation found"));
            assert_eq!(got, want, "trial {trial}");
        }
    }

    #[test]
    fn plain_odd_zeta_is_not_detected() {
        let c = ctx();
        let x = c.zeta(7).unwrap();
        assert!(detect_zeta2_multiple(&c, &x, 7).unwrap().is_none());
    }

    #[test]
    fn zero_is_trivially_member() {
        let c = ctx();
        let x = Float::with_val(c.prec(), 0);
        let d = detect_zeta2_multiple(&c, &x, 5).unwrap().unwrap();
        assert!(d.coeffs.is_empty());
    }

    #[test]
    fn depth2_real_side_discrepancy_is_zeta2_multiple() {
        // t-coefficient of the symmetric expansion of (1,3) minus the
        // announced -9/2 zeta(5): should be a zeta(2)-multiple
        let c = ctx();
        let hat = symmetric_hat(&c, &Index::from([1, 3]), Product::Shuffle, 2).unwrap();
        let x =
            hat[1].clone() + c.rational(&BigRational::new(9.into(), 2.into())) * c.zeta(5).unwrap();
        let d = detect_zeta2_multiple(&c, &x, 5).unwrap();
        assert!(d.is_some(), "discrepancy not detected as zeta(2)-multiple");
    }
}
