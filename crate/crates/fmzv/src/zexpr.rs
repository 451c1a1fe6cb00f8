//! Formal polynomials in the symbols `z(k)` and `x`.
//!
//! Theorem right-hand sides are rational combinations of monomials
//! `z(k_1)...z(k_s) * x^t`.  A [`ZExpr`] keeps those monomials with exact
//! rational coefficients so they can be checked symbolically (coefficient by
//! coefficient), evaluated to residues mod `p^n`, or fed to the numeric layer
//! where `z(k)` becomes the real zeta value.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bernoulli::zfrak_x;
use crate::error::{Error, Result};
use crate::modular::{AnValue, Modulus, Window};

/// Monomial key: sorted multiset of `z`-arguments plus the power of `x`.
pub type Monomial = (Vec<u32>, u32);

/// A finite rational linear combination of monomials `z(k_1)...z(k_s) x^t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZExpr {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ZExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `c`.
    pub fn constant(c: BigRational) -> Self {
        let mut e = Self::zero();
        e.add_term(&[], 0, c);
        e
    }

    /// Single monomial `c * z(zargs[0])...z(zargs[s-1]) * x^xpow`.
    pub fn monomial(zargs: &[u32], xpow: u32, c: BigRational) -> Self {
        let mut e = Self::zero();
        e.add_term(zargs, xpow, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, zargs: &[u32], xpow: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        assert!(zargs.iter().all(|&k| k >= 1), "z-argument must be positive");
        let mut key = zargs.to_vec();
        key.sort_unstable();
        let key = (key, xpow);
        let entry = self
            .terms
            .entry(key.clone())
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &ZExpr, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (key, coeff) in &other.terms {
            let entry = self
                .terms
                .entry(key.clone())
                .or_insert_with(BigRational::zero);
            *entry += coeff * c;
            if entry.is_zero() {
                self.terms.remove(key);
            }
        }
    }

    pub fn scale(&mut self, c: &BigRational) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for coeff in self.terms.values_mut() {
            *coeff *= c;
        }
    }

    /// Product of two expressions; multisets of `z`-arguments merge and the
    /// `x`-powers add.
    pub fn mul(&self, other: &ZExpr) -> ZExpr {
        let mut out = ZExpr::zero();
        for ((za, xa), ca) in &self.terms {
            for ((zb, xb), cb) in &other.terms {
                let mut z = za.clone();
                z.extend_from_slice(zb);
                out.add_term(&z, xa + xb, ca * cb);
            }
        }
        out
    }

    /// Truncate away every monomial with `x`-power `>= n` (they vanish in the
    /// depth-`n` quotient).
    pub fn truncated(&self, n: u32) -> ZExpr {
        let mut out = ZExpr::zero();
        for ((z, x), c) in &self.terms {
            if *x < n {
                out.add_term(z, *x, c.clone());
            }
        }
        out
    }

    /// Residue of the expression at one modulus `p^n`.
    ///
    /// Each monomial `z(k_1)...z(k_s) x^t` is mapped as follows, `x`
    /// becoming the class of `p`:
    /// * `t >= n`: the monomial vanishes;
    /// * `s = 0`: the value is `p^t`;
    /// * `t = 0`: every factor goes through the direct Bernoulli quotient
    ///   (only available for `n <= 2`);
    /// * `t >= s >= 1`: the `x`-powers are distributed as shifts
    ///   `(t-s+1, 1, ..., 1)` over the sorted arguments, the largest shift on
    ///   the smallest argument, and each factor is evaluated by `zfrak_x`;
    /// * `0 < t < s` is not representable this way and reports a capability
    ///   error.
    ///
    /// `Ok(None)` means the prime must be skipped (a coefficient denominator
    /// or a Bernoulli denominator hit `p`, or an index fell out of range).
    pub fn eval_at(&self, m: &Modulus) -> Result<Option<u64>> {
        let mut acc: u64 = 0;
        for ((zargs, xpow), coeff) in &self.terms {
            let t = *xpow;
            if t >= m.n {
                continue;
            }
            let c = match m.reduce_rational(coeff) {
                Some(c) => c,
                None => return Ok(None),
            };
            let s = zargs.len() as u32;
            let mut term = c;
            if s == 0 {
                term = m.mul(term, m.pow(m.p % m.pn, u64::from(t)));
            } else if t == 0 {
                for &k in zargs {
                    match zfrak_x(m, k, 0)? {
                        Some(z) => term = m.mul(term, z),
                        None => return Ok(None),
                    }
                }
            } else if t >= s {
                for (i, &k) in zargs.iter().enumerate() {
                    let shift = if i == 0 { t - s + 1 } else { 1 };
                    match zfrak_x(m, k, shift)? {
                        Some(z) => term = m.mul(term, z),
                        None => return Ok(None),
                    }
                }
            } else {
                return Err(Error::capability(format!(
                    "cannot absorb {} x-power(s) into {} z-factor(s) at level n={}",
                    t, s, m.n
                )));
            }
            acc = m.add(acc, term);
        }
        Ok(Some(acc))
    }

    /// Evaluate across a window of primes.
    pub fn eval_window(&self, w: &Window) -> Result<AnValue> {
        AnValue::try_compute(w, |m| self.eval_at(m))
    }
}

impl std::ops::Add for ZExpr {
    type Output = ZExpr;
    fn add(mut self, rhs: ZExpr) -> ZExpr {
        self.add_scaled(&rhs, &BigRational::one());
        self
    }
}

impl std::ops::Sub for ZExpr {
    type Output = ZExpr;
    fn sub(mut self, rhs: ZExpr) -> ZExpr {
        self.add_scaled(&rhs, &-BigRational::one());
        self
    }
}

impl std::ops::Neg for ZExpr {
    type Output = ZExpr;
    fn neg(mut self) -> ZExpr {
        self.scale(&-BigRational::one());
        self
    }
}

impl fmt::Display for ZExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|((zargs, xpow), _)| (*xpow, zargs.clone()));
        let mut first = true;
        for ((zargs, xpow), coeff) in ordered {
            let mag = coeff.abs();
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (zargs.is_empty() && *xpow == 0) {
                factors.push(mag.to_string());
            }
            for &k in zargs {
                factors.push(format!("z({})", k));
            }
            match xpow {
                0 => {}
                1 => factors.push("x".to_string()),
                _ => factors.push(format!("x^{}", xpow)),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::{zfrak_a, zfrak_direct};
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn display_forms() {
        let e = ZExpr::monomial(&[5], 1, rat(-9, 2));
        assert_eq!(e.to_string(), "-9/2*z(5)*x");
        let mut e = ZExpr::monomial(&[3, 5], 2, rat(1, 1));
        e.add_term(&[4], 0, rat(2, 1));
        assert_eq!(e.to_string(), "2*z(4) + z(3)*z(5)*x^2");
        assert_eq!(ZExpr::zero().to_string(), "0");
        assert_eq!(ZExpr::constant(rat(1, 1)).to_string(), "1");
    }

    #[test]
    fn arithmetic_cancels() {
        let a = ZExpr::monomial(&[5], 1, rat(3, 2));
        let b = ZExpr::monomial(&[5], 1, rat(-3, 2));
        assert!((a.clone() + b).is_zero());
        let prod = a.mul(&ZExpr::monomial(&[3], 1, rat(2, 1)));
        assert_eq!(prod, ZExpr::monomial(&[3, 5], 2, rat(3, 1)));
    }

    #[test]
    fn truncation_drops_high_x() {
        let mut e = ZExpr::monomial(&[5], 1, rat(1, 1));
        e.add_term(&[6], 2, rat(7, 1));
        let t = e.truncated(2);
        assert_eq!(t, ZExpr::monomial(&[5], 1, rat(1, 1)));
    }

    #[test]
    fn eval_single_z_times_x_matches_zfrak() {
        // -9/2 z(5) x at p = 11, n = 2 agrees with a hand-combined residue.
        let m = Modulus::new(11, 2).unwrap();
        let e = ZExpr::monomial(&[5], 1, rat(-9, 2));
        let got = e.eval_at(&m).unwrap().unwrap();
        let z = zfrak_a(&m, 4, 1).unwrap().unwrap();
        let want = m.mul(m.reduce_rational(&rat(-9, 2)).unwrap(), z.residue);
        assert_eq!(got, want);
    }

    #[test]
    fn eval_direct_route_at_n1() {
        // z(3) at n = 1 goes through the direct Bernoulli quotient.
        let m = Modulus::new(13, 1).unwrap();
        let e = ZExpr::monomial(&[3], 0, rat(4, 1));
        let got = e.eval_at(&m).unwrap().unwrap();
        let z = zfrak_direct(&m, 3).unwrap().unwrap();
        assert_eq!(got, m.mul(4 % m.pn, z.residue));
    }

    #[test]
    fn eval_x_powers_and_vanishing() {
        let m = Modulus::new(7, 2).unwrap();
        // x alone is the class of p.
        let e = ZExpr::monomial(&[], 1, rat(3, 1));
        assert_eq!(e.eval_at(&m).unwrap(), Some(21));
        // x^2 vanishes at n = 2.
        let e = ZExpr::monomial(&[5], 2, rat(1, 1));
        assert_eq!(e.eval_at(&m).unwrap(), Some(0));
    }

    #[test]
    fn eval_skips_on_denominator_or_range() {
        let m = Modulus::new(7, 2).unwrap();
        // coefficient with denominator 7
        let e = ZExpr::monomial(&[5], 1, rat(1, 7));
        assert_eq!(e.eval_at(&m).unwrap(), None);
        // z(k) x with p <= k: Bernoulli index out of range
        let e = ZExpr::monomial(&[7], 1, rat(1, 1));
        assert_eq!(e.eval_at(&m).unwrap(), None);
    }

    #[test]
    fn eval_product_distributes_shifts() {
        // z(3) z(5) x^2 at n = 3: shifts (1,1); largest shift rides the
        // smallest argument, here both are 1.
        let m = Modulus::new(23, 3).unwrap();
        let e = ZExpr::monomial(&[3, 5], 2, rat(1, 1));
        let got = e.eval_at(&m).unwrap().unwrap();
        let z3 = zfrak_x(&m, 3, 1).unwrap().unwrap();
        let z5 = zfrak_x(&m, 5, 1).unwrap().unwrap();
        assert_eq!(got, m.mul(z3, z5));
        // z(4) x^2 at n = 3: single factor absorbs both powers.
        let e = ZExpr::monomial(&[4], 2, rat(1, 1));
        let got = e.eval_at(&m).unwrap().unwrap();
        assert_eq!(got, zfrak_x(&m, 4, 2).unwrap().unwrap());
    }

    #[test]
    fn eval_rejects_unabsorbable_x() {
        let m = Modulus::new(23, 3).unwrap();
        let e = ZExpr::monomial(&[3, 5], 1, rat(1, 1));
        assert!(e.eval_at(&m).is_err());
    }

    #[test]
    fn window_evaluation_collects() {
        let w = Window::new(2, 5, 30).unwrap();
        let e = ZExpr::monomial(&[5], 1, rat(-9, 2));
        let v = e.eval_window(&w).unwrap();
        assert_eq!(v.entries().count(), w.primes.len());
    }
}
