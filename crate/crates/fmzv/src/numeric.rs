//! Floating-point evaluation of multiple zeta values.
//!
//! Values come from splitting the iterated-integral representation at 1/2:
//! every admissible word factors into pairs of polylogarithm-type series at
//! 1/2, each converging geometrically, so forty digits cost a few hundred
//! terms regardless of weight or depth.

use std::collections::HashMap;
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::index::Index;
use crate::reg;
use crate::words::{Letter, LinComb, Product, Word};

/// Working precision and value cache for one evaluation run.
pub struct Ctx {
    digits: u32,
    prec: u32,
    nterms: usize,
    cache: Mutex<HashMap<Vec<u32>, Float>>,
}

impl Ctx {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 20 {
            return Err(Error::domain("need at least 20 digits"));
        }
        // bits for the target digits plus guard; series length chosen so the
        // geometric tail 2^-N sits far below the last kept digit
        let prec = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 64;
        let nterms = (5 * digits as usize + 60).max(260);
        Ok(Ctx {
            digits,
            prec,
            nterms,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec, Constant::Pi)
    }

    pub fn rational(&self, q: &BigRational) -> Float {
        let num = Float::with_val(
            self.prec,
            Float::parse(q.numer().to_string()).expect("integer"),
        );
        let den = Float::with_val(
            self.prec,
            Float::parse(q.denom().to_string()).expect("integer"),
        );
        num / den
    }

    /// `zeta(k)` for `k >= 2`, plus the conventional `zeta(0) = -1/2`.
    pub fn zeta(&self, k: u32) -> Result<Float> {
        match k {
            0 => Ok(Float::with_val(self.prec, -0.5)),
            1 => Err(Error::domain("zeta(1) diverges; regularize instead")),
            _ => self.mzv(&Index::repeated(k, 1)),
        }
    }

    /// Multiple zeta value of an admissible index (last entry at least 2).
    pub fn mzv(&self, k: &Index) -> Result<Float> {
        if k.is_empty() {
            return Ok(Float::with_val(self.prec, 1));
        }
        if !k.is_admissible() {
            return Err(Error::domain(format!("{k} is not admissible")));
        }
        if let Some(v) = self.cache.lock().unwrap().get(k.parts()) {
            return Ok(v.clone());
        }
        let v = self.holder(&Word::from_index(k));
        self.cache
            .lock()
            .unwrap()
            .insert(k.parts().to_vec(), v.clone());
        Ok(v)
    }

    /// Star value over contractions of the index.
    pub fn mzv_star(&self, k: &Index) -> Result<Float> {
        if !k.is_empty() && !k.is_admissible() {
            return Err(Error::domain(format!("{k} is not star-admissible")));
        }
        let mut acc = Float::with_val(self.prec, 0);
        for c in k.contractions() {
            acc += self.mzv(&c)?;
        }
        Ok(acc)
    }

    /// Evaluate a combination of admissible words.
    pub fn eval(&self, x: &LinComb) -> Result<Float> {
        let mut acc = Float::with_val(self.prec, 0);
        for (w, c) in x.terms() {
            let idx = w
                .to_index()
                .ok_or_else(|| Error::domain(format!("word {w} is not an index word")))?;
            acc += self.rational(c) * self.mzv(&idx)?;
        }
        Ok(acc)
    }

    /// Regularized evaluation: project onto admissible words first (constant
    /// term of the chosen regularization), then evaluate.
    pub fn eval_reg(&self, x: &LinComb, prod: Product) -> Result<Float> {
        self.eval(&reg::reg(x, prod)?)
    }

    /// Regularized value of a single, possibly non-admissible index.
    pub fn mzv_reg(&self, k: &Index, prod: Product) -> Result<Float> {
        if k.is_empty() {
            return Ok(Float::with_val(self.prec, 1));
        }
        self.eval_reg(&LinComb::from_index(k), prod)
    }

    /// Iterated integral over [0,1] via path splitting at 1/2:
    /// `I(a_1..a_n) = sum_j I_{1/2}(a_1..a_j) I_{1/2}(rev+swap(a_{j+1}..a_n))`.
    fn holder(&self, w: &Word) -> Float {
        let fwd: Vec<bool> = w.letters().iter().map(|&l| l == Letter::E1).collect();
        let bwd: Vec<bool> = fwd.iter().rev().map(|&b| !b).collect();
        let left = self.prefix_values(&fwd);
        let right = self.prefix_values(&bwd);
        let n = fwd.len();
        let mut acc = Float::with_val(self.prec, 0);
        for (j, l) in left.iter().enumerate() {
            acc += l.clone() * &right[n - j];
        }
        acc
    }

    /// Values at 1/2 of the iterated integrals of all prefixes of the word.
    ///
    /// Coefficient recursion for `F_w(z) = sum c_m z^m`: appending the `dt/t`
    /// letter divides each coefficient by its degree, appending `dt/(1-t)`
    /// integrates the running prefix sum.  All coefficients stay in [0,1], so
    /// truncation at `nterms` leaves a clean `2^-nterms` tail.
    fn prefix_values(&self, letters: &[bool]) -> Vec<Float> {
        let nt = self.nterms;
        let mut coeff = vec![Float::with_val(self.prec, 0); nt + 1];
        coeff[0] = Float::with_val(self.prec, 1);
        let mut out = Vec::with_capacity(letters.len() + 1);
        out.push(Float::with_val(self.prec, 1));
        for &is_e1 in letters {
            if is_e1 {
                let mut run = Float::with_val(self.prec, 0);
                let mut next = vec![Float::with_val(self.prec, 0); nt + 1];
                for m in 0..nt {
                    run += &coeff[m];
                    next[m + 1] = run.clone() / (m as u32 + 1);
                }
                coeff = next;
            } else {
                for (m, c) in coeff.iter_mut().enumerate().skip(1) {
                    *c /= m as u32;
                }
                coeff[0] = Float::with_val(self.prec, 0);
            }
            let mut val = Float::with_val(self.prec, 0);
            for c in coeff.iter().rev() {
                val = val / 2 + c;
            }
            out.push(val);
        }
        out
    }
}

/// Absolute value as f64, for tolerance reporting.
pub fn abs_f64(x: &Float) -> f64 {
    x.to_f64().abs()
}

/// True when `x` vanishes to within `tol`.
pub fn approx_zero(x: &Float, tol: f64) -> bool {
    abs_f64(x) <= tol
}

pub fn rational_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn ctx() -> Ctx {
        Ctx::new(40).unwrap()
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        approx_zero(&(a.clone() - b), tol)
    }

    #[test]
    fn zeta_even_from_pi() {
        let c = ctx();
        let pi = c.pi();
        let z2 = c.zeta(2).unwrap();
        assert!(close(&z2, &(pi.clone().square() / 6), 1e-35));
        let z4 = c.zeta(4).unwrap();
        assert!(close(&z4, &(pi.clone().pow(4) / 90), 1e-35));
        let z6 = c.zeta(6).unwrap();
        assert!(close(&z6, &(pi.pow(6) / 945), 1e-34));
    }

    #[test]
    fn zeta3_reference_digits() {
        let c = ctx();
        let z3 = c.zeta(3).unwrap();
        let want = Float::with_val(
            c.prec(),
            Float::parse("1.202056903159594285399738161511449990765").unwrap(),
        );
        assert!(close(&z3, &want, 1e-30));
    }

    #[test]
    fn euler_reflection_depth2() {
        let c = ctx();
        // sum formula at depth 2: zeta(1,2) = zeta(3)
        let a = c.mzv(&Index::from([1, 2])).unwrap();
        let b = c.zeta(3).unwrap();
        assert!(close(&a, &b, 1e-35));
        // duality: zeta(1,3) = pi^4 / 360
        let d = c.mzv(&Index::from([1, 3])).unwrap();
        assert!(close(&d, &(c.pi().pow(4) / 360), 1e-35));
    }

    #[test]
    fn repeated_twos_closed_form() {
        let c = ctx();
        let pi = c.pi();
        let mut fact = Float::with_val(c.prec(), 1);
        for m in 1u32..=4 {
            // (2m+1)!
            fact *= 2 * m;
            fact *= 2 * m + 1;
            let lhs = c.mzv(&Index::repeated(2, m as usize)).unwrap();
            let rhs = pi.clone().pow(2 * m) / &fact;
            assert!(close(&lhs, &rhs, 1e-34), "m={m}");
        }
    }

    #[test]
    fn star_twos_closed_form() {
        let c = ctx();
        for m in 1u32..=4 {
            let lhs = c.mzv_star(&Index::repeated(2, m as usize)).unwrap();
            let scale = Float::with_val(c.prec(), 2)
                * (Float::with_val(c.prec(), 1)
                    - Float::with_val(c.prec(), 2).pow(-(2f64 * f64::from(m) - 1.0) as i32));
            let rhs = scale * c.zeta(2 * m).unwrap();
            assert!(close(&lhs, &rhs, 1e-34), "m={m}");
        }
    }

    #[test]
    fn stuffle_product_numeric() {
        let c = ctx();
        let lhs = c.zeta(2).unwrap() * c.zeta(3).unwrap();
        let rhs = c.mzv(&Index::from([2, 3])).unwrap()
            + c.mzv(&Index::from([3, 2])).unwrap()
            + c.zeta(5).unwrap();
        assert!(close(&lhs, &rhs, 1e-34));
    }

    #[test]
    fn word_product_matches_numeric_product() {
        let c = ctx();
        for prod in [Product::Harmonic, Product::Shuffle] {
            let x = crate::words::index_product(prod, &Index::from([2]), &Index::from([2]));
            let lhs = c.eval(&x).unwrap();
            let z2 = c.zeta(2).unwrap();
            assert!(close(&lhs, &z2.square(), 1e-34), "{prod:?}");
        }
    }

    #[test]
    fn regularized_values() {
        let c = ctx();
        // shuffle: zeta_sh(2,1) = -2 zeta(1,2)
        let a = c.mzv_reg(&Index::from([2, 1]), Product::Shuffle).unwrap();
        let b = c.mzv(&Index::from([1, 2])).unwrap();
        assert!(close(&a, &(-2 * b.clone()), 1e-34));
        // harmonic: zeta_st(2,1) = -zeta(1,2) - zeta(3)
        let h = c.mzv_reg(&Index::from([2, 1]), Product::Harmonic).unwrap();
        let want = -(b + c.zeta(3).unwrap());
        assert!(close(&h, &want, 1e-34));
        // weight-one regularizations vanish
        for prod in [Product::Harmonic, Product::Shuffle] {
            let one = c.mzv_reg(&Index::from([1]), prod).unwrap();
            assert!(approx_zero(&one, 1e-38));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Ctx::new(10).is_err());
        let c = ctx();
        assert!(c.zeta(1).is_err());
        assert!(c.mzv(&Index::from([2, 1])).is_err());
    }
}
