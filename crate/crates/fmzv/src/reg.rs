//! Regularization: `h1 = h0[e1]` under the harmonic or shuffle product.
//!
//! Every element of `h1` is a unique polynomial in `e1` (product-power sense)
//! with coefficients in `h0`; `reg` extracts the constant term. The
//! decomposition is computed by peeling trailing `e1`s: for a word
//! `w = u e1` with trailing `e1`-run `c`, the product `u . e1` contains `w`
//! with coefficient exactly `c`, and every other term has a strictly shorter
//! trailing run, so
//!
//! ```text
//! w = ( u . e1  -  (terms of shorter run) ) / c
//! ```
//!
//! recurses on (weight, run). No extra variable `T` is introduced: the
//! polynomial lives in the algebra itself, `reg` is evaluation at `e1 = 0`.

use crate::error::{Error, Result};
use crate::words::{product, word_product, Letter, LinComb, Product, Word};
use dashmap::DashMap;
use num_rational::BigRational;
use num_traits::One;
use once_cell::sync::Lazy;

/// Polynomial in `e1` with `h0` coefficients: `sum_i coeff[i] . e1^{.i}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyInE1 {
    coeffs: Vec<LinComb>,
}

impl PolyInE1 {
    pub fn zero() -> Self {
        PolyInE1::default()
    }

    pub fn constant(x: LinComb) -> Self {
        PolyInE1 { coeffs: vec![x] }
    }

    /// Degree in `e1`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn coeff(&self, i: usize) -> LinComb {
        self.coeffs.get(i).cloned().unwrap_or_else(LinComb::zero)
    }

    /// The constant term, i.e. the regularized part.
    pub fn constant_term(&self) -> LinComb {
        self.coeff(0)
    }

    pub fn add_scaled(&mut self, other: &PolyInE1, c: &BigRational) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), LinComb::zero());
        }
        for (i, x) in other.coeffs.iter().enumerate() {
            self.coeffs[i].add_scaled(x, c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> PolyInE1 {
        let mut out = PolyInE1::zero();
        out.add_scaled(self, c);
        out
    }

    /// Multiply by one power of `e1` (shift all coefficients up).
    fn shift_up(&self) -> PolyInE1 {
        if self.coeffs.is_empty() {
            return PolyInE1::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(LinComb::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        PolyInE1 { coeffs }
    }
}

static DECOMP_CACHE: Lazy<DashMap<(Word, Product), PolyInE1>> = Lazy::new(DashMap::new);

fn check_product(prod: Product) -> Result<()> {
    if prod == Product::Muneta {
        return Err(Error::domain(
            "regularization is defined for the harmonic and shuffle products only",
        ));
    }
    Ok(())
}

/// Write `x` (in `h1`) as a polynomial in `e1` with `h0` coefficients.
pub fn decompose(x: &LinComb, prod: Product) -> Result<PolyInE1> {
    check_product(prod)?;
    let mut out = PolyInE1::zero();
    for (w, c) in x.terms() {
        if !w.in_h1() {
            return Err(Error::Algebra {
                word: w.to_string(),
                algebra: "h1",
            });
        }
        out.add_scaled(&decompose_word(w, prod), c);
    }
    Ok(out)
}

fn decompose_word(w: &Word, prod: Product) -> PolyInE1 {
    if w.in_h0() {
        return PolyInE1::constant(LinComb::from_word(w.clone()));
    }
    let key = (w.clone(), prod);
    if let Some(hit) = DECOMP_CACHE.get(&key) {
        return hit.clone();
    }
    // w = u e1, with coefficient run = trailing_e1_run(w) in u . e1
    let run = w.trailing_e1_run();
    debug_assert!(run >= 1);
    let u = Word::from_letters(w.letters()[..w.weight() - 1].to_vec());
    let e1 = Word::from_letters(vec![Letter::E1]);
    let q = word_product(prod, &u, &e1).expect("u is in h1 whenever w is");
    let mut rest = q;
    rest.add_term(w.clone(), -BigRational::from_integer(run.into()));

    let mut acc = decompose_word(&u, prod).shift_up();
    for (v, c) in rest.terms() {
        debug_assert!(v.trailing_e1_run() < run);
        acc.add_scaled(&decompose_word(v, prod), &-c.clone());
    }
    let result = acc.scale(&BigRational::new(1.into(), run.into()));
    DECOMP_CACHE.insert(key, result.clone());
    result
}

/// The regularized element: constant term of the `e1`-polynomial.
pub fn reg(x: &LinComb, prod: Product) -> Result<LinComb> {
    Ok(decompose(x, prod)?.constant_term())
}

pub fn reg_word(w: &Word, prod: Product) -> Result<LinComb> {
    reg(&LinComb::from_word(w.clone()), prod)
}

/// `e1^{.m}` — the m-th product power of `e1`.
pub fn e1_power(prod: Product, m: usize) -> Result<LinComb> {
    check_product(prod)?;
    let e1 = LinComb::from_word(Word::from_letters(vec![Letter::E1]));
    let mut acc = LinComb::one();
    for _ in 0..m {
        acc = product(prod, &acc, &e1)?;
    }
    Ok(acc)
}

/// Evaluate the polynomial back in the algebra: `sum_i coeff[i] . e1^{.i}`.
/// Inverse of [`decompose`] (up to the product in question).
pub fn reconstruct(p: &PolyInE1, prod: Product) -> Result<LinComb> {
    check_product(prod)?;
    let mut acc = LinComb::zero();
    for i in 0..p.coeffs.len() {
        let c = p.coeff(i);
        if c.is_zero() {
            continue;
        }
        acc = acc + product(prod, &c, &e1_power(prod, i)?)?;
    }
    Ok(acc)
}

/// Closed form for the shuffle regularization of `w e1^m` with `w` in `h0`:
/// for nonempty `w = w' e0`,
///
/// ```text
/// reg_sh(w e1^m) = (-1)^m (w' sh e1^m) e0
/// ```
///
/// and for empty `w` the value is 1 if `m = 0`, else 0.
pub fn reg_sh_closed_form(w: &Word, m: usize) -> Result<LinComb> {
    if !w.in_h0() {
        return Err(Error::Algebra {
            word: w.to_string(),
            algebra: "h0",
        });
    }
    if w.is_empty() {
        return Ok(if m == 0 {
            LinComb::one()
        } else {
            LinComb::zero()
        });
    }
    let w_prime = Word::from_letters(w.letters()[..w.weight() - 1].to_vec());
    let e1m = Word::from_letters(vec![Letter::E1; m]);
    let sh = word_product(Product::Shuffle, &w_prime, &e1m)?;
    let sign = if m.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    Ok(sh.map_words(|v| v.push(Letter::E0)).scale(&sign))
}
