//! The word algebra on two letters.
//!
//! Words over `{e0, e1}` span the Hoffman algebra; the subspace `h1` is
//! spanned by words that do not end in a block of `e0`s only, i.e. empty or
//! starting with `e1`, and `h0` additionally requires ending with `e0`.
//! Under `e_k = e1 e0^{k-1}` the words of `h1` are exactly the indices.
//!
//! Three commutative products are implemented:
//! * [`Product::Harmonic`] — the quasi-shuffle (stuffle) product on `h1`:
//!   `e_k u * e_l v = e_k(u * e_l v) + e_l(e_k u * v) + e_{k+l}(u * v)`;
//! * [`Product::Shuffle`] — the letter-by-letter interleaving on all words;
//! * [`Product::Muneta`] — interleaving of whole blocks `e_k`: the harmonic
//!   recursion without the stuffing term.
//!
//! All three are memoized at the word level, so repeated sweeps are cheap.

use crate::error::{Error, Result};
use crate::index::Index;
use dashmap::DashMap;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    E0,
    E1,
}

/// A word in the letters `e0`, `e1`. Ordering is by length, then
/// lexicographic with `e0 < e1`; that makes rendering deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// `e_{k_1} ... e_{k_r}` with `e_k = e1 e0^{k-1}`.
    pub fn from_index(idx: &Index) -> Self {
        let mut letters = Vec::with_capacity(idx.weight() as usize);
        for &k in idx.parts() {
            letters.push(Letter::E1);
            letters.extend(std::iter::repeat_n(Letter::E0, k as usize - 1));
        }
        Word(letters)
    }

    /// Inverse of [`Word::from_index`]; `None` when the word is not in `h1`.
    pub fn to_index(&self) -> Option<Index> {
        if self.0.is_empty() {
            return Some(Index::empty());
        }
        if self.0[0] != Letter::E1 {
            return None;
        }
        let mut parts = Vec::new();
        let mut current = 0u32;
        for &l in &self.0 {
            match l {
                Letter::E1 => {
                    if current > 0 {
                        parts.push(current);
                    }
                    current = 1;
                }
                Letter::E0 => current += 1,
            }
        }
        parts.push(current);
        Some(Index::new(parts).expect("parts are positive by construction"))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Weight: the number of letters.
    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Empty, or starting with `e1`.
    pub fn in_h1(&self) -> bool {
        self.0.first().is_none_or(|&l| l == Letter::E1)
    }

    /// Empty, or starting with `e1` and ending with `e0` (admissible).
    pub fn in_h0(&self) -> bool {
        self.in_h1() && self.0.last().is_none_or(|&l| l == Letter::E0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    fn prepend(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// Duality on `h0`: reverse the word and swap `e0 <-> e1`. An involution
    /// fixing weight; errors off `h0`.
    pub fn dual(&self) -> Result<Word> {
        if !self.in_h0() {
            return Err(Error::Algebra {
                word: self.to_string(),
                algebra: "h0",
            });
        }
        Ok(Word(
            self.0
                .iter()
                .rev()
                .map(|&l| match l {
                    Letter::E0 => Letter::E1,
                    Letter::E1 => Letter::E0,
                })
                .collect(),
        ))
    }

    /// Leading block: `e_k` prefix and the remaining word. `None` if empty.
    /// Only meaningful on `h1`.
    fn split_first_block(&self) -> Option<(u32, Word)> {
        if self.0.is_empty() {
            return None;
        }
        debug_assert_eq!(self.0[0], Letter::E1);
        let mut k = 1u32;
        let mut i = 1;
        while i < self.0.len() && self.0[i] == Letter::E0 {
            k += 1;
            i += 1;
        }
        Some((k, Word(self.0[i..].to_vec())))
    }

    /// Number of trailing `e1` letters.
    pub fn trailing_e1_run(&self) -> usize {
        self.0
            .iter()
            .rev()
            .take_while(|&&l| l == Letter::E1)
            .count()
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.0 {
            match l {
                Letter::E0 => write!(f, "e0")?,
                Letter::E1 => write!(f, "e1")?,
            }
        }
        Ok(())
    }
}

/// Finite formal sum of words with rational coefficients, kept in canonical
/// order with zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinComb {
    terms: BTreeMap<Word, BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Product {
    Harmonic,
    Shuffle,
    Muneta,
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Product::Harmonic => write!(f, "harmonic"),
            Product::Shuffle => write!(f, "shuffle"),
            Product::Muneta => write!(f, "muneta"),
        }
    }
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    /// The empty word with coefficient 1.
    pub fn one() -> Self {
        LinComb::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, BigRational::one());
        LinComb { terms }
    }

    pub fn from_index(idx: &Index) -> Self {
        LinComb::from_word(Word::from_index(idx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(self, c);
        out
    }

    /// Apply a word map to every term (e.g. prepend a letter).
    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> LinComb {
        let mut out = LinComb::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    /// Sum of absolute values of coefficients (used by grading checks).
    pub fn mass(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// All terms share this weight; `None` for 0 or mixed weights.
    pub fn homogeneous_weight(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.weight());
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn dual(&self) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (w, c) in &self.terms {
            out.add_term(w.dual()?, c.clone());
        }
        Ok(out)
    }

    /// Render with indices, e.g. `e(2,3)+e(3,2)+e(5)`; requires every word
    /// in `h1`. Terms are ordered by index (lexicographic on the parts);
    /// coefficients print as `c*e(...)`, the empty word as `1`.
    pub fn render_indices(&self) -> Result<String> {
        if self.terms.is_empty() {
            return Ok("0".into());
        }
        let mut items = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            let idx = w.to_index().ok_or_else(|| Error::Algebra {
                word: w.to_string(),
                algebra: "h1",
            })?;
            items.push((idx, c));
        }
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = String::new();
        for (i, (idx, c)) in items.iter().enumerate() {
            let body = if idx.is_empty() {
                "1".to_string()
            } else {
                format!("e{idx}")
            };
            push_term(&mut out, i == 0, c, &body, false);
        }
        Ok(out)
    }
}

fn push_term(out: &mut String, first: bool, c: &BigRational, body: &str, spaced: bool) {
    let neg = c.is_negative();
    let mag = c.abs();
    match (first, neg) {
        (true, false) => {}
        (true, true) => out.push('-'),
        (false, false) => out.push_str(if spaced { " + " } else { "+" }),
        (false, true) => out.push_str(if spaced { " - " } else { "-" }),
    }
    if mag.is_one() && body != "1" {
        out.push_str(body);
    } else if body == "1" {
        out.push_str(&mag.to_string());
    } else {
        out.push_str(&format!("{mag}*{body}"));
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            push_term(&mut out, i == 0, c, &w.to_string(), true);
        }
        write!(f, "{out}")
    }
}

impl Add for LinComb {
    type Output = LinComb;
    fn add(mut self, rhs: LinComb) -> LinComb {
        self.add_scaled(&rhs, &BigRational::one());
        self
    }
}

impl Sub for LinComb {
    type Output = LinComb;
    fn sub(mut self, rhs: LinComb) -> LinComb {
        self.add_scaled(&rhs, &-BigRational::one());
        self
    }
}

impl Neg for LinComb {
    type Output = LinComb;
    fn neg(self) -> LinComb {
        self.scale(&-BigRational::one())
    }
}

type PairCache = Lazy<DashMap<(Word, Word), LinComb>>;
static HARMONIC_CACHE: PairCache = Lazy::new(DashMap::new);
static SHUFFLE_CACHE: PairCache = Lazy::new(DashMap::new);
static MUNETA_CACHE: PairCache = Lazy::new(DashMap::new);

fn cache_for(prod: Product) -> &'static DashMap<(Word, Word), LinComb> {
    match prod {
        Product::Harmonic => &HARMONIC_CACHE,
        Product::Shuffle => &SHUFFLE_CACHE,
        Product::Muneta => &MUNETA_CACHE,
    }
}

/// Product of two single words. Harmonic and Muneta require `h1`.
pub fn word_product(prod: Product, u: &Word, v: &Word) -> Result<LinComb> {
    if matches!(prod, Product::Harmonic | Product::Muneta) && !(u.in_h1() && v.in_h1()) {
        let off = if u.in_h1() { v } else { u };
        return Err(Error::Algebra {
            word: off.to_string(),
            algebra: "h1",
        });
    }
    Ok(word_product_unchecked(prod, u, v))
}

fn word_product_unchecked(prod: Product, u: &Word, v: &Word) -> LinComb {
    if u.is_empty() {
        return LinComb::from_word(v.clone());
    }
    if v.is_empty() {
        return LinComb::from_word(u.clone());
    }
    // all three products are commutative; normalize the cache key
    let key = if u <= v {
        (u.clone(), v.clone())
    } else {
        (v.clone(), u.clone())
    };
    let cache = cache_for(prod);
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }
    let result = match prod {
        Product::Shuffle => {
            let (a, urest) = (u.letters()[0], Word(u.letters()[1..].to_vec()));
            let (b, vrest) = (v.letters()[0], Word(v.letters()[1..].to_vec()));
            let left = word_product_unchecked(prod, &urest, v).map_words(|w| w.prepend(a));
            let right = word_product_unchecked(prod, u, &vrest).map_words(|w| w.prepend(b));
            left + right
        }
        Product::Harmonic | Product::Muneta => {
            let (k, urest) = u.split_first_block().expect("nonempty");
            let (l, vrest) = v.split_first_block().expect("nonempty");
            let block = |m: u32| Word::from_index(&Index::new(vec![m]).unwrap());
            let mut acc = word_product_unchecked(prod, &urest, v).map_words(|w| block(k).concat(w));
            acc = acc + word_product_unchecked(prod, u, &vrest).map_words(|w| block(l).concat(w));
            if prod == Product::Harmonic {
                acc = acc
                    + word_product_unchecked(prod, &urest, &vrest)
                        .map_words(|w| block(k + l).concat(w));
            }
            acc
        }
    };
    cache.insert(key, result.clone());
    result
}

/// Bilinear extension of [`word_product`] to linear combinations.
pub fn product(prod: Product, x: &LinComb, y: &LinComb) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (u, a) in x.terms() {
        for (v, b) in y.terms() {
            out.add_scaled(&word_product(prod, u, v)?, &(a * b));
        }
    }
    Ok(out)
}

/// Product of two indices, `e_k . e_l`, as a linear combination of words.
pub fn index_product(prod: Product, k: &Index, l: &Index) -> LinComb {
    word_product(prod, &Word::from_index(k), &Word::from_index(l))
        .expect("index words are always in h1")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(parts: &[u32]) -> Index {
        Index::new(parts.to_vec()).unwrap()
    }

    fn lc(pairs: &[(&[u32], i64)]) -> LinComb {
        let mut out = LinComb::zero();
        for (parts, c) in pairs {
            out.add_term(
                Word::from_index(&idx(parts)),
                BigRational::from_integer((*c).into()),
            );
        }
        out
    }

    #[test]
    fn index_word_roundtrip() {
        for w in 1..=7u32 {
            for i in crate::index::indices_of_weight(w) {
                let word = Word::from_index(&i);
                assert_eq!(word.weight() as u32, w);
                assert!(word.in_h1());
                assert_eq!(word.to_index().unwrap(), i);
            }
        }
        assert_eq!(Word::from_index(&idx(&[2, 3])).to_string(), "e1e0e1e0e0");
        assert_eq!(Word::empty().to_index().unwrap(), Index::empty());
    }

    #[test]
    fn harmonic_small_cases() {
        let p = index_product(Product::Harmonic, &idx(&[2]), &idx(&[3]));
        assert_eq!(p, lc(&[(&[2, 3], 1), (&[3, 2], 1), (&[5], 1)]));
        assert_eq!(p.render_indices().unwrap(), "e(2,3)+e(3,2)+e(5)");

        let p = index_product(Product::Harmonic, &idx(&[1]), &idx(&[1]));
        assert_eq!(p, lc(&[(&[1, 1], 2), (&[2], 1)]));
        assert_eq!(p.render_indices().unwrap(), "2*e(1,1)+e(2)");
    }

    #[test]
    fn shuffle_small_cases() {
        let e1 = Word::from_index(&idx(&[1]));
        let p = word_product(Product::Shuffle, &e1, &e1).unwrap();
        assert_eq!(p, lc(&[(&[1, 1], 2)]));

        // zeta(2)^2 = 2 zeta(2,2) + 4 zeta(1,3) under the shuffle product
        let p = index_product(Product::Shuffle, &idx(&[2]), &idx(&[2]));
        assert_eq!(p, lc(&[(&[2, 2], 2), (&[1, 3], 4)]));
    }

    #[test]
    fn muneta_interleaves_blocks() {
        let p = index_product(Product::Muneta, &idx(&[1, 3]), &idx(&[2]));
        assert_eq!(p, lc(&[(&[1, 3, 2], 1), (&[1, 2, 3], 1), (&[2, 1, 3], 1)]));
    }

    #[test]
    fn shuffle_mass_is_binomial() {
        for (k, l) in [
            (&[1u32, 2][..], &[3u32][..]),
            (&[2, 2], &[1, 1]),
            (&[4], &[1, 1, 1]),
        ] {
            let (u, v) = (Word::from_index(&idx(k)), Word::from_index(&idx(l)));
            let p = word_product(Product::Shuffle, &u, &v).unwrap();
            let expect = crate::index::binom((u.weight() + v.weight()) as i64, u.weight() as i64);
            assert_eq!(p.mass(), expect);
        }
    }

    #[test]
    fn products_commute_and_associate() {
        let a = idx(&[1, 2]);
        let b = idx(&[2]);
        let c = idx(&[1, 1]);
        for prod in [Product::Harmonic, Product::Shuffle, Product::Muneta] {
            let ab = index_product(prod, &a, &b);
            let ba = index_product(prod, &b, &a);
            assert_eq!(ab, ba, "{prod} commutativity");
            let ab_c = product(prod, &ab, &LinComb::from_index(&c)).unwrap();
            let a_bc =
                product(prod, &LinComb::from_index(&a), &index_product(prod, &b, &c)).unwrap();
            assert_eq!(ab_c, a_bc, "{prod} associativity");
        }
    }

    #[test]
    fn grading_by_weight() {
        let a = idx(&[2, 1]);
        let b = idx(&[3]);
        for prod in [Product::Harmonic, Product::Shuffle, Product::Muneta] {
            let p = index_product(prod, &a, &b);
            assert_eq!(p.homogeneous_weight(), Some(6));
        }
    }

    #[test]
    fn harmonic_rejects_non_h1() {
        let bad = Word::from_letters(vec![Letter::E0, Letter::E1]);
        let e1 = Word::from_index(&idx(&[1]));
        assert!(word_product(Product::Harmonic, &bad, &e1).is_err());
        assert!(word_product(Product::Muneta, &bad, &e1).is_err());
        assert!(word_product(Product::Shuffle, &bad, &e1).is_ok());
    }

    #[test]
    fn duality_involution() {
        // e(3) = e1e0e0 <-> e1e1e0 = e(1,2)
        let w = Word::from_index(&idx(&[3]));
        assert_eq!(w.dual().unwrap(), Word::from_index(&idx(&[1, 2])));
        assert_eq!(w.dual().unwrap().dual().unwrap(), w);
        assert_eq!(
            Word::from_index(&idx(&[2])).dual().unwrap(),
            Word::from_index(&idx(&[2]))
        );
        assert!(Word::from_index(&idx(&[2, 1])).dual().is_err());
        for w in 2..=7u32 {
            for i in crate::index::indices_of_weight(w) {
                let word = Word::from_index(&i);
                if word.in_h0() {
                    let d = word.dual().unwrap();
                    assert_eq!(d.weight(), word.weight());
                    assert_eq!(d.dual().unwrap(), word);
                }
            }
        }
    }

    #[test]
    fn rendering() {
        let mut x = LinComb::zero();
        x.add_term(
            Word::from_index(&idx(&[2])),
            BigRational::new(3.into(), 2.into()),
        );
        x.add_term(Word::from_index(&idx(&[1, 2])), -BigRational::one());
        assert_eq!(x.to_string(), "3/2*e1e0 - e1e1e0");
        assert_eq!(x.render_indices().unwrap(), "-e(1,2)+3/2*e(2)");
        assert_eq!(LinComb::zero().to_string(), "0");
        assert_eq!(LinComb::one().render_indices().unwrap(), "1");
    }

    #[test]
    fn trailing_run() {
        assert_eq!(Word::from_index(&idx(&[2, 1, 1])).trailing_e1_run(), 2);
        assert_eq!(Word::from_index(&idx(&[2])).trailing_e1_run(), 0);
        assert_eq!(Word::from_index(&idx(&[1])).trailing_e1_run(), 1);
    }
}
