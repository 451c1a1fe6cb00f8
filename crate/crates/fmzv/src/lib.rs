//! Finite and symmetric multiple zeta values, at desk scale.
//!
//! Three layers, verified against each other:
//!
//! * **Exact rationals** — compositions and set partitions ([`index`]),
//!   the word algebra on letters `e0`, `e1` with harmonic / shuffle /
//!   block-shuffle products ([`words`]), shuffle- and harmonic-regularization
//!   ([`reg`]), Bernoulli numbers ([`bernoulli`]), and the binomial-identity
//!   grids ([`appendix`]).
//! * **Residues mod p^n** — truncated multiple harmonic sums
//!   `sum_{0<n_1<...<n_r<p} n_1^{-k_1}...n_r^{-k_r} (mod p^n)` over a window
//!   of primes ([`modular`]), Bernoulli-type closed forms for depth-one
//!   values ([`bernoulli::zfrak_a`]), and per-prime evaluation of formal
//!   polynomials in those depth-one values ([`zexpr`]).
//! * **High-precision reals** — multiple zeta values to a requested number
//!   of decimal digits via the Hölder-convolution form of their iterated
//!   integrals ([`numeric`]), their regularized and symmetrized variants
//!   ([`sside`]), and a heuristic reducibility check for the `zeta(2)`-span
//!   of a real number ([`modzeta2`]).
//!
//! [`theorems`] ties the layers together: each identity family gets a typed
//! case (parameters validated against the hypotheses), a left-hand side
//! computed from raw sums, and a right-hand side computed from closed forms,
//! compared prime by prime or digit by digit. [`report`] and [`cli`] expose
//! the whole thing as `fmzv verify / eval / table` with machine-readable
//! reports.

pub mod appendix;
pub mod bernoulli;
pub mod cli;
pub mod error;
pub mod index;
pub mod modular;
pub mod modzeta2;
pub mod numeric;
pub mod reg;
pub mod report;
pub mod sside;
pub mod theorems;
pub mod words;
pub mod zexpr;

pub use error::{Error, Result};
pub use index::Index;
pub use words::{LinComb, Product, Word};
