//! Exact scalars: rationals, sparse multivariate polynomials, unreduced
//! rational functions, and dense matrices over them.

pub mod expr;
mod exterior;
mod matrix;
mod poly;
mod ratfun;

use std::collections::BTreeMap;

use rand::Rng;

pub use expr::{format_rf, parse_rf};
pub use exterior::{char_poly_via_exterior, det_one_plus_s, exterior_power_trace, SPoly};
pub use matrix::{det, Matrix};
pub use poly::{Exponents, MultiPoly};
pub use ratfun::{rf_equal, RationalFunction};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Non-authoritative equality test: evaluates both sides at `rounds`
/// random rational points and compares. Points where either denominator
/// vanishes are skipped. A `true` answer can be wrong; `false` is always
/// right.
pub fn probably_equal<R: Rng>(a: &RationalFunction, b: &RationalFunction, rounds: usize, rng: &mut R) -> bool {
    let mut vars = a.variables();
    vars.extend(b.variables());
    vars.sort();
    vars.dedup();
    let mut checked = 0;
    let mut attempts = 0;
    while checked < rounds && attempts < rounds * 20 {
        attempts += 1;
        let point: BTreeMap<String, Rational> = vars
            .iter()
            .map(|v| {
                let n: i64 = rng.random_range(-1000..=1000);
                let d: i64 = rng.random_range(1..=97);
                (v.clone(), Rational::new(n.into(), d.into()))
            })
            .collect();
        let (Some(x), Some(y)) = (a.eval(&point), b.eval(&point)) else {
            continue;
        };
        if x != y {
            return false;
        }
        checked += 1;
    }
    true
}
