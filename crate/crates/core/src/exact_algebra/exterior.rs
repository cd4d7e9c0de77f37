use std::fmt;

use super::{det, Matrix, RationalFunction};
use crate::error::{Error, Result};

/// Polynomial in one formal variable `s` with coefficients in the
/// rational-function field; `coeffs[p]` multiplies `s^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPoly {
    coeffs: Vec<RationalFunction>,
}

impl SPoly {
    pub fn new(mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().is_some_and(RationalFunction::is_zero) {
            coeffs.pop();
        }
        SPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// Coefficient of `s^p` (zero past the degree).
    pub fn coeff(&self, p: usize) -> RationalFunction {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, s: &RationalFunction) -> RationalFunction {
        // Horner
        self.coeffs.iter().rev().fold(RationalFunction::zero(), |acc, c| &(&acc * s) + c)
    }
}

impl fmt::Display for SPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| match p {
                0 => format!("({c})"),
                1 => format!("({c})*s"),
                _ => format!("({c})*s^{p}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Trace of the induced map on the `p`-th exterior power: the sum of all
/// principal `p x p` minors.
pub fn exterior_power_trace(a: &Matrix, p: usize) -> Result<RationalFunction> {
    if !a.is_square() {
        return Err(Error::Dimension("exterior power of a non-square matrix".into()));
    }
    let n = a.rows();
    if p > n {
        return Err(Error::Argument(format!("exterior power {p} of a {n}-dimensional space")));
    }
    let mut total = RationalFunction::zero();
    for subset in Subsets::new(n, p) {
        total = &total + &det(&a.submatrix(&subset, &subset))?;
    }
    Ok(total)
}

/// `sum_p Tr(Lambda^p A) s^p`.
pub fn char_poly_via_exterior(a: &Matrix) -> Result<SPoly> {
    if !a.is_square() {
        return Err(Error::Dimension("characteristic polynomial of a non-square matrix".into()));
    }
    let coeffs = (0..=a.rows()).map(|p| exterior_power_trace(a, p)).collect::<Result<Vec<_>>>()?;
    Ok(SPoly::new(coeffs))
}

/// `det(1 + sA)` by elimination over the field extended by a fresh
/// variable `s`, read back coefficient-wise.
pub fn det_one_plus_s(a: &Matrix) -> Result<SPoly> {
    if !a.is_square() {
        return Err(Error::Dimension("det(1+sA) of a non-square matrix".into()));
    }
    let taken: Vec<String> = a.entries().iter().flat_map(RationalFunction::variables).collect();
    let mut s_name = String::from("s");
    while taken.contains(&s_name) {
        s_name.push('_');
    }
    let s = RationalFunction::var(&s_name);
    let n = a.rows();
    let mut m = a.scale(&s);
    for i in 0..n {
        let v = m.get(i, i) + &RationalFunction::one();
        m.set(i, i, v);
    }
    let d = det(&m)?;
    if d.den().degree_in(&s_name) > 0 {
        return Err(Error::Invariant("denominator of det(1+sA) depends on s".into()));
    }
    let by_power = d.num().coefficients_in(&s_name);
    let top = by_power.keys().next_back().copied().unwrap_or(0) as usize;
    let mut coeffs = vec![RationalFunction::zero(); top + 1];
    for (k, c) in by_power {
        coeffs[k as usize] = RationalFunction::new(c, d.den().clone())?;
    }
    Ok(SPoly::new(coeffs))
}

/// Lexicographic enumeration of `k`-subsets of `0..n`.
pub(crate) struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Subsets { n, cur: if k <= n { Some((0..k).collect()) } else { None } }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}
