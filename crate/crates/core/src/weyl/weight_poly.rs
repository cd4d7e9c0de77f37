use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;

use crate::exact_algebra::{MultiPoly, Rational, RationalFunction};

/// Integer combination of `e^λ` for weights `λ` in fundamental-weight
/// coordinates: an element of the group ring of the weight lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightPolynomial {
    terms: BTreeMap<Vec<i64>, i64>,
}

impl WeightPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · e^λ`.
    pub fn monomial(weight: Vec<i64>, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(weight, c);
        }
        WeightPolynomial { terms }
    }

    /// `e^0` in rank `r`.
    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, i64)>>(terms: I) -> Self {
        let mut out = WeightPolynomial::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, w: Vec<i64>, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, i64> {
        &self.terms
    }

    pub fn coefficient(&self, weight: &[i64]) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at the identity of the torus.
    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Applies a linear map on weights to every exponent.
    pub fn map_weights(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        WeightPolynomial::from_terms(self.terms.iter().map(|(w, &c)| (f(w), c)))
    }

    pub fn shift(&self, by: &[i64]) -> Self {
        self.map_weights(|w| w.iter().zip(by).map(|(a, b)| a + b).collect())
    }

    /// Exact quotient by `d` under the total order given by `height`, then
    /// lexicographic. `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &WeightPolynomial, height: impl Fn(&[i64]) -> Rational64) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(WeightPolynomial::zero());
        }
        let key = |w: &[i64]| (height(w), w.to_vec());
        let lead = |p: &WeightPolynomial| p.terms.iter().max_by_key(|(w, _)| key(w)).map(|(w, &c)| (w.clone(), c));
        let low = |p: &WeightPolynomial| p.terms.keys().map(|w| height(w)).min().expect("nonzero");
        let (dw, dc) = lead(d).expect("nonzero");
        let floor = low(self) - low(d);
        let mut rem = self.clone();
        let mut quot = WeightPolynomial::zero();
        while let Some((rw, rc)) = lead(&rem) {
            if rc % dc != 0 {
                return None;
            }
            let qw: Vec<i64> = rw.iter().zip(&dw).map(|(a, b)| a - b).collect();
            if height(&qw) < floor {
                return None;
            }
            let q = WeightPolynomial::monomial(qw, rc / dc);
            rem = &rem - &(&q * d);
            quot = &quot + &q;
        }
        Some(quot)
    }

    /// `Σ c · x^λ` in variables `x1, .., xr`, negative exponents allowed.
    pub fn to_rational_function(&self, rank: usize) -> RationalFunction {
        let names: Vec<String> = (1..=rank).map(|i| format!("x{i}")).collect();
        let mut num = BTreeMap::new();
        let mut shift = vec![0i64; rank];
        for w in self.terms.keys() {
            for (s, &e) in shift.iter_mut().zip(w) {
                *s = (*s).min(e);
            }
        }
        for (w, &c) in &self.terms {
            let e: Vec<u32> = w.iter().zip(&shift).map(|(a, s)| (a - s) as u32).collect();
            num.insert(e, Rational::from_integer(c.into()));
        }
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let num = MultiPoly::from_terms(&name_refs, num);
        let den_exp: Vec<u32> = shift.iter().map(|s| (-s) as u32).collect();
        let den = MultiPoly::from_terms(&name_refs, [(den_exp, Rational::from_integer(1.into()))]);
        RationalFunction::new(num, den).expect("monomial denominator")
    }
}

impl Add for &WeightPolynomial {
    type Output = WeightPolynomial;
    fn add(self, rhs: &WeightPolynomial) -> WeightPolynomial {
        let mut out = self.clone();
        for (w, &c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &WeightPolynomial {
    type Output = WeightPolynomial;
    fn sub(self, rhs: &WeightPolynomial) -> WeightPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &WeightPolynomial {
    type Output = WeightPolynomial;
    fn neg(self) -> WeightPolynomial {
        WeightPolynomial { terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect() }
    }
}

impl Mul for &WeightPolynomial {
    type Output = WeightPolynomial;
    fn mul(self, rhs: &WeightPolynomial) -> WeightPolynomial {
        let mut out = WeightPolynomial::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y);
            }
        }
        out
    }
}

impl fmt::Display for WeightPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, &c)| {
                let w: Vec<String> = w.iter().map(i64::to_string).collect();
                format!("{c}*e({})", w.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
