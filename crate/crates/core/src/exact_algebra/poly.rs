use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;

/// Exponent vector, aligned with the variable list of the owning polynomial.
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Variables are kept sorted by name and pruned when they no longer occur,
/// so structurally equal polynomials compare equal with `==`. Operands with
/// different variable lists are re-embedded into the union before combining.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(name, 1)
    }

    /// `name^exp` with coefficient one.
    pub fn monomial(name: &str, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![exp], Rational::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from explicit terms over `vars`. Zero coefficients
    /// are dropped and the variable list is sorted and pruned.
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let mut raw: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), names.len(), "exponent vector length must match variable count");
            let slot = raw.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        raw.retain(|_, c| !c.is_zero());
        // sort variables, permuting exponent vectors accordingly
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        for w in order.windows(2) {
            assert_ne!(names[w[0]], names[w[1]], "duplicate variable name");
        }
        let sorted: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        let terms = raw.into_iter().map(|(e, c)| (order.iter().map(|&i| e[i]).collect(), c)).collect();
        let mut p = MultiPoly { vars: sorted, terms };
        p.prune();
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included), `None` otherwise.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.vars.is_empty() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Leading term under lexicographic order of the exponent vectors.
    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Splits into coefficients of powers of `var`; the coefficients no
    /// longer mention `var`.
    pub fn coefficients_in(&self, var: &str) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            if !self.is_zero() {
                out.insert(0, self.clone());
            }
            return out;
        };
        let rest: Vec<String> =
            self.vars.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, v)| v.clone()).collect();
        let mut buckets: BTreeMap<u32, BTreeMap<Exponents, Rational>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut reduced = e.clone();
            let k = reduced.remove(idx);
            buckets.entry(k).or_default().insert(reduced, c.clone());
        }
        for (k, terms) in buckets {
            let mut p = MultiPoly { vars: rest.clone(), terms };
            p.prune();
            out.insert(k, p);
        }
        out
    }

    /// Evaluates at a point; `None` if a variable is missing from `point`.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Option<Rational> {
        let values: Vec<&Rational> = self.vars.iter().map(|v| point.get(v)).collect::<Option<Vec<_>>>()?;
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow::pow((*v).clone(), k as usize);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder. Uses leading-term reduction in lexicographic order.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let vars = union_vars(&self.vars, &divisor.vars);
        let d = embed(divisor, &vars);
        let (d_lead_e, d_lead_c) = d.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = embed(self, &vars);
        let mut quot: BTreeMap<Exponents, Rational> = BTreeMap::new();
        while let Some((e, c)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&d_lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = e.iter().zip(&d_lead_e).map(|(a, b)| a - b).collect();
            let qc = &c / &d_lead_c;
            for (de, dc) in &d {
                let te: Exponents = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let slot = rem.entry(te).or_insert_with(Rational::zero);
                *slot -= dc * &qc;
                if slot.is_zero() {
                    let key: Exponents = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                    rem.remove(&key);
                }
            }
            quot.insert(qe, qc);
        }
        let mut q = MultiPoly { vars, terms: quot };
        q.prune();
        Some(q)
    }

    fn prune(&mut self) {
        if self.vars.is_empty() {
            return;
        }
        let used: Vec<bool> = (0..self.vars.len()).map(|i| self.terms.keys().any(|e| e[i] > 0)).collect();
        if used.iter().all(|&u| u) {
            return;
        }
        let keep: Vec<usize> = (0..self.vars.len()).filter(|&i| used[i]).collect();
        self.vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let old = std::mem::take(&mut self.terms);
        self.terms = old.into_iter().map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c)).collect();
    }

    /// Sign-and-scale normalization: the multiplier that makes the leading
    /// coefficient equal to one.
    pub(crate) fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    if a == b {
        return a.to_vec();
    }
    let set: BTreeSet<&String> = a.iter().chain(b).collect();
    set.into_iter().cloned().collect()
}

fn embed(p: &MultiPoly, vars: &[String]) -> BTreeMap<Exponents, Rational> {
    if p.vars == vars {
        return p.terms.clone();
    }
    let pos: Vec<usize> = p.vars.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect();
    p.terms
        .iter()
        .map(|(e, c)| {
            let mut full = vec![0u32; vars.len()];
            for (k, &i) in e.iter().zip(&pos) {
                full[i] = *k;
            }
            (full, c.clone())
        })
        .collect()
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let vars = union_vars(&self.vars, &rhs.vars);
        let mut terms = embed(self, &vars);
        for (e, c) in embed(rhs, &vars) {
            match terms.get_mut(&e) {
                Some(slot) => {
                    *slot += c;
                    if slot.is_zero() {
                        terms.remove(&e);
                    }
                }
                None => {
                    terms.insert(e, c);
                }
            }
        }
        let mut p = MultiPoly { vars, terms };
        p.prune();
        p
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let vars = union_vars(&self.vars, &rhs.vars);
        let a = embed(self, &vars);
        let b = embed(rhs, &vars);
        let mut terms: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match terms.get_mut(&e) {
                    Some(slot) => *slot += prod,
                    None => {
                        terms.insert(e, prod);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let mut p = MultiPoly { vars, terms };
        p.prune();
        p
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
