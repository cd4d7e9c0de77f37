//! Root systems of types A1, A2, A3, B2, G2, their Weyl groups, and the
//! Weyl character formula.
//!
//! Weights are integer vectors in the basis of fundamental weights. The
//! Cartan matrix is stored as `cartan[i][j] = ⟨α_i, α_j^∨⟩`, so row `i` is
//! the simple root `α_i` in fundamental coordinates and the simple
//! reflection is `s_i(λ) = λ - λ_i α_i`.

mod character;
mod weight_poly;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{Error, Result};

pub use character::{
    a1_to_q, denominator_product, fixed_point_character_sum, freudenthal_multiplicities, weyl_character,
    weyl_denominator, weyl_dimension,
};
pub use weight_poly::WeightPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    A1,
    A2,
    A3,
    B2,
    G2,
}

impl RootType {
    pub const ALL: [RootType; 5] = [RootType::A1, RootType::A2, RootType::A3, RootType::B2, RootType::G2];
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A1" => Ok(RootType::A1),
            "A2" => Ok(RootType::A2),
            "A3" => Ok(RootType::A3),
            "B2" => Ok(RootType::B2),
            "G2" => Ok(RootType::G2),
            _ => Err(Error::Argument(format!("unsupported root system {s:?}"))),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    label: RootType,
    cartan: Vec<Vec<i64>>,
    /// `(α_i, α_i) / 2`; the invariant form is `(α_i, α_j) = d_j ⟨α_i, α_j^∨⟩`.
    symmetrizer: Vec<i64>,
    /// Inverse Cartan matrix: row `i` is `ω_i` in simple-root coordinates.
    fundamental_weights: Vec<Vec<Rational64>>,
    /// Positive roots in simple-root coordinates.
    positive_roots: Vec<Vec<i64>>,
    rho: Vec<i64>,
}

fn table(label: RootType) -> (Vec<Vec<i64>>, Vec<i64>) {
    match label {
        RootType::A1 => (vec![vec![2]], vec![1]),
        RootType::A2 => (vec![vec![2, -1], vec![-1, 2]], vec![1, 1]),
        RootType::A3 => (vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]], vec![1, 1, 1]),
        RootType::B2 => (vec![vec![2, -2], vec![-1, 2]], vec![2, 1]),
        RootType::G2 => (vec![vec![2, -1], vec![-3, 2]], vec![1, 3]),
    }
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| Rational64::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Rational64::from_integer(0)).expect("Cartan matrix is invertible");
        a.swap(c, p);
        let inv = Rational64::from_integer(1) / a[c][c];
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                for k in 0..2 * n {
                    let v = a[c][k];
                    a[r][k] -= f * v;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Builds the tables for `label` and checks the type invariants.
pub fn build_root_system(label: RootType) -> Result<RootSystem> {
    let (cartan, symmetrizer) = table(label);
    let r = cartan.len();
    for i in 0..r {
        for j in 0..r {
            if symmetrizer[j] * cartan[i][j] != symmetrizer[i] * cartan[j][i] {
                return Err(Error::Invariant(format!("{label}: Cartan matrix is not symmetrizable by d")));
            }
        }
    }
    let fundamental_weights = invert(&cartan);
    // reflection closure of the simple roots, in root coordinates
    let pairing = |beta: &[i64], i: usize| -> i64 { (0..r).map(|j| beta[j] * cartan[j][i]).sum() };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    while let Some(beta) = queue.pop_front() {
        if !seen.insert(beta.clone()) {
            continue;
        }
        for i in 0..r {
            let mut b = beta.clone();
            b[i] -= pairing(&beta, i);
            if !seen.contains(&b) {
                queue.push_back(b);
            }
        }
    }
    let mut positive_roots: Vec<Vec<i64>> = seen.into_iter().filter(|b| b.iter().all(|&c| c >= 0)).collect();
    positive_roots.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
    let expected = match label {
        RootType::A1 => 1,
        RootType::A2 => 3,
        RootType::A3 => 6,
        RootType::B2 => 4,
        RootType::G2 => 6,
    };
    if positive_roots.len() != expected {
        return Err(Error::Invariant(format!("{label}: {} positive roots", positive_roots.len())));
    }
    let rs0 = RootSystem { label, cartan, symmetrizer, fundamental_weights, positive_roots, rho: vec![] };
    let twice_rho = rs0.positive_roots.iter().fold(vec![0; r], |acc, b| {
        let w = rs0.root_to_weight(b);
        acc.iter().zip(&w).map(|(a, x)| a + x).collect()
    });
    if twice_rho.iter().any(|&x| x != 2) {
        return Err(Error::Invariant(format!("{label}: half-sum of positive roots is not ω_1+..+ω_r")));
    }
    let rho = twice_rho.iter().map(|x| x / 2).collect();
    Ok(RootSystem { rho, ..rs0 })
}

impl RootSystem {
    pub fn label(&self) -> RootType {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// `α_i` in fundamental-weight coordinates.
    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        self.cartan[i].clone()
    }

    /// `ω_i` in simple-root coordinates.
    pub fn fundamental_weights(&self) -> &[Vec<Rational64>] {
        &self.fundamental_weights
    }

    /// Positive roots in simple-root coordinates, by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Positive roots in fundamental-weight coordinates.
    pub fn positive_root_weights(&self) -> Vec<Vec<i64>> {
        self.positive_roots.iter().map(|b| self.root_to_weight(b)).collect()
    }

    pub fn rho(&self) -> &[i64] {
        &self.rho
    }

    pub fn root_to_weight(&self, beta: &[i64]) -> Vec<i64> {
        let r = self.rank();
        (0..r).map(|j| (0..r).map(|i| beta[i] * self.cartan[i][j]).sum()).collect()
    }

    /// Simple-root coordinates of a weight.
    pub fn weight_to_root(&self, w: &[i64]) -> Vec<Rational64> {
        let r = self.rank();
        (0..r).map(|j| (0..r).map(|i| self.fundamental_weights[i][j] * w[i]).sum()).collect()
    }

    /// Sum of simple-root coordinates.
    pub fn height(&self, w: &[i64]) -> Rational64 {
        self.weight_to_root(w).into_iter().sum()
    }

    /// Invariant form `(λ, μ)`.
    pub fn inner(&self, l: &[i64], m: &[i64]) -> Rational64 {
        let mr = self.weight_to_root(m);
        (0..self.rank()).map(|i| mr[i] * (l[i] * self.symmetrizer[i])).sum()
    }

    /// `⟨λ, β^∨⟩` for a root `β` given in simple-root coordinates.
    pub fn coroot_pairing(&self, l: &[i64], beta: &[i64]) -> Rational64 {
        let bw = self.root_to_weight(beta);
        Rational64::from_integer(2) * self.inner(l, &bw) / self.inner(&bw, &bw)
    }

    pub fn is_dominant(&self, w: &[i64]) -> bool {
        w.len() == self.rank() && w.iter().all(|&x| x >= 0)
    }

    pub fn reflect(&self, i: usize, w: &[i64]) -> Vec<i64> {
        w.iter().zip(&self.cartan[i]).map(|(a, c)| a - w[i] * c).collect()
    }

    /// The dominant weight in the orbit of `w`.
    pub fn dominant_conjugate(&self, w: &[i64]) -> Vec<i64> {
        let mut v = w.to_vec();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            v = self.reflect(i, &v);
        }
        v
    }

    pub(crate) fn check_dominant(&self, w: &[i64]) -> Result<()> {
        if w.len() != self.rank() {
            return Err(Error::Argument(format!("weight of length {} for rank {}", w.len(), self.rank())));
        }
        if !self.is_dominant(w) {
            return Err(Error::Argument(format!("weight {w:?} is not dominant")));
        }
        Ok(())
    }
}

/// An element of the Weyl group as a reduced word and its matrix on
/// fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// `w = s_{word[0]} s_{word[1]} ...`.
    pub word: Vec<usize>,
    /// `(wλ)_k = Σ_j matrix[k][j] λ_j`.
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn apply(&self, w: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn compose(&self, other: &WeylElement) -> Vec<Vec<i64>> {
        let n = self.matrix.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum()).collect()).collect()
    }
}

/// All elements, by breadth-first closure under left multiplication by
/// simple reflections; words are reduced and listed by length.
pub fn weyl_group(rs: &RootSystem) -> Vec<WeylElement> {
    let r = rs.rank();
    let identity: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let simple: Vec<Vec<Vec<i64>>> = (0..r)
        .map(|i| {
            (0..r).map(|k| (0..r).map(|j| i64::from(k == j) - i64::from(i == j) * rs.cartan[i][k]).collect()).collect()
        })
        .collect();
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::from([identity.clone()]);
    let mut out = vec![WeylElement { word: vec![], matrix: identity }];
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        head += 1;
        for (i, s) in simple.iter().enumerate() {
            let m = WeylElement { word: vec![], matrix: s.clone() }.compose(&w);
            if seen.insert(m.clone()) {
                let mut word = vec![i];
                word.extend(&w.word);
                out.push(WeylElement { word, matrix: m });
            }
        }
    }
    out
}
