//! Line bundles on ℙⁿ with a diagonal automorphism `f*(x_i) = λ_i x_i`.
//!
//! The Lefschetz number is computed from cohomology (monomial bases of
//! `H⁰` and `Hⁿ`) and, separately, as a sum of local terms over the
//! coordinate points. The two routes share only the scalar arithmetic.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_algebra::{exterior_power_trace, rf_equal, Matrix, RationalFunction};
use crate::graded_vect::{euler_trace, GradedMap, GradedSpace};

/// `ℙⁿ` with pullback eigenvalues `λ_0, .., λ_n` on homogeneous coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjScenario {
    eigenvalues: Vec<RationalFunction>,
}

impl ProjScenario {
    /// Requires at least two eigenvalues, all nonzero. Distinctness is
    /// checked later by [`fixed_points`].
    pub fn new(eigenvalues: Vec<RationalFunction>) -> Result<Self> {
        if eigenvalues.len() < 2 {
            return Err(Error::Argument("projective space needs at least two coordinates".into()));
        }
        if let Some(i) = eigenvalues.iter().position(RationalFunction::is_zero) {
            return Err(Error::Argument(format!("eigenvalue {i} is zero")));
        }
        Ok(ProjScenario { eigenvalues })
    }

    /// `ℙⁿ` with eigenvalues `1, q, .., qⁿ`.
    pub fn powers_of(var: &str, n: usize) -> Self {
        let q = RationalFunction::var(var);
        let eigenvalues = (0..=n as i64).map(|k| q.pow(k).expect("nonnegative power")).collect();
        ProjScenario { eigenvalues }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len() - 1
    }

    pub fn eigenvalues(&self) -> &[RationalFunction] {
        &self.eigenvalues
    }
}

/// `⊕_j O(m_j)`, each summand carrying `c_j` times the canonical lift.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleSpec {
    summands: Vec<(i64, RationalFunction)>,
}

impl BundleSpec {
    pub fn new(summands: Vec<(i64, RationalFunction)>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::Argument("bundle with no summands".into()));
        }
        if let Some(j) = summands.iter().position(|(_, c)| c.is_zero()) {
            return Err(Error::Argument(format!("summand {j} has zero scalar")));
        }
        Ok(BundleSpec { summands })
    }

    /// `O(m)` with the canonical lift.
    pub fn line(m: i64) -> Self {
        BundleSpec { summands: vec![(m, RationalFunction::one())] }
    }

    pub fn summands(&self) -> &[(i64, RationalFunction)] {
        &self.summands
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoint {
    pub index: usize,
    /// `λ_j / λ_i` for `j ≠ i`, ascending `j`.
    pub tangent_eigenvalues: Vec<RationalFunction>,
}

impl FixedPoint {
    /// The differential at the point, diagonal in the affine chart.
    pub fn differential(&self) -> Matrix {
        Matrix::diag(self.tangent_eigenvalues.clone())
    }
}

/// The coordinate points `e_0, .., e_n`; fails if two eigenvalues agree.
pub fn fixed_points(sc: &ProjScenario) -> Result<Vec<FixedPoint>> {
    let lam = &sc.eigenvalues;
    for i in 0..lam.len() {
        for j in i + 1..lam.len() {
            if rf_equal(&lam[i], &lam[j]) {
                return Err(Error::NotTransversal { i, j });
            }
        }
    }
    Ok((0..lam.len())
        .map(|i| FixedPoint {
            index: i,
            tangent_eigenvalues: (0..lam.len()).filter(|&j| j != i).map(|j| &lam[j] / &lam[i]).collect(),
        })
        .collect())
}

/// `1 / Π_{j≠i} (1 - λ_j/λ_i)`.
pub fn lambda_x(sc: &ProjScenario, x: &FixedPoint) -> Result<RationalFunction> {
    let one = RationalFunction::one();
    let mut den = RationalFunction::one();
    for (k, t) in x.tangent_eigenvalues.iter().enumerate() {
        let factor = &one - t;
        if factor.is_zero() {
            let j = if k < x.index { k } else { k + 1 };
            return Err(Error::NotTransversal { i: x.index.min(j), j: x.index.max(j) });
        }
        den = &den * &factor;
    }
    if x.index > sc.dim() {
        return Err(Error::Argument(format!("fixed point {} of ℙ^{}", x.index, sc.dim())));
    }
    den.recip()
}

/// Fiber trace at `e_i`, `Σ_j c_j λ_i^{m_j}`, over `det(1 - d_x f)`.
pub fn local_term(sc: &ProjScenario, b: &BundleSpec, x: &FixedPoint) -> Result<RationalFunction> {
    let lam = &sc.eigenvalues[x.index];
    let mut fiber = RationalFunction::zero();
    for (m, c) in &b.summands {
        fiber = &fiber + &(c * &lam.pow(*m)?);
    }
    Ok(&fiber * &lambda_x(sc, x)?)
}

/// Sum of local terms over the fixed points.
pub fn ab_rhs(sc: &ProjScenario, b: &BundleSpec) -> Result<RationalFunction> {
    fixed_points(sc)?.iter().map(|x| local_term(sc, b, x)).sum()
}

/// All `a ∈ ℕ^parts` with `|a| = total`, first coordinate ascending, then
/// the rest recursively.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn monomial_eigenvalue(lam: &[RationalFunction], c: &RationalFunction, a: &[i64]) -> Result<RationalFunction> {
    let mut v = c.clone();
    for (l, &e) in lam.iter().zip(a) {
        v = &v * &l.pow(e)?;
    }
    Ok(v)
}

/// Action of `c` times the canonical lift on `H^*(ℙⁿ, O(m))`: monomials
/// `x^a` with `a ≥ 0` in degree 0 for `m ≥ 0`, monomials with all
/// `a_i ≤ -1` in degree `n` for `m ≤ -n-1`, nothing otherwise. Each basis
/// monomial has eigenvalue `c λ^a`.
pub fn cohomology_action(sc: &ProjScenario, m: i64, c: &RationalFunction) -> Result<GradedMap> {
    let n = sc.dim() as i64;
    let parts = sc.eigenvalues.len();
    let (degree, exponents): (i64, Vec<Vec<i64>>) = if m >= 0 {
        let a = compositions(m as u32, parts).into_iter().map(|b| b.into_iter().map(i64::from).collect());
        (0, a.collect())
    } else if m < -n {
        let free = (-m - n - 1) as u32;
        let a = compositions(free, parts).into_iter().map(|b| b.into_iter().map(|k| -i64::from(k) - 1).collect());
        (n, a.collect())
    } else {
        return Ok(GradedMap::identity(&GradedSpace::zero()));
    };
    let eig = exponents.iter().map(|a| monomial_eigenvalue(&sc.eigenvalues, c, a)).collect::<Result<Vec<_>>>()?;
    Ok(GradedMap::diagonal(BTreeMap::from([(degree, eig)])))
}

/// Alternating trace on cohomology, summed over the summands.
pub fn lefschetz_lhs(sc: &ProjScenario, b: &BundleSpec) -> Result<RationalFunction> {
    b.summands.iter().map(|(m, c)| euler_trace(&cohomology_action(sc, *m, c)?)).sum()
}

/// `Σ_p (-1)^p Tr(Λ^p A)`.
pub fn skyscraper_local_trace(a: &Matrix) -> Result<RationalFunction> {
    if !a.is_square() {
        return Err(Error::Dimension("skyscraper trace of a non-square matrix".into()));
    }
    let mut total = RationalFunction::zero();
    for p in 0..=a.rows() {
        let t = exterior_power_trace(a, p)?;
        total = if p % 2 == 0 { &total + &t } else { &total - &t };
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Unequal,
    NotTransversal { i: usize, j: usize },
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::Unequal => "unequal",
            Verdict::NotTransversal { .. } => "not_transversal",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AbReport {
    pub lhs: RationalFunction,
    /// Absent when the fixed points are not isolated.
    pub rhs: Option<RationalFunction>,
    pub verdict: Verdict,
}

/// Both sides of the fixed-point formula and their comparison.
pub fn verify_ab(sc: &ProjScenario, b: &BundleSpec) -> Result<AbReport> {
    let lhs = lefschetz_lhs(sc, b)?;
    match ab_rhs(sc, b) {
        Ok(rhs) => {
            let verdict = if rf_equal(&lhs, &rhs) { Verdict::Equal } else { Verdict::Unequal };
            Ok(AbReport { lhs, rhs: Some(rhs), verdict })
        }
        Err(Error::NotTransversal { i, j }) => {
            Ok(AbReport { lhs, rhs: None, verdict: Verdict::NotTransversal { i, j } })
        }
        Err(e) => Err(e),
    }
}
