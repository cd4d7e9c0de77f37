//! Finite-support Z-graded vector spaces and degree-preserving maps.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact_algebra::{Matrix, RationalFunction};

/// Dimensions by degree. Zero dimensions are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    dims: BTreeMap<i64, usize>,
}

impl GradedSpace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = (i64, usize)>>(dims: I) -> Self {
        let mut out = BTreeMap::new();
        for (d, n) in dims {
            *out.entry(d).or_insert(0) += n;
        }
        out.retain(|_, n| *n > 0);
        GradedSpace { dims: out }
    }

    /// A space concentrated in one degree.
    pub fn concentrated(degree: i64, dim: usize) -> Self {
        Self::new([(degree, dim)])
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(&d, &n)| sign(d) * n as i64).sum()
    }

    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        Self::new(self.dims.iter().chain(&other.dims).map(|(&d, &n)| (d, n)))
    }

    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        Self::new(self.dims.iter().flat_map(|(&a, &m)| other.dims.iter().map(move |(&b, &n)| (a + b, m * n))))
    }
}

fn sign(d: i64) -> i64 {
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A degree-preserving linear map, one matrix block per degree present in
/// both source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    blocks: BTreeMap<i64, Matrix>,
}

impl GradedMap {
    /// Validates block shapes. Degrees present in both spaces but missing
    /// from `blocks` get a zero block.
    pub fn new(source: GradedSpace, target: GradedSpace, mut blocks: BTreeMap<i64, Matrix>) -> Result<Self> {
        for (&d, b) in &blocks {
            let (r, c) = (target.dim(d), source.dim(d));
            if r == 0 || c == 0 {
                return Err(Error::Shape(format!("block at degree {d} outside the common support")));
            }
            if (b.rows(), b.cols()) != (r, c) {
                return Err(Error::Shape(format!(
                    "block at degree {d} is {}x{}, expected {r}x{c}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        for (&d, &c) in source.dims() {
            let r = target.dim(d);
            if r > 0 {
                blocks.entry(d).or_insert_with(|| Matrix::zeros(r, c));
            }
        }
        Ok(GradedMap { source, target, blocks })
    }

    /// Endomorphism with one diagonal block per degree.
    pub fn diagonal(entries: BTreeMap<i64, Vec<RationalFunction>>) -> Self {
        let space = GradedSpace::new(entries.iter().map(|(&d, v)| (d, v.len())));
        let blocks = entries.into_iter().filter(|(_, v)| !v.is_empty()).map(|(d, v)| (d, Matrix::diag(v))).collect();
        GradedMap { source: space.clone(), target: space, blocks }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let blocks = space.dims().iter().map(|(&d, &n)| (d, Matrix::identity(n))).collect();
        GradedMap { source: space.clone(), target: space.clone(), blocks }
    }

    pub fn zero(source: &GradedSpace, target: &GradedSpace) -> Self {
        Self::new(source.clone(), target.clone(), BTreeMap::new()).expect("zero map is well-formed")
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<i64, Matrix> {
        &self.blocks
    }

    pub fn block(&self, degree: i64) -> Option<&Matrix> {
        self.blocks.get(&degree)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GradedMap) -> Result<GradedMap> {
        if first.target != self.source {
            return Err(Error::Shape("composition of graded maps with mismatched spaces".into()));
        }
        let mut blocks = BTreeMap::new();
        for (&d, g) in &self.blocks {
            if let Some(f) = first.blocks.get(&d) {
                blocks.insert(d, g.mul(f)?);
            }
        }
        GradedMap::new(first.source.clone(), self.target.clone(), blocks)
    }

    pub fn direct_sum(&self, other: &GradedMap) -> GradedMap {
        let mut blocks = BTreeMap::new();
        let degrees: BTreeSet<i64> = self.source.dims().keys().chain(other.source.dims().keys()).copied().collect();
        for d in degrees {
            let a = self.block_or_zero(d);
            let b = other.block_or_zero(d);
            let m = Matrix::direct_sum(&[a, b]);
            if m.rows() > 0 && m.cols() > 0 {
                blocks.insert(d, m);
            }
        }
        GradedMap {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            blocks,
        }
    }

    /// Tensor product; degrees add. The block in degree `d` is the direct
    /// sum over `a + b = d` (ascending `a`) of Kronecker products.
    pub fn tensor(&self, other: &GradedMap) -> GradedMap {
        let source = self.source.tensor(&other.source);
        let target = self.target.tensor(&other.target);
        let degs_a: BTreeSet<i64> = self.source.dims().keys().chain(self.target.dims().keys()).copied().collect();
        let degs_b: BTreeSet<i64> = other.source.dims().keys().chain(other.target.dims().keys()).copied().collect();
        let mut by_degree: BTreeMap<i64, Vec<Matrix>> = BTreeMap::new();
        for &a in &degs_a {
            for &b in &degs_b {
                by_degree.entry(a + b).or_default().push(self.block_or_zero(a).kron(&other.block_or_zero(b)));
            }
        }
        let mut blocks = BTreeMap::new();
        for (d, ms) in by_degree {
            let m = Matrix::direct_sum(&ms);
            if m.rows() > 0 && m.cols() > 0 {
                blocks.insert(d, m);
            }
        }
        GradedMap { source, target, blocks }
    }

    fn block_or_zero(&self, d: i64) -> Matrix {
        self.blocks.get(&d).cloned().unwrap_or_else(|| Matrix::zeros(self.target.dim(d), self.source.dim(d)))
    }
}

/// Alternating sum over degrees of the blockwise traces.
pub fn euler_trace(f: &GradedMap) -> Result<RationalFunction> {
    if f.source != f.target {
        return Err(Error::Shape("Euler trace of a map between different graded spaces".into()));
    }
    let mut total = RationalFunction::zero();
    for (&d, b) in &f.blocks {
        let t = b.trace()?;
        total = if sign(d) > 0 { &total + &t } else { &total - &t };
    }
    Ok(total)
}
