//! A finite 2-category of kernels.
//!
//! Objects are finite sets, 1-morphisms `X -> Y` are `|Y| × |X|` matrices
//! of finite-dimensional vector spaces (stored by dimension), and
//! 2-morphisms are entrywise linear maps with explicit matrices. Composition
//! is `(L ∘ K)[u,s] = ⊕_t L[u,t] ⊗ K[t,s]`; the tensor product is the
//! Kronecker product on both indices and spaces. Every object is self-dual
//! and every kernel has a right adjoint given by the dual transposed
//! kernel, so traces and morphisms of traces can be computed literally.
//!
//! Basis conventions are fixed in [`term`](self) and shared by all
//! operations here.

mod discrete;
mod lax;
mod sparse;
mod term;

use crate::error::{Error, Result};
use crate::exact_algebra::{Matrix, RationalFunction};
use crate::graded_vect::GradedSpace;

pub use discrete::{
    chern_character, chern_direct, chern_square, global_sections_square, integrate, lefschetz_discrete,
};
pub use lax::{compose_lax_squares, trace_of_lax_square, LaxSquare};

use sparse::SparseMatrix;
use term::{Cell, Term};

/// A finite set `{0, .., size-1}`; the monoidal unit has size one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinObj {
    pub size: usize,
}

impl FinObj {
    pub const UNIT: FinObj = FinObj { size: 1 };

    pub fn new(size: usize) -> Self {
        FinObj { size }
    }

    pub fn tensor(self, other: FinObj) -> FinObj {
        FinObj { size: self.size * other.size }
    }
}

/// A kernel `source -> target`, stored as the dimension of each entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Kernel {
    source: FinObj,
    target: FinObj,
    dims: Vec<usize>,
}

impl Kernel {
    /// `dims` is row-major, `target.size × source.size`.
    pub fn from_dims(source: usize, target: usize, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != source * target {
            return Err(Error::Shape(format!("{} entry dimensions for a kernel {source} -> {target}", dims.len())));
        }
        Ok(Kernel { source: FinObj::new(source), target: FinObj::new(target), dims })
    }

    pub fn from_rows(rows: &[&[usize]]) -> Result<Self> {
        let target = rows.len();
        let source = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != source) {
            return Err(Error::Shape("ragged kernel rows".into()));
        }
        Self::from_dims(source, target, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn identity(obj: FinObj) -> Self {
        let n = obj.size;
        let dims = (0..n * n).map(|i| usize::from(i / n == i % n)).collect();
        Kernel { source: obj, target: obj, dims }
    }

    pub fn source(&self) -> FinObj {
        self.source
    }

    pub fn target(&self) -> FinObj {
        self.target
    }

    pub fn dim(&self, t: usize, s: usize) -> usize {
        self.dims[t * self.source.size + s]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }
}

/// Composite `l ∘ k`: integer matrix product of the dimension matrices.
pub fn compose_kernels(l: &Kernel, k: &Kernel) -> Result<Kernel> {
    if k.target != l.source {
        return Err(Error::Composition(format!(
            "kernel {} -> {} followed by kernel {} -> {}",
            k.source.size, k.target.size, l.source.size, l.target.size
        )));
    }
    let (n, m, p) = (l.target.size, k.target.size, k.source.size);
    let mut dims = vec![0; n * p];
    for u in 0..n {
        for s in 0..p {
            dims[u * p + s] = (0..m).map(|t| l.dim(u, t) * k.dim(t, s)).sum();
        }
    }
    Kernel::from_dims(p, n, dims)
}

pub fn tensor_kernels(a: &Kernel, b: &Kernel) -> Kernel {
    Term::tensor(&Term::anonymous(a), &Term::anonymous(b)).to_kernel()
}

/// The right adjoint (equivalently the dual): source and target swapped,
/// entry dimensions transposed.
pub fn dual_kernel(k: &Kernel) -> Kernel {
    let (src, tgt) = (k.source.size, k.target.size);
    let mut dims = vec![0; src * tgt];
    for t in 0..tgt {
        for s in 0..src {
            dims[s * tgt + t] = k.dim(t, s);
        }
    }
    Kernel { source: k.target, target: k.source, dims }
}

/// Kernel of pushforward along `f`: entry `(t, s)` is one-dimensional iff
/// `t = f(s)`.
pub fn pushforward_kernel(f: &[usize]) -> Result<Kernel> {
    let n = f.len();
    if let Some((s, &t)) = f.iter().enumerate().find(|(_, &t)| t >= n) {
        return Err(Error::Argument(format!("map sends {s} to {t}, outside 0..{n}")));
    }
    let mut dims = vec![0; n * n];
    for (s, &t) in f.iter().enumerate() {
        dims[t * n + s] = 1;
    }
    Kernel::from_dims(n, n, dims)
}

/// Trace of an endo-kernel, computed as the composite
/// `ev ∘ twist ∘ (K ⊗ id) ∘ coev` and checked against the direct sum of
/// the diagonal entries. Returned in degree zero.
pub fn trace_of_kernel(k: &Kernel) -> Result<GradedSpace> {
    if !k.is_endo() {
        return Err(Error::Shape("trace of a kernel that is not an endomorphism".into()));
    }
    let n = k.source.size;
    let obj = FinObj::new(n);
    let coev = Term::coev(n).to_kernel();
    let ev = Term::ev(n).to_kernel();
    let twist = Term::twist(n, n).to_kernel();
    let k_id = tensor_kernels(k, &Kernel::identity(obj));
    let composite = compose_kernels(&ev, &compose_kernels(&twist, &compose_kernels(&k_id, &coev)?)?)?;
    let via_composite = composite.dim(0, 0);
    let diagonal: usize = (0..n).map(|s| k.dim(s, s)).sum();
    if via_composite != diagonal {
        return Err(Error::Invariant(format!(
            "trace composite has dimension {via_composite}, diagonal sum is {diagonal}"
        )));
    }
    Ok(GradedSpace::concentrated(0, diagonal))
}

/// An entrywise linear map between two kernels with the same boundary.
/// Component `(t, s)` is a `target.dim(t,s) × source.dim(t,s)` matrix in the
/// standard basis conventions of composites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCell {
    source: Kernel,
    target: Kernel,
    maps: Vec<Matrix>,
}

impl TwoCell {
    pub fn new(source: Kernel, target: Kernel, maps: Vec<Matrix>) -> Result<Self> {
        Cell::new(
            Term::anonymous(&source),
            Term::anonymous(&target),
            maps.iter().map(SparseMatrix::from_dense).collect(),
        )?;
        Ok(TwoCell { source, target, maps })
    }

    pub fn identity(k: &Kernel) -> Self {
        let maps = k.dims.iter().map(|&d| Matrix::identity(d)).collect();
        TwoCell { source: k.clone(), target: k.clone(), maps }
    }

    pub fn source(&self) -> &Kernel {
        &self.source
    }

    pub fn target(&self) -> &Kernel {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, t: usize, s: usize) -> &Matrix {
        &self.maps[t * self.source.source.size + s]
    }

    fn anonymous(&self) -> Cell {
        let maps = self.maps.iter().map(SparseMatrix::from_dense).collect();
        Cell::new(Term::anonymous(&self.source), Term::anonymous(&self.target), maps)
            .expect("validated at construction")
    }

    /// `second · self`.
    pub fn then(&self, second: &TwoCell) -> Result<TwoCell> {
        if self.target != second.source {
            return Err(Error::Composition("vertical composition of incompatible 2-cells".into()));
        }
        Ok(Cell::vcompose(&second.anonymous(), &self.anonymous())?.to_plain())
    }

    /// Horizontal composite `outer ∘ inner`.
    pub fn hcompose(outer: &TwoCell, inner: &TwoCell) -> Result<TwoCell> {
        Ok(Cell::hcompose(&outer.anonymous(), &inner.anonymous())?.to_plain())
    }

    pub fn tensor(a: &TwoCell, b: &TwoCell) -> TwoCell {
        Cell::tensor(&a.anonymous(), &b.anonymous()).to_plain()
    }

    /// `Σ_s tr(component (s, s))` for an endo-2-cell of an endo-kernel:
    /// the trace of the induced endomorphism of `Tr(K)`.
    pub fn diagonal_trace(&self) -> Result<RationalFunction> {
        if self.source != self.target || !self.source.is_endo() {
            return Err(Error::Shape("diagonal trace needs an endo-2-cell of an endo-kernel".into()));
        }
        (0..self.source.source.size).map(|s| self.map(s, s).trace()).sum()
    }
}

const PHI: term::AtomId = 1;
const PSI: term::AtomId = 2;
const PHI_AGAIN: term::AtomId = 3;
const PSI_AGAIN: term::AtomId = 4;

/// Unit `Id_X => ψ ∘ φ` of the adjunction, with labeled source and target.
pub(crate) fn unit_cell(phi: &Kernel, phi_id: term::AtomId, psi_id: term::AtomId) -> Result<Cell> {
    let source = Term::identity(phi.source.size);
    let target = Term::compose(&Term::atom_adjoint(psi_id, phi), &Term::atom(phi_id, phi))?;
    Cell::from_fn(source, target, |_, _, src, dst| {
        let mut m = SparseMatrix::zeros(dst.len(), src.len());
        if src.len() == 1 {
            for (r, label) in dst.iter().enumerate() {
                let (a, b) = (label[0], label[1]);
                if a.idx() == b.idx() {
                    m.set(r, 0, RationalFunction::one());
                }
            }
        }
        m
    })
}

/// Counit `φ ∘ ψ => Id_Y` of the adjunction.
pub(crate) fn counit_cell(phi: &Kernel, phi_id: term::AtomId, psi_id: term::AtomId) -> Result<Cell> {
    let source = Term::compose(&Term::atom(phi_id, phi), &Term::atom_adjoint(psi_id, phi))?;
    let target = Term::identity(phi.target.size);
    Cell::from_fn(source, target, |_, _, src, dst| {
        let mut m = SparseMatrix::zeros(dst.len(), src.len());
        if dst.len() == 1 {
            for (c, label) in src.iter().enumerate() {
                let (a, b) = (label[0], label[1]);
                if a.idx() == b.idx() && (a.row(), a.col()) == (b.row(), b.col()) {
                    m.set(0, c, RationalFunction::one());
                }
            }
        }
        m
    })
}

/// Unit `Id_X => dual(φ) ∘ φ`.
pub fn adjunction_unit(phi: &Kernel) -> Result<TwoCell> {
    Ok(unit_cell(phi, PHI, PSI)?.to_plain())
}

/// Counit `φ ∘ dual(φ) => Id_Y`.
pub fn adjunction_counit(phi: &Kernel) -> Result<TwoCell> {
    Ok(counit_cell(phi, PHI, PSI)?.to_plain())
}

/// The two triangle composites `φ => φψφ => φ` and `ψ => ψφψ => ψ`,
/// each returned as its list of components. Both must be identities.
pub fn triangle_composites(phi: &Kernel) -> Result<(TwoCell, TwoCell)> {
    let x = phi.source.size;
    let y = phi.target.size;
    let f1 = Term::atom(PHI, phi);
    let f2 = Term::atom(PHI_AGAIN, phi);
    let g1 = Term::atom_adjoint(PSI, phi);
    let g2 = Term::atom_adjoint(PSI_AGAIN, phi);

    // φ ≅ φ∘Id => φ∘(ψ∘φ') ≅ (φ∘ψ)∘φ' => Id∘φ' ≅ φ'
    let first = Cell::chain(&[
        Cell::coherence(&f1, &Term::compose(&f1, &Term::identity(x))?)?,
        Cell::hcompose(&Cell::identity(&f1), &unit_cell(phi, PHI_AGAIN, PSI)?)?,
        Cell::coherence(
            &Term::compose(&f1, &Term::compose(&g1, &f2)?)?,
            &Term::compose(&Term::compose(&f1, &g1)?, &f2)?,
        )?,
        Cell::hcompose(&counit_cell(phi, PHI, PSI)?, &Cell::identity(&f2))?,
        Cell::coherence(&Term::compose(&Term::identity(y), &f2)?, &f2)?,
    ])?;

    // ψ' ≅ Id∘ψ' => (ψ∘φ)∘ψ' ≅ ψ∘(φ∘ψ') => ψ∘Id ≅ ψ
    let second = Cell::chain(&[
        Cell::coherence(&g2, &Term::compose(&Term::identity(x), &g2)?)?,
        Cell::hcompose(&unit_cell(phi, PHI, PSI)?, &Cell::identity(&g2))?,
        Cell::coherence(
            &Term::compose(&Term::compose(&g1, &f1)?, &g2)?,
            &Term::compose(&g1, &Term::compose(&f1, &g2)?)?,
        )?,
        Cell::hcompose(&Cell::identity(&g1), &counit_cell(phi, PHI, PSI_AGAIN)?)?,
        Cell::coherence(&Term::compose(&g1, &Term::identity(y))?, &g1)?,
    ])?;
    Ok((first.to_plain(), second.to_plain()))
}

/// Whether both triangle identities hold for the adjunction of `phi`.
pub fn triangle_identities_hold(phi: &Kernel) -> Result<bool> {
    let (a, b) = triangle_composites(phi)?;
    Ok(a.maps().iter().chain(b.maps()).all(Matrix::is_identity))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_example() {
        let l = Kernel::from_rows(&[&[1, 1], &[0, 1]]).unwrap();
        let k = Kernel::from_rows(&[&[2, 0], &[1, 1]]).unwrap();
        let c = compose_kernels(&l, &k).unwrap();
        assert_eq!(c, Kernel::from_rows(&[&[3, 1], &[1, 1]]).unwrap());
    }

    #[test]
    fn compose_with_identity() {
        let k = Kernel::from_rows(&[&[2, 0, 1], &[1, 3, 0]]).unwrap();
        assert_eq!(compose_kernels(&k, &Kernel::identity(FinObj::new(3))).unwrap(), k);
        assert_eq!(compose_kernels(&Kernel::identity(FinObj::new(2)), &k).unwrap(), k);
        let bad = Kernel::identity(FinObj::new(2));
        assert!(matches!(compose_kernels(&k, &bad), Err(Error::Composition(_))));
    }

    #[test]
    fn pushforward_functorial() {
        let f = [1, 2, 2, 0];
        let g = [3, 3, 0, 1];
        let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
        let lhs = compose_kernels(&pushforward_kernel(&g).unwrap(), &pushforward_kernel(&f).unwrap()).unwrap();
        assert_eq!(lhs, pushforward_kernel(&gf).unwrap());
    }

    #[test]
    fn pushforward_out_of_range() {
        assert!(matches!(pushforward_kernel(&[0, 3]), Err(Error::Argument(_))));
    }

    #[test]
    fn pushforward_identity_is_identity_kernel() {
        assert_eq!(pushforward_kernel(&[0, 1, 2]).unwrap(), Kernel::identity(FinObj::new(3)));
    }

    #[test]
    fn dual_of_identity_and_pushforward() {
        let id = Kernel::identity(FinObj::new(4));
        assert_eq!(dual_kernel(&id), id);
        let f = [2, 0, 0];
        let d = dual_kernel(&pushforward_kernel(&f).unwrap());
        for s in 0..3 {
            for t in 0..3 {
                assert_eq!(d.dim(s, t), usize::from(t == f[s]));
            }
        }
    }

    #[test]
    fn trace_examples() {
        let id = Kernel::identity(FinObj::new(5));
        assert_eq!(trace_of_kernel(&id).unwrap().total_dim(), 5);
        let k = Kernel::from_rows(&[&[2, 1], &[3, 4]]).unwrap();
        assert_eq!(trace_of_kernel(&k).unwrap(), GradedSpace::concentrated(0, 6));
        assert_eq!(trace_of_kernel(&pushforward_kernel(&[0, 0, 0]).unwrap()).unwrap().total_dim(), 1);
        assert_eq!(trace_of_kernel(&pushforward_kernel(&[1, 0]).unwrap()).unwrap().total_dim(), 0);
        let rect = Kernel::from_rows(&[&[1, 1]]).unwrap();
        assert!(matches!(trace_of_kernel(&rect), Err(Error::Shape(_))));
    }

    #[test]
    fn triangle_identities_small() {
        let phi = Kernel::from_rows(&[&[2, 0, 1], &[1, 1, 0], &[0, 2, 2]]).unwrap();
        assert!(triangle_identities_hold(&phi).unwrap());
        let rect = Kernel::from_rows(&[&[1, 2], &[0, 1], &[3, 0]]).unwrap();
        assert!(triangle_identities_hold(&rect).unwrap());
    }

    #[test]
    fn unit_of_a_line() {
        let v = Kernel::from_rows(&[&[3]]).unwrap();
        let eta = adjunction_unit(&v).unwrap();
        // 1 ↦ Σ e_i* ⊗ e_i
        let m = eta.map(0, 0);
        assert_eq!((m.rows(), m.cols()), (9, 1));
        let ones: Vec<usize> = (0..9).filter(|&r| m.get(r, 0).is_one()).collect();
        assert_eq!(ones, vec![0, 4, 8]);
        let eps = adjunction_counit(&v).unwrap();
        assert_eq!(eps.map(0, 0).rows(), 1);
    }

    #[test]
    fn diagonal_trace_requires_endo() {
        let k = Kernel::from_rows(&[&[1, 0]]).unwrap();
        assert!(TwoCell::identity(&k).diagonal_trace().is_err());
        let e = Kernel::from_rows(&[&[2, 1], &[0, 1]]).unwrap();
        assert_eq!(TwoCell::identity(&e).diagonal_trace().unwrap(), RationalFunction::from_int(3));
    }
}
