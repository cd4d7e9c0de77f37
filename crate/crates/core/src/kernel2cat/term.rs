//! Kernels with labeled bases.
//!
//! Every basis vector of a composite kernel is labeled by the basis vectors
//! of the named atoms it was built from: `(atom, row, col, index)` for each
//! atom occurrence, with structural kernels (identities, coevaluation,
//! evaluation, symmetry) contributing nothing. Two composites that differ
//! only by associativity, unit laws, the interchange of `∘` and `⊗`, or by
//! writing an adjoint as the dual of its transpose carry the same label
//! sets, so the canonical isomorphism between them is the permutation that
//! matches labels ([`Cell::coherence`]).
//!
//! Basis order conventions, used everywhere in the crate:
//! * object `X ⊗ Y` indexes `(x, y)` as `x * |Y| + y`;
//! * entry `(u, s)` of `L ∘ K` lists, for each middle index `t` ascending,
//!   the pairs `(l, k)` of `L[u,t] ⊗ K[t,s]` with `l` major;
//! * entry `((y, y'), (x, x'))` of `A ⊗ B` lists pairs `(a, b)`, `a` major.

use std::collections::HashMap;

use super::sparse::SparseMatrix;
use super::{Kernel, TwoCell};
use crate::error::{Error, Result};
use crate::exact_algebra::RationalFunction;

pub(crate) type AtomId = u16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Coord {
    atom: AtomId,
    row: u32,
    col: u32,
    idx: u32,
}

impl Coord {
    pub(crate) fn row(&self) -> usize {
        self.row as usize
    }
    pub(crate) fn col(&self) -> usize {
        self.col as usize
    }
    pub(crate) fn idx(&self) -> usize {
        self.idx as usize
    }
}

/// Sorted by atom id.
pub(crate) type Label = Vec<Coord>;

fn merge(a: &Label, b: &Label) -> Label {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    debug_assert!(out.windows(2).all(|w| w[0].atom != w[1].atom), "atom used twice in one composite");
    out
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    source: usize,
    target: usize,
    entries: Vec<Vec<Label>>,
}

impl Term {
    pub(crate) fn entry(&self, t: usize, s: usize) -> &[Label] {
        &self.entries[t * self.source + s]
    }

    pub(crate) fn to_kernel(&self) -> Kernel {
        Kernel::from_dims(self.source, self.target, self.entries.iter().map(Vec::len).collect())
            .expect("term dims are consistent")
    }

    fn from_fn(source: usize, target: usize, mut f: impl FnMut(usize, usize) -> Vec<Label>) -> Term {
        let mut entries = Vec::with_capacity(source * target);
        for t in 0..target {
            for s in 0..source {
                entries.push(f(t, s));
            }
        }
        Term { source, target, entries }
    }

    /// A named kernel; basis vector `i` of entry `(t, s)` is `(id, t, s, i)`.
    pub(crate) fn atom(id: AtomId, k: &Kernel) -> Term {
        Term::from_fn(k.source().size, k.target().size, |t, s| {
            (0..k.dim(t, s)).map(|i| vec![Coord { atom: id, row: t as u32, col: s as u32, idx: i as u32 }]).collect()
        })
    }

    /// The right adjoint of `k` (source and target swapped, entries dual).
    /// Labels use the coordinates of `k`, so the adjoint and the dual of its
    /// transpose are identified.
    pub(crate) fn atom_adjoint(id: AtomId, k: &Kernel) -> Term {
        Term::from_fn(k.target().size, k.source().size, |x, y| {
            (0..k.dim(y, x)).map(|i| vec![Coord { atom: id, row: y as u32, col: x as u32, idx: i as u32 }]).collect()
        })
    }

    /// An unlabeled kernel whose entries are 0- or 1-dimensional.
    fn structural(source: usize, target: usize, present: impl Fn(usize, usize) -> bool) -> Term {
        Term::from_fn(source, target, |t, s| if present(t, s) { vec![Vec::new()] } else { Vec::new() })
    }

    /// An unlabeled copy of an arbitrary kernel.
    pub(crate) fn anonymous(k: &Kernel) -> Term {
        Term::from_fn(k.source().size, k.target().size, |t, s| vec![Vec::new(); k.dim(t, s)])
    }

    pub(crate) fn identity(n: usize) -> Term {
        Term::structural(n, n, |t, s| t == s)
    }

    /// `I -> X ⊗ X`.
    pub(crate) fn coev(n: usize) -> Term {
        Term::structural(1, n * n, move |t, _| t / n == t % n)
    }

    /// `X ⊗ X -> I`.
    pub(crate) fn ev(n: usize) -> Term {
        Term::structural(n * n, 1, move |_, s| s / n == s % n)
    }

    /// `X ⊗ Y -> Y ⊗ X`.
    pub(crate) fn twist(n: usize, m: usize) -> Term {
        Term::structural(n * m, n * m, move |t, s| {
            let (x, y) = (s / m, s % m);
            t == y * n + x
        })
    }

    /// `l ∘ k`.
    pub(crate) fn compose(l: &Term, k: &Term) -> Result<Term> {
        if k.target != l.source {
            return Err(Error::Composition(format!(
                "kernel with target of size {} followed by one with source of size {}",
                k.target, l.source
            )));
        }
        Ok(Term::from_fn(k.source, l.target, |u, s| {
            let mut out = Vec::new();
            for t in 0..k.target {
                for a in l.entry(u, t) {
                    for b in k.entry(t, s) {
                        out.push(merge(a, b));
                    }
                }
            }
            out
        }))
    }

    pub(crate) fn tensor(a: &Term, b: &Term) -> Term {
        Term::from_fn(a.source * b.source, a.target * b.target, |t, s| {
            let (t1, t2) = (t / b.target, t % b.target);
            let (s1, s2) = (s / b.source, s % b.source);
            let mut out = Vec::new();
            for x in a.entry(t1, s1) {
                for y in b.entry(t2, s2) {
                    out.push(merge(x, y));
                }
            }
            out
        })
    }
}

/// A 2-morphism between labeled kernels: one matrix per entry, of shape
/// `target dim × source dim`.
#[derive(Clone, Debug)]
pub(crate) struct Cell {
    pub(crate) source: Term,
    pub(crate) target: Term,
    pub(crate) maps: Vec<SparseMatrix>,
}

impl Cell {
    pub(crate) fn new(source: Term, target: Term, maps: Vec<SparseMatrix>) -> Result<Cell> {
        if (source.source, source.target) != (target.source, target.target) {
            return Err(Error::Shape("2-cell between kernels with different boundaries".into()));
        }
        if maps.len() != source.entries.len() {
            return Err(Error::Shape("wrong number of 2-cell components".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            let want = (target.entries[i].len(), source.entries[i].len());
            if (m.rows(), m.cols()) != want {
                return Err(Error::Shape(format!(
                    "2-cell component {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(Cell { source, target, maps })
    }

    pub(crate) fn from_fn(
        source: Term,
        target: Term,
        mut f: impl FnMut(usize, usize, &[Label], &[Label]) -> SparseMatrix,
    ) -> Result<Cell> {
        let mut maps = Vec::with_capacity(source.entries.len());
        for t in 0..source.target {
            for s in 0..source.source {
                maps.push(f(t, s, source.entry(t, s), target.entry(t, s)));
            }
        }
        Cell::new(source, target, maps)
    }

    pub(crate) fn identity(k: &Term) -> Cell {
        let maps = k.entries.iter().map(|e| SparseMatrix::identity(e.len())).collect();
        Cell { source: k.clone(), target: k.clone(), maps }
    }

    /// Attaches labels to a plain 2-cell whose kernels have the given
    /// labeled forms.
    pub(crate) fn from_plain(cell: &TwoCell, source: Term, target: Term) -> Result<Cell> {
        if source.to_kernel() != *cell.source() || target.to_kernel() != *cell.target() {
            return Err(Error::Shape("2-cell does not match the expected kernels".into()));
        }
        Cell::new(source, target, cell.maps().iter().map(SparseMatrix::from_dense).collect())
    }

    pub(crate) fn to_plain(&self) -> TwoCell {
        TwoCell::new(
            self.source.to_kernel(),
            self.target.to_kernel(),
            self.maps.iter().map(SparseMatrix::to_dense).collect(),
        )
        .expect("labeled cell is well-formed")
    }

    pub(crate) fn map(&self, t: usize, s: usize) -> &SparseMatrix {
        &self.maps[t * self.source.source + s]
    }

    /// `second · first`.
    pub(crate) fn vcompose(second: &Cell, first: &Cell) -> Result<Cell> {
        let same = first.target.entries.iter().zip(&second.source.entries).all(|(a, b)| a.len() == b.len());
        if !same || first.target.entries.len() != second.source.entries.len() {
            return Err(Error::Composition("vertical composition of incompatible 2-cells".into()));
        }
        let maps = second.maps.iter().zip(&first.maps).map(|(b, a)| b.mul(a)).collect::<Result<Vec<_>>>()?;
        Ok(Cell { source: first.source.clone(), target: second.target.clone(), maps })
    }

    /// Vertical composite of a chain given in application order.
    pub(crate) fn chain(cells: &[Cell]) -> Result<Cell> {
        let (first, rest) = cells.split_first().ok_or_else(|| Error::Composition("empty chain".into()))?;
        rest.iter().try_fold(first.clone(), |acc, c| Cell::vcompose(c, &acc))
    }

    /// `beta ∘ alpha` (horizontal).
    pub(crate) fn hcompose(beta: &Cell, alpha: &Cell) -> Result<Cell> {
        let source = Term::compose(&beta.source, &alpha.source)?;
        let target = Term::compose(&beta.target, &alpha.target)?;
        let mid = alpha.source.target;
        let mut maps = Vec::with_capacity(source.entries.len());
        for u in 0..beta.source.target {
            for s in 0..alpha.source.source {
                let blocks: Vec<SparseMatrix> = (0..mid).map(|t| beta.map(u, t).kron(alpha.map(t, s))).collect();
                maps.push(SparseMatrix::direct_sum(&blocks));
            }
        }
        Cell::new(source, target, maps)
    }

    pub(crate) fn tensor(a: &Cell, b: &Cell) -> Cell {
        let source = Term::tensor(&a.source, &b.source);
        let target = Term::tensor(&a.target, &b.target);
        let bt = b.source.target;
        let bs = b.source.source;
        let mut maps = Vec::with_capacity(source.entries.len());
        for t in 0..source.target {
            for s in 0..source.source {
                maps.push(a.map(t / bt, s / bs).kron(b.map(t % bt, s % bs)));
            }
        }
        Cell { source, target, maps }
    }

    /// The canonical isomorphism `from => to`, found by matching labels.
    pub(crate) fn coherence(from: &Term, to: &Term) -> Result<Cell> {
        if (from.source, from.target) != (to.source, to.target) {
            return Err(Error::Composition("coherence between kernels with different boundaries".into()));
        }
        let mut maps = Vec::with_capacity(from.entries.len());
        for (i, (src, dst)) in from.entries.iter().zip(&to.entries).enumerate() {
            if src.len() != dst.len() {
                return Err(Error::Invariant(format!(
                    "coherence: entry {i} has dimension {} vs {}",
                    src.len(),
                    dst.len()
                )));
            }
            let pos: HashMap<&Label, usize> = dst.iter().enumerate().map(|(j, l)| (l, j)).collect();
            if pos.len() != dst.len() {
                return Err(Error::Invariant(format!("coherence: ambiguous labels in entry {i}")));
            }
            let mut m = SparseMatrix::zeros(dst.len(), src.len());
            for (j, l) in src.iter().enumerate() {
                let Some(&r) = pos.get(l) else {
                    return Err(Error::Invariant(format!("coherence: unmatched basis vector in entry {i}")));
                };
                m.set(r, j, RationalFunction::one());
            }
            maps.push(m);
        }
        Ok(Cell { source: from.clone(), target: to.clone(), maps })
    }
}
