use super::term::{AtomId, Cell, Label, Term};
use super::{compose_kernels, counit_cell, unit_cell, Kernel, TwoCell};
use crate::error::{Error, Result};
use crate::exact_algebra::Matrix;

/// `φ: X -> Y` with endo-kernels `F_X`, `F_Y` and a 2-cell
/// `T: φ ∘ F_X => F_Y ∘ φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxSquare {
    phi: Kernel,
    f_x: Kernel,
    f_y: Kernel,
    t: TwoCell,
}

impl LaxSquare {
    pub fn new(phi: Kernel, f_x: Kernel, f_y: Kernel, t: TwoCell) -> Result<Self> {
        if !f_x.is_endo() || !f_y.is_endo() {
            return Err(Error::Shape("lax square needs endo-kernels on both objects".into()));
        }
        if phi.source() != f_x.source() || phi.target() != f_y.source() {
            return Err(Error::Shape("lax square: φ does not connect the two objects".into()));
        }
        if *t.source() != compose_kernels(&phi, &f_x)? || *t.target() != compose_kernels(&f_y, &phi)? {
            return Err(Error::Shape("lax square: 2-cell is not φ∘F_X => F_Y∘φ".into()));
        }
        Ok(LaxSquare { phi, f_x, f_y, t })
    }

    /// The square with `φ` the identity kernel and `T` the identity.
    pub fn identity(f: &Kernel) -> Result<Self> {
        let phi = Kernel::identity(f.source());
        let t = TwoCell::identity(&compose_kernels(&phi, f)?);
        LaxSquare::new(phi, f.clone(), f.clone(), t)
    }

    pub fn phi(&self) -> &Kernel {
        &self.phi
    }

    pub fn f_x(&self) -> &Kernel {
        &self.f_x
    }

    pub fn f_y(&self) -> &Kernel {
        &self.f_y
    }

    pub fn t(&self) -> &TwoCell {
        &self.t
    }
}

const F_X: AtomId = 1;
const F_Y: AtomId = 2;
const PHI: AtomId = 3;
const PSI: AtomId = 4;
const PHI2: AtomId = 5;
const F_Z: AtomId = 6;

fn tensor_id(cell: &Cell, n: usize) -> Cell {
    Cell::tensor(cell, &Cell::identity(&Term::identity(n)))
}

/// The induced map `Tr(F_X) -> Tr(F_Y)`, shape `dim Tr(F_Y) × dim Tr(F_X)`,
/// with both traces in the basis `⊕_x F[x,x]` ordered by `x`, then index.
///
/// The trace of `F` is the composite `ev ∘ (F ⊗ Id) ∘ coev`; the map is the
/// paste of three squares over `P = φ ⊗ ψ^∨` (`ψ` the right adjoint):
/// the unit square `ev_X => ev_Y ∘ P`, the middle square
/// `P ∘ (F_X ⊗ Id) => (F_Y ⊗ Id) ∘ P` built from `T ⊗ id`, and the counit
/// square `P ∘ coev_X => coev_Y`.
pub fn trace_of_lax_square(sq: &LaxSquare) -> Result<Matrix> {
    let n = sq.phi.source().size;
    let m = sq.phi.target().size;
    let phi = Term::atom(PHI, &sq.phi);
    let psi = Term::atom_adjoint(PSI, &sq.phi);
    let psi_dual = Term::atom(PSI, &sq.phi);
    let p = Term::tensor(&phi, &psi_dual);

    let a = Term::coev(n);
    let b = Term::tensor(&Term::atom(F_X, &sq.f_x), &Term::identity(n));
    let c = Term::ev(n);
    let a2 = Term::coev(m);
    let b2 = Term::tensor(&Term::atom(F_Y, &sq.f_y), &Term::identity(m));
    let c2 = Term::ev(m);

    let id_n = Term::identity(n);
    let id_m = Term::identity(m);

    // ev_X ≅ ev_X ∘ (Id ⊗ Id) => ev_X ∘ (ψφ ⊗ Id) ≅ ev_Y ∘ P
    let eta = unit_cell(&sq.phi, PHI, PSI)?;
    let right = Cell::chain(&[
        Cell::coherence(&c, &Term::compose(&c, &Term::tensor(&id_n, &id_n))?)?,
        Cell::hcompose(&Cell::identity(&c), &tensor_id(&eta, n))?,
        Cell::coherence(
            &Term::compose(&c, &Term::tensor(&Term::compose(&psi, &phi)?, &id_n))?,
            &Term::compose(&c2, &p)?,
        )?,
    ])?;

    // P ∘ (F_X ⊗ Id) ≅ (φ F_X) ⊗ ψ^∨ => (F_Y φ) ⊗ ψ^∨ ≅ (F_Y ⊗ Id) ∘ P
    let t_src = Term::compose(&phi, &Term::atom(F_X, &sq.f_x))?;
    let t_tgt = Term::compose(&Term::atom(F_Y, &sq.f_y), &phi)?;
    let t = Cell::from_plain(&sq.t, t_src.clone(), t_tgt.clone())?;
    let middle = Cell::chain(&[
        Cell::coherence(&Term::compose(&p, &b)?, &Term::tensor(&t_src, &psi_dual))?,
        Cell::tensor(&t, &Cell::identity(&psi_dual)),
        Cell::coherence(&Term::tensor(&t_tgt, &psi_dual), &Term::compose(&b2, &p)?)?,
    ])?;

    // P ∘ coev_X ≅ (φψ ⊗ Id) ∘ coev_Y => (Id ⊗ Id) ∘ coev_Y ≅ coev_Y
    let eps = counit_cell(&sq.phi, PHI, PSI)?;
    let phi_psi = Term::compose(&phi, &psi)?;
    let left = Cell::chain(&[
        Cell::coherence(&Term::compose(&p, &a)?, &Term::compose(&Term::tensor(&phi_psi, &id_m), &a2)?)?,
        Cell::hcompose(&tensor_id(&eps, m), &Cell::identity(&a2))?,
        Cell::coherence(&Term::compose(&Term::tensor(&id_m, &id_m), &a2)?, &a2)?,
    ])?;

    let ba = Term::compose(&b, &a)?;
    let pasted = Cell::chain(&[
        Cell::hcompose(&right, &Cell::identity(&ba))?,
        Cell::coherence(
            &Term::compose(&Term::compose(&c2, &p)?, &ba)?,
            &Term::compose(&c2, &Term::compose(&Term::compose(&p, &b)?, &a)?)?,
        )?,
        Cell::hcompose(&Cell::identity(&c2), &Cell::hcompose(&middle, &Cell::identity(&a))?)?,
        Cell::coherence(
            &Term::compose(&c2, &Term::compose(&Term::compose(&b2, &p)?, &a)?)?,
            &Term::compose(&c2, &Term::compose(&b2, &Term::compose(&p, &a)?)?)?,
        )?,
        Cell::hcompose(&Cell::identity(&c2), &Cell::hcompose(&Cell::identity(&b2), &left)?)?,
    ])?;

    let src = reorder(pasted.source.entry(0, 0));
    let dst = reorder(pasted.target.entry(0, 0));
    let raw = pasted.map(0, 0);
    let mut out = Matrix::zeros(dst.len(), src.len());
    for (i, &r) in dst.iter().enumerate() {
        for (j, &c) in src.iter().enumerate() {
            if let Some(v) = raw.get(r, c) {
                out.set(i, j, v.clone());
            }
        }
    }
    Ok(out)
}

/// Positions of `labels` listed in sorted label order, i.e. by point, then
/// basis index.
fn reorder(labels: &[Label]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&i, &j| labels[i].cmp(&labels[j]));
    order
}

/// Pastes `sq1: (φ1, F_X, F_Y)` and `sq2: (φ2, F_Y, F_Z)` into the square
/// over `φ2 ∘ φ1`.
pub fn compose_lax_squares(sq1: &LaxSquare, sq2: &LaxSquare) -> Result<LaxSquare> {
    if sq1.f_y != sq2.f_x {
        return Err(Error::Composition("lax squares do not share the middle endo-kernel".into()));
    }
    let f_x = Term::atom(F_X, &sq1.f_x);
    let f_y = Term::atom(F_Y, &sq1.f_y);
    let f_z = Term::atom(F_Z, &sq2.f_y);
    let phi1 = Term::atom(PHI, &sq1.phi);
    let phi2 = Term::atom(PHI2, &sq2.phi);
    let t1 = Cell::from_plain(&sq1.t, Term::compose(&phi1, &f_x)?, Term::compose(&f_y, &phi1)?)?;
    let t2 = Cell::from_plain(&sq2.t, Term::compose(&phi2, &f_y)?, Term::compose(&f_z, &phi2)?)?;
    let phi21 = Term::compose(&phi2, &phi1)?;
    let pasted = Cell::chain(&[
        Cell::coherence(&Term::compose(&phi21, &f_x)?, &Term::compose(&phi2, &t1.source)?)?,
        Cell::hcompose(&Cell::identity(&phi2), &t1)?,
        Cell::coherence(&Term::compose(&phi2, &t1.target)?, &Term::compose(&t2.source, &phi1)?)?,
        Cell::hcompose(&t2, &Cell::identity(&phi1))?,
        Cell::coherence(&Term::compose(&t2.target, &phi1)?, &Term::compose(&f_z, &phi21)?)?,
    ])?;
    LaxSquare::new(phi21.to_kernel(), sq1.f_x.clone(), sq2.f_y.clone(), pasted.to_plain())
}
