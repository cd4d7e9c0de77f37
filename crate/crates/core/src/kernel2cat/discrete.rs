//! Vector bundles on a finite set with a lift of a self-map, and their
//! Chern characters and Lefschetz numbers.
//!
//! A bundle is a list of fiber dimensions `E_s`. The lift is a family
//! `b_s: E_{f(s)} -> E_s` (the map `f^*E -> E`), so `b_s` has shape
//! `dim E_s × dim E_{f(s)}`; at a fixed point it is an endomorphism of the
//! fiber.

use super::{compose_kernels, pushforward_kernel, trace_of_lax_square, Kernel, LaxSquare, TwoCell};
use crate::error::{Error, Result};
use crate::exact_algebra::{Matrix, RationalFunction};

fn check(dims: &[usize], maps: &[Matrix], f: &[usize]) -> Result<()> {
    if dims.len() != f.len() || maps.len() != f.len() {
        return Err(Error::Argument(format!(
            "{} fibers, {} maps and a map on {} points",
            dims.len(),
            maps.len(),
            f.len()
        )));
    }
    for (s, (&t, b)) in f.iter().zip(maps).enumerate() {
        if t >= f.len() {
            return Err(Error::Argument(format!("map sends {s} to {t}, outside 0..{}", f.len())));
        }
        if (b.rows(), b.cols()) != (dims[s], dims[t]) {
            return Err(Error::Argument(format!(
                "lift at {s} is {}x{}, expected {}x{}",
                b.rows(),
                b.cols(),
                dims[s],
                dims[t]
            )));
        }
    }
    Ok(())
}

fn fixed_points(f: &[usize]) -> impl Iterator<Item = usize> + '_ {
    f.iter().enumerate().filter(|(s, &t)| *s == t).map(|(s, _)| s)
}

/// The square `(E: I -> S, Id_I, f_*)` whose 2-cell at `t` stacks the
/// lifts `b_s` over `f(s) = t`, ascending `s`.
pub fn chern_square(dims: &[usize], maps: &[Matrix], f: &[usize]) -> Result<LaxSquare> {
    check(dims, maps, f)?;
    let n = f.len();
    let phi = Kernel::from_dims(1, n, dims.to_vec())?;
    let f_x = Kernel::identity(phi.source());
    let f_y = pushforward_kernel(f)?;
    let comps = (0..n)
        .map(|t| {
            let blocks: Vec<&Matrix> = (0..n).filter(|&s| f[s] == t).map(|s| &maps[s]).collect();
            let rows: usize = blocks.iter().map(|b| b.rows()).sum();
            let mut m = Matrix::zeros(rows, dims[t]);
            let mut r0 = 0;
            for b in blocks {
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m.set(r0 + r, c, b.get(r, c).clone());
                    }
                }
                r0 += b.rows();
            }
            m
        })
        .collect();
    let t = TwoCell::new(compose_kernels(&phi, &f_x)?, compose_kernels(&f_y, &phi)?, comps)?;
    LaxSquare::new(phi, f_x, f_y, t)
}

/// Chern character of `(E, b)`, one entry per fixed point of `f` in
/// ascending order, computed as the trace of [`chern_square`].
pub fn chern_character(dims: &[usize], maps: &[Matrix], f: &[usize]) -> Result<Vec<RationalFunction>> {
    let tr = trace_of_lax_square(&chern_square(dims, maps, f)?)?;
    debug_assert_eq!(tr.cols(), 1);
    Ok((0..tr.rows()).map(|r| tr.get(r, 0).clone()).collect())
}

/// `tr(b_s)` at each fixed point `s`.
pub fn chern_direct(dims: &[usize], maps: &[Matrix], f: &[usize]) -> Result<Vec<RationalFunction>> {
    check(dims, maps, f)?;
    fixed_points(f).map(|s| maps[s].trace()).collect()
}

/// The square `(Γ: S -> I, f_*, Id_I)` with identity 2-cell.
pub fn global_sections_square(f: &[usize]) -> Result<LaxSquare> {
    let n = f.len();
    let phi = Kernel::from_dims(n, 1, vec![1; n])?;
    let f_x = pushforward_kernel(f)?;
    let f_y = Kernel::identity(phi.target());
    let t = TwoCell::identity(&compose_kernels(&phi, &f_x)?);
    LaxSquare::new(phi, f_x, f_y, t)
}

/// The map `Tr(f_*) -> Tr(Id_I)` of [`global_sections_square`], a row
/// vector indexed by fixed points.
pub fn integrate(f: &[usize]) -> Result<Matrix> {
    trace_of_lax_square(&global_sections_square(f)?)
}

/// Trace of the pullback `σ ↦ (b_s σ_{f(s)})_s` on `⊕_s E_s`.
pub fn lefschetz_discrete(dims: &[usize], maps: &[Matrix], f: &[usize]) -> Result<RationalFunction> {
    check(dims, maps, f)?;
    let mut off = vec![0];
    for &d in dims {
        off.push(off.last().unwrap() + d);
    }
    let total = off[dims.len()];
    let mut m = Matrix::zeros(total, total);
    for (s, b) in maps.iter().enumerate() {
        let t = f[s];
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                m.set(off[s] + r, off[t] + c, b.get(r, c).clone());
            }
        }
    }
    m.trace()
}
