//! Seeded instance generators. The same seed always yields the same
//! instance.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_algebra::{Matrix, Rational, RationalFunction};
use crate::kernel2cat::{compose_kernels, Kernel, LaxSquare, TwoCell};
use crate::projective::{BundleSpec, ProjScenario};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let p = rng.random_range(-max_num..=max_num);
    let q = rng.random_range(1..=max_den);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    loop {
        let r = rational(rng, max_num, max_den);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

/// Entries `p/q` with `|p| ≤ 5`, `q ≤ 4`.
pub fn rational_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| RationalFunction::from_rational(rational(rng, 5, 4))).collect();
    Matrix::from_vec(rows, cols, data).expect("sized")
}

fn small_int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| RationalFunction::from_int(rng.random_range(-3..=3))).collect();
    Matrix::from_vec(rows, cols, data).expect("sized")
}

pub fn kernel<R: Rng>(rng: &mut R, source: usize, target: usize, max_dim: usize) -> Kernel {
    let dims = (0..source * target).map(|_| rng.random_range(0..=max_dim)).collect();
    Kernel::from_dims(source, target, dims).expect("sized")
}

/// A 2-cell with small integer entries.
pub fn two_cell<R: Rng>(rng: &mut R, source: &Kernel, target: &Kernel) -> TwoCell {
    let (n, m) = (source.source().size, source.target().size);
    let mut maps = Vec::with_capacity(n * m);
    for t in 0..m {
        for s in 0..n {
            maps.push(small_int_matrix(rng, target.dim(t, s), source.dim(t, s)));
        }
    }
    TwoCell::new(source.clone(), target.clone(), maps).expect("shapes match")
}

fn square_over<R: Rng>(rng: &mut R, phi: Kernel, f_x: Kernel, f_y: Kernel) -> LaxSquare {
    let src = compose_kernels(&phi, &f_x).expect("composable");
    let tgt = compose_kernels(&f_y, &phi).expect("composable");
    let t = two_cell(rng, &src, &tgt);
    LaxSquare::new(phi, f_x, f_y, t).expect("well-formed")
}

/// Object sizes in `1..=max_size`, entry dimensions in `0..=max_dim`.
pub fn lax_square<R: Rng>(rng: &mut R, max_size: usize, max_dim: usize) -> LaxSquare {
    let n = rng.random_range(1..=max_size);
    let m = rng.random_range(1..=max_size);
    let phi = kernel(rng, n, m, max_dim);
    let f_x = kernel(rng, n, n, max_dim);
    let f_y = kernel(rng, m, m, max_dim);
    square_over(rng, phi, f_x, f_y)
}

/// Two squares sharing the middle endo-kernel.
pub fn composable_squares<R: Rng>(rng: &mut R, max_size: usize, max_dim: usize) -> (LaxSquare, LaxSquare) {
    let sq1 = lax_square(rng, max_size, max_dim);
    let m = sq1.phi().target().size;
    let k = rng.random_range(1..=max_size);
    let phi2 = kernel(rng, m, k, max_dim);
    let f_z = kernel(rng, k, k, max_dim);
    let sq2 = square_over(rng, phi2, sq1.f_y().clone(), f_z);
    (sq1, sq2)
}

/// `K: S -> T` and `L: T -> S`.
pub fn composable_kernels<R: Rng>(rng: &mut R, max_size: usize, max_dim: usize) -> (Kernel, Kernel) {
    let s = rng.random_range(1..=max_size);
    let t = rng.random_range(1..=max_size);
    (kernel(rng, s, t, max_dim), kernel(rng, t, s, max_dim))
}

/// A bundle on a finite set with a self-map and a lift `b_s: E_{f(s)} -> E_s`.
#[derive(Clone, Debug)]
pub struct ChernInstance {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
    pub map: Vec<usize>,
}

pub fn chern_instance<R: Rng>(rng: &mut R, max_points: usize, max_dim: usize) -> ChernInstance {
    let n = rng.random_range(1..=max_points);
    let map: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
    let dims: Vec<usize> = (0..n).map(|_| rng.random_range(0..=max_dim)).collect();
    let maps = (0..n).map(|s| small_int_matrix(rng, dims[s], dims[map[s]])).collect();
    ChernInstance { dims, maps, map }
}

/// `n + 1` distinct nonzero rationals.
pub fn distinct_eigenvalues<R: Rng>(rng: &mut R, n: usize) -> Vec<RationalFunction> {
    let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
    while out.len() < n + 1 {
        let r = nonzero_rational(rng, 9, 5);
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out.into_iter().map(RationalFunction::from_rational).collect()
}

/// `ℙⁿ` with `1 ≤ n ≤ max_n`, distinct rational eigenvalues, and a bundle of
/// up to three summands with twists in `[-8, 8]` and nonzero rational
/// scalars.
pub fn proj_scenario<R: Rng>(rng: &mut R, max_n: usize) -> (ProjScenario, BundleSpec) {
    let n = rng.random_range(1..=max_n);
    let sc = ProjScenario::new(distinct_eigenvalues(rng, n)).expect("nonzero eigenvalues");
    let k = rng.random_range(1..=3);
    let summands = (0..k)
        .map(|_| (rng.random_range(-8..=8), RationalFunction::from_rational(nonzero_rational(rng, 7, 4))))
        .collect();
    (sc, BundleSpec::new(summands).expect("nonzero scalars"))
}
