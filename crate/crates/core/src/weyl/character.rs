use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::{weyl_group, RootSystem, WeightPolynomial};
use crate::error::{Error, Result};
use crate::exact_algebra::RationalFunction;

fn div(rs: &RootSystem, n: &WeightPolynomial, d: &WeightPolynomial, what: &str) -> Result<WeightPolynomial> {
    n.div_exact(d, |w| rs.height(w))
        .ok_or_else(|| Error::Invariant(format!("{}: {what} is not exactly divisible", rs.label())))
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `Σ_w ε(w) e^{wρ}`.
pub fn weyl_denominator(rs: &RootSystem) -> WeightPolynomial {
    WeightPolynomial::from_terms(weyl_group(rs).iter().map(|w| (w.apply(rs.rho()), w.sign())))
}

/// `e^ρ Π_{α>0} (1 - e^{-α})`.
pub fn denominator_product(rs: &RootSystem) -> WeightPolynomial {
    let r = rs.rank();
    let mut p = WeightPolynomial::monomial(rs.rho().to_vec(), 1);
    for a in rs.positive_root_weights() {
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        let factor = &WeightPolynomial::one(r) - &WeightPolynomial::monomial(neg, 1);
        p = &p * &factor;
    }
    p
}

/// The character of the irreducible representation with highest weight
/// `lam`, as the exact quotient of the alternating sums over `W` of
/// `e^{w(λ+ρ)}` and `e^{wρ}`.
pub fn weyl_character(rs: &RootSystem, lam: &[i64]) -> Result<WeightPolynomial> {
    rs.check_dominant(lam)?;
    let group = weyl_group(rs);
    let shifted = add(lam, rs.rho());
    let num = WeightPolynomial::from_terms(group.iter().map(|w| (w.apply(&shifted), w.sign())));
    let den = weyl_denominator(rs);
    if den != denominator_product(rs) {
        return Err(Error::Invariant(format!("{}: denominator identity fails", rs.label())));
    }
    div(rs, &num, &den, "Weyl numerator")
}

/// Weight multiplicities by the Freudenthal recursion, over the whole
/// weight diagram.
pub fn freudenthal_multiplicities(rs: &RootSystem, lam: &[i64]) -> Result<BTreeMap<Vec<i64>, i64>> {
    rs.check_dominant(lam)?;
    let r = rs.rank();
    let roots = rs.positive_roots();
    let root_weights = rs.positive_root_weights();
    let lam_rho = add(lam, rs.rho());
    let norm_top = rs.inner(&lam_rho, &lam_rho);

    let depth_of = |w: &[i64]| -> Option<i64> {
        let c = rs.weight_to_root(&w.iter().zip(lam).map(|(a, b)| b - a).collect::<Vec<_>>());
        if c.iter().all(|x| x.is_integer() && *x >= Rational64::zero()) {
            Some(c.iter().map(|x| x.to_integer()).sum())
        } else {
            None
        }
    };
    let lowest: Vec<i64> = weyl_group(rs).iter().map(|w| w.apply(lam)).min_by_key(|w| rs.height(w)).expect("nonempty");
    let max_depth = depth_of(&lowest).expect("lowest weight lies below λ");

    let mut dominant: BTreeMap<Vec<i64>, i64> = BTreeMap::from([(lam.to_vec(), 1)]);
    let lookup = |dominant: &BTreeMap<Vec<i64>, i64>, w: &[i64]| -> i64 {
        let d = rs.dominant_conjugate(w);
        dominant.get(&d).copied().unwrap_or(0)
    };

    for depth in 1..=max_depth {
        for c in compositions(depth as u32, r) {
            let mu: Vec<i64> =
                (0..r).map(|j| lam[j] - (0..r).map(|i| i64::from(c[i]) * rs.cartan()[i][j]).sum::<i64>()).collect();
            if !rs.is_dominant(&mu) {
                continue;
            }
            let mu_rho = add(&mu, rs.rho());
            let gap = norm_top - rs.inner(&mu_rho, &mu_rho);
            if gap <= Rational64::zero() {
                return Err(Error::Invariant(format!("Freudenthal: non-positive norm gap at {mu:?}")));
            }
            let mut acc = Rational64::zero();
            for (beta, a) in roots.iter().zip(&root_weights) {
                let ht: i64 = beta.iter().sum();
                let mut nu = mu.clone();
                for _ in 1..=depth / ht {
                    nu = add(&nu, a);
                    let m = lookup(&dominant, &nu);
                    if m != 0 {
                        acc += rs.inner(&nu, a) * m;
                    }
                }
            }
            let mult = acc * Rational64::from_integer(2) / gap;
            if !mult.is_integer() {
                return Err(Error::Invariant(format!("Freudenthal: multiplicity {mult} at {mu:?}")));
            }
            if !mult.is_zero() {
                dominant.insert(mu, mult.to_integer());
            }
        }
    }

    let group = weyl_group(rs);
    let mut out = BTreeMap::new();
    for (mu, &m) in &dominant {
        for w in &group {
            out.insert(w.apply(mu), m);
        }
    }
    Ok(out)
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `Σ_w e^{wλ} / Π_{α>0} (1 - e^{-wα})`, one term per torus-fixed point
/// `wB` of the flag variety, brought over the common denominator
/// `D = Π_{α>0} (1 - e^{-α})`: each `Π_α (1 - e^{-wα})` equals `u_w D` for
/// a signed monomial `u_w`, and the result is `(Σ_w e^{wλ} u_w^{-1}) / D`.
pub fn fixed_point_character_sum(rs: &RootSystem, lam: &[i64]) -> Result<WeightPolynomial> {
    rs.check_dominant(lam)?;
    let r = rs.rank();
    let roots = rs.positive_root_weights();
    let local_den = |f: &dyn Fn(&[i64]) -> Vec<i64>| {
        roots.iter().fold(WeightPolynomial::one(r), |acc, a| {
            let neg: Vec<i64> = f(a).iter().map(|x| -x).collect();
            &acc * &(&WeightPolynomial::one(r) - &WeightPolynomial::monomial(neg, 1))
        })
    };
    let base = local_den(&|a| a.to_vec());
    let mut cleared = WeightPolynomial::zero();
    for w in weyl_group(rs) {
        let den_w = local_den(&|a| w.apply(a));
        let u = div(rs, &den_w, &base, "fixed-point denominator")?;
        let (uw, uc) = match u.terms().iter().next() {
            Some((uw, &uc)) if u.len() == 1 && uc.abs() == 1 => (uw.clone(), uc),
            _ => return Err(Error::Invariant(format!("fixed-point denominator ratio {u} is not a unit"))),
        };
        let exp: Vec<i64> = w.apply(lam).iter().zip(&uw).map(|(a, b)| a - b).collect();
        cleared = &cleared + &WeightPolynomial::monomial(exp, uc);
    }
    div(rs, &cleared, &base, "cleared fixed-point sum")
}

/// `Π_{α>0} ⟨λ+ρ, α^∨⟩ / ⟨ρ, α^∨⟩`.
pub fn weyl_dimension(rs: &RootSystem, lam: &[i64]) -> Result<u64> {
    rs.check_dominant(lam)?;
    let lam_rho = add(lam, rs.rho());
    let mut v = Rational64::one();
    for beta in rs.positive_roots() {
        v = v * rs.coroot_pairing(&lam_rho, beta) / rs.coroot_pairing(rs.rho(), beta);
    }
    if !v.is_integer() {
        return Err(Error::Invariant(format!("dimension formula gives {v}")));
    }
    u64::try_from(v.to_integer()).map_err(|_| Error::Invariant(format!("dimension formula gives {v}")))
}

/// Rank-one specialization `e^{kω} ↦ q^{(k - k_min)/2}`: the substitution
/// `e^{2ω} ↦ q` after the monomial twist `e^{-k_min ω}`, which puts the
/// lowest weight at `q^0`. Returns the rational function and `k_min`.
pub fn a1_to_q(p: &WeightPolynomial, var: &str) -> Result<(RationalFunction, i64)> {
    if p.terms().keys().any(|w| w.len() != 1) {
        return Err(Error::Argument("rank-one specialization of a higher-rank weight polynomial".into()));
    }
    let Some(kmin) = p.terms().keys().map(|w| w[0]).min() else {
        return Ok((RationalFunction::zero(), 0));
    };
    let q = RationalFunction::var(var);
    let mut out = RationalFunction::zero();
    for (w, &c) in p.terms() {
        let shift = w[0] - kmin;
        if shift % 2 != 0 {
            return Err(Error::Argument("weights of mixed parity have no q-specialization".into()));
        }
        out = &out + &(&RationalFunction::from_int(c) * &q.pow(shift / 2)?);
    }
    Ok((out, kmin))
}
